/*
 * Copyright 2026 The Aruba Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aruba/aruba.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 data error, 2 usage error.
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct InputArgs {
  std::vector<std::string> paths;
  std::string format = "coco";
};

struct PipelineArgs {
  aruba::WeightConfig config;
  int jobs = 1;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  cmd->add_option("paths", in.paths, "annotation files or directories")
      ->required();
  cmd->add_option("--format", in.format,
                  "input format: coco, dota, visdrone or canonical")
      ->capture_default_str();
}

void add_pipeline_options(CLI::App* cmd, PipelineArgs& args) {
  cmd->add_option("--bins", args.config.bin_count,
                  "histogram bins per class")
      ->capture_default_str();
  cmd->add_option("--k", args.config.k, "size clusters per class")
      ->capture_default_str();
  cmd->add_option("--beta", args.config.beta,
                  "effective-number beta, in [0, 1)")
      ->capture_default_str();
  cmd->add_option("--root", args.config.root,
                  "nth root applied to the amplified mass")
      ->capture_default_str();
  cmd->add_option("--sigma", args.config.kernel_sigma,
                  "Gaussian kernel sigma")
      ->capture_default_str();
  cmd->add_option("--window", args.config.kernel_window,
                  "Gaussian kernel window (odd)")
      ->capture_default_str();
  cmd->add_flag("--normalize", args.config.normalize,
                "rescale each class's cluster weights to mean 1");
  cmd->add_option("--weight-floor", args.config.weight_floor,
                  "minimum emitted weight (0 disables)")
      ->capture_default_str();
  cmd->add_flag("--include-ignored", args.config.include_ignored,
                "keep ignored/difficult instances in the statistics");
  cmd->add_option("--jobs", args.jobs, "worker threads for per-class stages")
      ->capture_default_str();
}

std::vector<fs::path> resolve_inputs(const InputArgs& in,
                                     bool directory_format) {
  std::vector<fs::path> files;
  for (const std::string& raw : in.paths) {
    const fs::path path(raw);
    if (!fs::exists(path)) {
      throw aruba::ConfigError("input path does not exist: " + raw);
    }
    if (fs::is_directory(path)) {
      if (!directory_format) {
        throw aruba::ConfigError("format '" + in.format +
                                 "' expects a file, got directory: " + raw);
      }
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(path);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw aruba::ConfigError("no input files found");
  }
  return files;
}

aruba::Dataset load_dataset(const InputArgs& in) {
  if (in.format == "coco" || in.format == "canonical") {
    const auto files = resolve_inputs(in, false);
    if (files.size() != 1) {
      throw aruba::ConfigError("format '" + in.format +
                               "' expects exactly one file");
    }
    return in.format == "coco" ? aruba::parse_coco_file(files.front())
                               : aruba::read_canonical_file(files.front());
  }
  if (in.format == "dota") {
    return aruba::parse_dota(resolve_inputs(in, true));
  }
  if (in.format == "visdrone") {
    return aruba::parse_visdrone(resolve_inputs(in, true));
  }
  throw aruba::ConfigError("unknown format: '" + in.format + "'");
}

std::string config_line(const std::string& command, const InputArgs& in,
                        const PipelineArgs& args,
                        const std::string& extra = "") {
  std::string line = "command=" + command + " format=" + in.format +
                     " bins=" + std::to_string(args.config.bin_count) +
                     " k=" + std::to_string(args.config.k) +
                     " beta=" + aruba::format_sig(args.config.beta) +
                     " root=" + std::to_string(args.config.root) +
                     " sigma=" + aruba::format_sig(args.config.kernel_sigma) +
                     " window=" + std::to_string(args.config.kernel_window) +
                     " normalize=" + (args.config.normalize ? "1" : "0") +
                     " weight_floor=" +
                     aruba::format_sig(args.config.weight_floor) +
                     " include_ignored=" +
                     (args.config.include_ignored ? "1" : "0");
  if (!extra.empty()) line += " " + extra;
  return line;
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
}

void report_written(const fs::path& path) {
  std::cout << "wrote: " << path.string() << "\n";
}

void cmd_weights(const InputArgs& in, const PipelineArgs& args,
                 const fs::path& out_dir) {
  const aruba::Dataset dataset = load_dataset(in);
  const aruba::WeightTable table =
      aruba::build_weight_table(dataset, args.config, args.jobs);
  emit_warnings(dataset.warnings);
  emit_warnings(table.warnings);
  fs::create_directories(out_dir);
  aruba::write_file(out_dir / "weights.json", aruba::write_weight_json(table));
  aruba::write_file(out_dir / "weights.csv", aruba::write_weight_csv(table));
  report_written(out_dir / "weights.json");
  report_written(out_dir / "weights.csv");
}

void cmd_analyze(const InputArgs& in, const PipelineArgs& args,
                 const fs::path& out_dir, bool log_y, bool log_area,
                 double quantile) {
  const aruba::Dataset dataset = load_dataset(in);
  emit_warnings(dataset.warnings);
  const std::string line =
      config_line("analyze", in, args,
                  std::string("log_y=") + (log_y ? "1" : "0") +
                      " log_area=" + (log_area ? "1" : "0") +
                      " quantile=" + aruba::format_sig(quantile));

  const auto buckets =
      aruba::segregate_by_class(dataset, args.config.include_ignored);
  const auto pipelines = aruba::run_pipeline(dataset, args.config, args.jobs);
  fs::create_directories(out_dir);
  for (const auto& [class_id, pipe] : pipelines) {
    emit_warnings(pipe.warnings);
    const std::string stem = "class_" + aruba::pad_number(class_id, 4);
    // Histogram plots may use log-area bins; the clustering pipeline below
    // always runs on the linear histogram.
    const aruba::ClassSizeHistogram& report_hist =
        pipe.hist;
    if (log_area) {
      const auto log_hist = aruba::build_log_histogram(
          class_id, buckets.at(class_id), args.config.bin_count);
      aruba::write_file(out_dir / (stem + "_histogram.csv"),
                        aruba::write_histogram_csv(log_hist, line));
      aruba::write_file(out_dir / (stem + "_histogram.svg"),
                        aruba::write_histogram_svg(log_hist, log_y, line));
    } else {
      aruba::write_file(out_dir / (stem + "_histogram.csv"),
                        aruba::write_histogram_csv(report_hist, line));
      aruba::write_file(out_dir / (stem + "_histogram.svg"),
                        aruba::write_histogram_svg(report_hist, log_y, line));
    }
    aruba::write_file(out_dir / (stem + "_clusters.csv"),
                      aruba::write_cluster_csv(pipe.hist, pipe.model, line));
    aruba::write_file(
        out_dir / (stem + "_clusters.svg"),
        aruba::write_cluster_svg(pipe.model, pipe.amplified, log_y, line));
    report_written(out_dir / (stem + "_histogram.csv"));
    report_written(out_dir / (stem + "_histogram.svg"));
    report_written(out_dir / (stem + "_clusters.csv"));
    report_written(out_dir / (stem + "_clusters.svg"));
  }

  // Classic per-class effective-number weights as the comparison baseline.
  std::map<int, std::int64_t> retained_counts;
  for (const auto& [class_id, records] : buckets) {
    retained_counts[class_id] = static_cast<std::int64_t>(records.size());
  }
  const auto baseline =
      aruba::class_balanced_weights(retained_counts, args.config.beta);
  aruba::write_file(
      out_dir / "class_frequencies.csv",
      aruba::write_class_frequency_csv(aruba::class_frequencies(dataset),
                                       baseline, line));
  report_written(out_dir / "class_frequencies.csv");
  const aruba::ImbalanceSummary summary = aruba::summarize_imbalance(
      dataset, quantile, args.config.include_ignored);
  aruba::write_file(out_dir / "imbalance.json",
                    aruba::write_imbalance_json(summary, line));
  report_written(out_dir / "imbalance.json");
}

void cmd_split(const InputArgs& in, const fs::path& out_dir,
               const std::vector<double>& thresholds) {
  double small_max = aruba::kDefaultSmallMax;
  double medium_max = aruba::kDefaultMediumMax;
  if (!thresholds.empty()) {
    if (thresholds.size() != 2) {
      throw aruba::ConfigError("--thresholds expects exactly two values");
    }
    small_max = thresholds[0];
    medium_max = thresholds[1];
  }
  const aruba::Dataset dataset = load_dataset(in);
  emit_warnings(dataset.warnings);
  const auto subsets = aruba::split_by_size(dataset, small_max, medium_max);
  const std::array<const char*, 3> names = {"small", "medium", "large"};
  for (std::size_t i = 0; i < 3; ++i) {
    aruba::write_dataset(subsets[i], out_dir / names[i]);
    std::cout << names[i] << ": " << subsets[i].instances.size()
              << " instances\n";
  }
}

void cmd_synth(std::int64_t seed, const fs::path& out_dir,
               const std::string& spec_path) {
  aruba::SyntheticSpec spec =
      spec_path.empty()
          ? aruba::SyntheticSpec::default_long_tail()
          : aruba::parse_synthetic_spec(aruba::read_file(spec_path),
                                        spec_path);
  if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
  const aruba::Dataset dataset = aruba::generate_synthetic(spec);
  fs::create_directories(out_dir);
  const nlohmann::json generator = aruba::synthetic_spec_to_json(spec);
  aruba::write_file(out_dir / "dataset.json",
                    aruba::write_canonical(dataset, &generator));
  report_written(out_dir / "dataset.json");
}

void cmd_toy_train(const InputArgs& in, bool have_inputs,
                   const PipelineArgs& args, const fs::path& out_dir,
                   std::int64_t seed, int iterations, double learning_rate) {
  aruba::Dataset dataset;
  if (have_inputs) {
    dataset = load_dataset(in);
  } else {
    aruba::SyntheticSpec spec = aruba::SyntheticSpec::default_long_tail();
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
    dataset = aruba::generate_synthetic(spec);
  }
  emit_warnings(dataset.warnings);

  const aruba::WeightTable table =
      aruba::build_weight_table(dataset, args.config, args.jobs);
  emit_warnings(table.warnings);

  aruba::ToyOptions options;
  if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);
  if (iterations > 0) options.iterations = iterations;
  if (learning_rate > 0.0) options.learning_rate = learning_rate;

  const aruba::ToyTask uniform_task =
      aruba::make_toy_task(dataset, table, options, /*uniform=*/true);
  const aruba::ToyTask aruba_task =
      aruba::make_toy_task(dataset, table, options, /*uniform=*/false);
  const aruba::ToyReport uniform_report = aruba::train_toy(uniform_task);
  const aruba::ToyReport aruba_report = aruba::train_toy(aruba_task);

  const std::string line = config_line(
      "toy-train", in, args,
      "seed=" + std::to_string(options.seed) +
          " iterations=" + std::to_string(options.iterations) +
          " learning_rate=" + aruba::format_sig(options.learning_rate));

  std::string csv = aruba::report_stamp(line);
  csv += "class_id,cluster,count,weight,mean_abs_error_uniform,"
         "mean_abs_error_aruba\n";
  for (std::size_t c = 0; c < aruba_report.clusters.size(); ++c) {
    const auto& info = aruba_report.clusters[c].info;
    csv += std::to_string(info.class_id) + "," +
           std::to_string(info.cluster) + "," + std::to_string(info.count) +
           "," + aruba::format_sig(info.weight) + "," +
           aruba::format_sig(uniform_report.clusters[c].mean_abs_error) + "," +
           aruba::format_sig(aruba_report.clusters[c].mean_abs_error) + "\n";
  }

  aruba::JsonWriter w;
  w.begin_object();
  w.key("aruba");
  w.begin_object();
  w.key("final_loss");
  w.value(aruba_report.final_loss);
  w.key("head_error");
  w.value(aruba_report.head_error);
  w.key("tail_error");
  w.value(aruba_report.tail_error);
  w.end_object();
  w.key("config");
  w.value(line);
  w.key("head_cluster");
  w.value(static_cast<std::int64_t>(aruba_report.head_cluster));
  w.key("tail_cluster");
  w.value(static_cast<std::int64_t>(aruba_report.tail_cluster));
  w.key("tool");
  w.value(aruba::kToolName);
  w.key("uniform");
  w.begin_object();
  w.key("final_loss");
  w.value(uniform_report.final_loss);
  w.key("head_error");
  w.value(uniform_report.head_error);
  w.key("tail_error");
  w.value(uniform_report.tail_error);
  w.end_object();
  w.key("version");
  w.value(aruba::kToolVersion);
  w.end_object();

  fs::create_directories(out_dir);
  aruba::write_file(out_dir / "toy_report.csv", csv);
  aruba::write_file(out_dir / "toy_summary.json", w.str());
  report_written(out_dir / "toy_report.csv");
  report_written(out_dir / "toy_summary.json");
  std::cout << "head mean |error| uniform=" +
                   aruba::format_sig(uniform_report.head_error) +
                   " aruba=" + aruba::format_sig(aruba_report.head_error)
            << "\n";
}

void cmd_kernel(int window, double sigma) {
  const aruba::GaussianKernel kernel = aruba::make_kernel(window, sigma);
  for (int i = -kernel.half(); i <= kernel.half(); ++i) {
    std::cout << i << "\t" << aruba::format_full(kernel.tap(i)) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"size-balanced loss weights for object detection datasets"};
  app.require_subcommand(1);

  InputArgs in;
  PipelineArgs pipeline;
  std::string out_dir = "aruba-out";
  std::vector<double> thresholds;
  std::int64_t seed = -1;
  std::string spec_path;
  bool log_y = false;
  bool log_area = false;
  double quantile = 0.25;
  int iterations = 0;
  double learning_rate = 0.0;

  CLI::App* weights = app.add_subcommand(
      "weights", "compute per-instance loss weights from annotations");
  add_input_options(weights, in);
  add_pipeline_options(weights, pipeline);
  weights->add_option("--out", out_dir, "output directory")
      ->capture_default_str();

  CLI::App* analyze = app.add_subcommand(
      "analyze", "size-imbalance reports: histograms, clusters, summary");
  add_input_options(analyze, in);
  add_pipeline_options(analyze, pipeline);
  analyze->add_option("--out", out_dir, "output directory")
      ->capture_default_str();
  analyze->add_flag("--log-y", log_y, "log-scale report bar heights");
  analyze->add_flag("--log-area", log_area,
                    "log-spaced histogram bins (analysis plots only)");
  analyze->add_option("--quantile", quantile,
                      "range fraction for the head/tail ratio")
      ->capture_default_str();

  CLI::App* split = app.add_subcommand(
      "split", "partition a dataset into small/medium/large by area");
  add_input_options(split, in);
  split->add_option("--out", out_dir, "output directory")
      ->capture_default_str();
  split->add_option("--thresholds", thresholds,
                    "two ascending area cutoffs (default 1024 9216)")
      ->expected(2);

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a deterministic synthetic long-tail dataset");
  synth->add_option("--seed", seed, "generator seed");
  synth->add_option("--spec", spec_path, "JSON synthetic spec file");
  synth->add_option("--out", out_dir, "output directory")
      ->capture_default_str();

  CLI::App* toy = app.add_subcommand(
      "toy-train", "toy weighted-regression comparison: uniform vs computed "
                   "weights");
  toy->add_option("paths", in.paths, "annotation files or directories");
  toy->add_option("--format", in.format,
                  "input format: coco, dota, visdrone or canonical")
      ->capture_default_str();
  add_pipeline_options(toy, pipeline);
  toy->add_option("--seed", seed, "toy data / synthetic seed");
  toy->add_option("--iterations", iterations, "gradient descent steps");
  toy->add_option("--learning-rate", learning_rate, "gradient descent step "
                                                    "size");
  toy->add_option("--out", out_dir, "output directory")
      ->capture_default_str();

  CLI::App* kernel = app.add_subcommand(
      "kernel", "print amplification kernel taps at full precision");
  int kernel_window = 11;
  double kernel_sigma = 2.0;
  kernel->add_option("--window", kernel_window, "kernel window (odd)")
      ->capture_default_str();
  kernel->add_option("--sigma", kernel_sigma, "kernel sigma")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (weights->parsed()) {
      cmd_weights(in, pipeline, out_dir);
    } else if (analyze->parsed()) {
      cmd_analyze(in, pipeline, out_dir, log_y, log_area, quantile);
    } else if (split->parsed()) {
      cmd_split(in, out_dir, thresholds);
    } else if (synth->parsed()) {
      cmd_synth(seed, out_dir, spec_path);
    } else if (toy->parsed()) {
      cmd_toy_train(in, !in.paths.empty(), pipeline, out_dir, seed,
                    iterations, learning_rate);
    } else if (kernel->parsed()) {
      cmd_kernel(kernel_window, kernel_sigma);
    }
  } catch (const aruba::ConfigError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const aruba::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return kExitData;
  } catch (const aruba::SchemaError& e) {
    std::cerr << "error: schema: " << e.what() << "\n";
    return kExitData;
  } catch (const aruba::RecordError& e) {
    std::cerr << "error: record: " << e.what() << "\n";
    return kExitData;
  } catch (const aruba::Error& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
