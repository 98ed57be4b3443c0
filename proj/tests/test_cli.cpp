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

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "aruba/ingest/coco.hpp"
#include "aruba/ingest/text_util.hpp"
#include "aruba/io/float_format.hpp"
#include "aruba/weights.hpp"
#include "support/temp_dir.hpp"

using aruba::testing::TempDir;

namespace {

const std::string kCli = ARUBA_CLI_PATH;
const std::string kFixtureDir = ARUBA_FIXTURE_DIR;

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const std::string capture =
      (std::filesystem::temp_directory_path() /
       ("aruba-cli-out-" + std::to_string(::getpid()) + "-" +
        std::to_string(invocation++)))
          .string();
  const std::string command =
      "\"" + kCli + "\" " + args + " > \"" + capture + "\" 2>&1";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = aruba::read_file(capture);
  std::filesystem::remove(capture);
  return result;
}

std::set<std::string> dir_listing(const std::filesystem::path& dir) {
  std::set<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    names.insert(entry.path().filename().string());
  }
  return names;
}

}  // namespace

TEST_CASE("cli: kernel subcommand prints full-precision taps") {
  const CliResult r = run_cli("kernel --window 5 --sigma 2");
  CHECK(r.exit_code == 0);
  const auto lines = aruba::split_lines(r.output);
  REQUIRE(lines.size() == 5);
  CHECK(lines[2] == "0\t1");
  CHECK(lines[0].find("0.60653065971263342") != std::string::npos);
  CHECK(lines[1].find("0.88249690258459546") != std::string::npos);
}

TEST_CASE("cli: weights on the COCO fixture is byte-stable") {
  TempDir tmp;
  const std::string input = kFixtureDir + "/coco_small.json";
  const std::string base =
      "weights --format coco \"" + input + "\" --bins 16 --k 3 ";
  const CliResult r1 =
      run_cli(base + "--out \"" + tmp.file("a").string() + "\"");
  CHECK(r1.exit_code == 0);
  const CliResult r2 =
      run_cli(base + "--out \"" + tmp.file("b").string() + "\"");
  CHECK(r2.exit_code == 0);
  const CliResult r8 = run_cli(base + "--jobs 8 --out \"" +
                               tmp.file("c").string() + "\"");
  CHECK(r8.exit_code == 0);

  const auto bytes_a = aruba::read_file(tmp.file("a") / "weights.json");
  CHECK(bytes_a == aruba::read_file(tmp.file("b") / "weights.json"));
  CHECK(bytes_a == aruba::read_file(tmp.file("c") / "weights.json"));
  CHECK(bytes_a ==
        aruba::read_file(std::string(ARUBA_GOLDEN_DIR) +
                         "/coco_small_weights.json"));
  CHECK(dir_listing(tmp.file("a")) ==
        std::set<std::string>({"weights.csv", "weights.json"}));
}

TEST_CASE("cli: window 1 + root 1 degenerates to per-bin weights") {
  TempDir tmp;
  const CliResult r = run_cli("weights --format coco \"" + kFixtureDir +
                              "/coco_small.json\" --bins 8 --k 1000000 "
                              "--window 1 --root 1 --out \"" +
                              tmp.file("deg").string() + "\"");
  CHECK(r.exit_code == 0);  // the k fallback is a warning, not an error
  const auto doc = nlohmann::json::parse(
      aruba::read_file(tmp.file("deg") / "weights.json"));
  const double beta = doc["header"]["config"]["beta"].get<double>();
  int rows = 0;
  for (const auto& [class_id, clusters] : doc["clusters"].items()) {
    for (const auto& row : clusters) {
      ++rows;
      const auto raw = row["raw_count"].get<double>();
      CHECK(row["amplified_mass"].get<double>() == raw);
      const double direct =
          aruba::cluster_weight(aruba::effective_number(raw, beta, 1));
      CHECK(row["weight"].get<double>() ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
  CHECK(rows > 0);
}

TEST_CASE("cli: exit-code contract") {
  TempDir tmp;
  SUBCASE("invalid beta is a usage error") {
    const CliResult r = run_cli("weights --format coco \"" + kFixtureDir +
                                "/coco_small.json\" --beta 1.0 --out \"" +
                                tmp.file("o").string() + "\"");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error: usage") != std::string::npos);
  }
  SUBCASE("missing input path is a usage error") {
    const CliResult r =
        run_cli("weights --format coco /definitely/not/here.json");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("unknown format is a usage error") {
    const CliResult r = run_cli("weights --format tiff \"" + kFixtureDir +
                                "/coco_small.json\"");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("malformed content is a data error") {
    aruba::write_file(tmp.file("bad.txt"), "1 2 3\n");
    const CliResult r = run_cli("weights --format dota \"" +
                                tmp.file("bad.txt").string() + "\"");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error:") != std::string::npos);
  }
  SUBCASE("unknown subcommand is a usage error") {
    CHECK(run_cli("frobnicate").exit_code == 2);
  }
}

TEST_CASE("cli: analyze emits exactly the declared file set") {
  TempDir tmp;
  const CliResult r = run_cli(
      "analyze --format dota \"" + kFixtureDir + "/dota\" --bins 8 --k 2 " +
      "--window 3 --out \"" + tmp.file("rep").string() + "\"");
  CHECK(r.exit_code == 0);
  std::set<std::string> expected = {"class_frequencies.csv", "imbalance.json"};
  for (const std::string cls : {"0000", "0001", "0002"}) {
    expected.insert("class_" + cls + "_histogram.csv");
    expected.insert("class_" + cls + "_histogram.svg");
    expected.insert("class_" + cls + "_clusters.csv");
    expected.insert("class_" + cls + "_clusters.svg");
  }
  // Class 1 ("plane") only has an ignored instance, so it is absent from the
  // pipeline reports.
  expected.erase("class_0001_histogram.csv");
  expected.erase("class_0001_histogram.svg");
  expected.erase("class_0001_clusters.csv");
  expected.erase("class_0001_clusters.svg");
  CHECK(dir_listing(tmp.file("rep")) == expected);

  // Same file set with log-area/log-y plots; the histogram CSV now carries
  // log-spaced (widening) bin edges.
  const CliResult r2 = run_cli(
      "analyze --format dota \"" + kFixtureDir + "/dota\" --bins 8 --k 2 " +
      "--window 3 --log-y --log-area --out \"" +
      tmp.file("rep2").string() + "\"");
  CHECK(r2.exit_code == 0);
  CHECK(dir_listing(tmp.file("rep2")) == expected);
  const auto lines = aruba::split_lines(
      aruba::read_file(tmp.file("rep2") / "class_0002_histogram.csv"));
  REQUIRE(lines.size() >= 4);
  CHECK(lines[0].find("log_area=1") != std::string::npos);
}

TEST_CASE("cli: split totals are conserved and re-parseable") {
  TempDir tmp;
  const std::string input = kFixtureDir + "/coco_small.json";
  const std::string input_before = aruba::read_file(input);
  const CliResult r = run_cli("split --format coco \"" + input +
                              "\" --thresholds 20 100 "
                              "--out \"" +
                              tmp.file("sp").string() + "\"");
  CHECK(r.exit_code == 0);
  std::size_t total = 0;
  for (const std::string band : {"small", "medium", "large"}) {
    const auto file = tmp.file("sp") / band / "annotations.json";
    REQUIRE(std::filesystem::exists(file));
    total += aruba::parse_coco_file(file).instances.size();
  }
  CHECK(total == 7);
  // Commands never mutate their inputs.
  CHECK(aruba::read_file(input) == input_before);
}

TEST_CASE("cli: synth is deterministic across runs") {
  TempDir tmp;
  const CliResult r1 = run_cli("synth --seed 123 --out \"" +
                               tmp.file("s1").string() + "\"");
  const CliResult r2 = run_cli("synth --seed 123 --out \"" +
                               tmp.file("s2").string() + "\"");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(aruba::read_file(tmp.file("s1") / "dataset.json") ==
        aruba::read_file(tmp.file("s2") / "dataset.json"));
}

TEST_CASE("cli: toy-train compares uniform and weighted modes") {
  TempDir tmp;
  const CliResult r = run_cli(
      "toy-train --seed 13 --beta 0.95 --k 12 --bins 400 --iterations 25 "
      "--out \"" +
      tmp.file("toy").string() + "\"");
  CHECK(r.exit_code == 0);
  const auto summary = nlohmann::json::parse(
      aruba::read_file(tmp.file("toy") / "toy_summary.json"));
  const double uniform_head = summary["uniform"]["head_error"].get<double>();
  const double aruba_head = summary["aruba"]["head_error"].get<double>();
  CHECK(aruba_head < uniform_head);

  const auto report =
      aruba::split_lines(aruba::read_file(tmp.file("toy") / "toy_report.csv"));
  CHECK(report.size() > 2);
  CHECK(report[1] ==
        "class_id,cluster,count,weight,mean_abs_error_uniform,"
        "mean_abs_error_aruba");
}

TEST_CASE("cli: weights run reproduces itself from the embedded config") {
  TempDir tmp;
  const std::string args = "weights --format visdrone \"" + kFixtureDir +
                           "/visdrone\" --bins 8 --k 2 --beta 0.99 "
                           "--window 3 --sigma 1.5 --root 1 ";
  const CliResult r1 =
      run_cli(args + "--out \"" + tmp.file("w1").string() + "\"");
  REQUIRE(r1.exit_code == 0);
  const auto doc = nlohmann::json::parse(
      aruba::read_file(tmp.file("w1") / "weights.json"));
  const auto& config = doc["header"]["config"];
  // Re-run with the flags reconstructed from the embedded config.
  const std::string replay =
      "weights --format visdrone \"" + kFixtureDir + "/visdrone\" --bins " +
      std::to_string(config["bin_count"].get<int>()) + " --k " +
      std::to_string(config["k"].get<int>()) + " --beta " +
      aruba::format_sig(config["beta"].get<double>()) + " --window " +
      std::to_string(config["kernel_window"].get<int>()) + " --sigma " +
      aruba::format_sig(config["kernel_sigma"].get<double>()) + " --root " +
      std::to_string(config["root"].get<int>());
  const CliResult r2 =
      run_cli(replay + " --out \"" + tmp.file("w2").string() + "\"");
  REQUIRE(r2.exit_code == 0);
  CHECK(aruba::read_file(tmp.file("w1") / "weights.json") ==
        aruba::read_file(tmp.file("w2") / "weights.json"));
}
