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

#include <cmath>
#include <random>

#include "aruba/weights.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using aruba::build_weight_table;
using aruba::class_balanced_weights;
using aruba::cluster_weight;
using aruba::effective_number;
using aruba::WeightConfig;
using aruba::WeightTable;
using aruba::testing::DatasetBuilder;
using aruba::testing::effective_number_highprec;

TEST_CASE("effective_number trivial anchors") {
  CHECK(effective_number(1.0, 0.5, 1) == doctest::Approx(1.0));
  CHECK(effective_number(1.0, 0.9999, 3) == doctest::Approx(1.0));
  CHECK(effective_number(0.0, 0.9, 2) == 0.0);
  CHECK(effective_number(5.0, 0.0, 1) == 1.0);
}

TEST_CASE("effective_number matches the high-precision oracle value") {
  // mass 10000, beta 0.9999, root 2 -> x = 100. Frozen from a 256-bit
  // evaluation at the double nearest 0.9999.
  const double expected = 99.506613086291902;
  const double got = effective_number(10000.0, 0.9999, 2);
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  CHECK(effective_number_highprec(10000.0, 0.9999, 2) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("effective_number input validation") {
  CHECK_THROWS_AS(effective_number(1.0, 1.0, 2), aruba::ConfigError);
  CHECK_THROWS_AS(effective_number(1.0, -0.1, 2), aruba::ConfigError);
  CHECK_THROWS_AS(effective_number(1.0, 0.5, 0), aruba::ConfigError);
  CHECK_THROWS_AS(effective_number(-1.0, 0.5, 1), aruba::ConfigError);
}

TEST_CASE("effective_number agrees with MPFR over random triples") {
  std::mt19937_64 rng(2024);
  auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  for (int trial = 0; trial < 200; ++trial) {
    const double mass = std::exp(u() * std::log(1e8));
    const double beta = 1.0 - std::exp(-u() * 20.0 - 1e-3);
    const int root = 1 + static_cast<int>(rng() % 4);
    const double got = effective_number(mass, beta, root);
    const double expected = effective_number_highprec(mass, beta, root);
    CHECK(got == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("stability: large mass at beta=0.9999 stays finite and bounded") {
  const double beta = 0.9999;
  const double e = effective_number(1e8, beta, 2);
  CHECK(std::isfinite(e));
  CHECK(e < 1.0 / (1.0 - beta));
  CHECK(e > 0.0);
}

TEST_CASE("cluster_weight anchors and errors") {
  CHECK(cluster_weight(1.0) == 0.0);
  // Same oracle value as the effective-number test.
  CHECK(cluster_weight(99.506613086291902) ==
        doctest::Approx(0.98995041667097239).epsilon(1e-12));
  CHECK(cluster_weight(0.5) == 0.0);  // clamp
  CHECK_THROWS_AS(cluster_weight(0.0), aruba::DataError);
  CHECK_THROWS_AS(cluster_weight(-1.0), aruba::ConfigError);
}

TEST_CASE("head clusters outweigh tail clusters") {
  const double w_head = cluster_weight(effective_number(1e6, 0.9999, 2));
  const double w_tail = cluster_weight(effective_number(1e2, 0.9999, 2));
  CHECK(w_head > w_tail);
}

TEST_CASE("weight law properties over random configurations") {
  std::mt19937_64 rng(99);
  auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  for (int trial = 0; trial < 2000; ++trial) {
    const double beta = u() * 0.99989 + 1e-5;
    const int root = 1 + static_cast<int>(rng() % 3);
    const double a = 1.0 + u() * 1e6;
    const double b = a * (1.0 + 1e-6 + u());
    const double ea = effective_number(a, beta, root);
    const double eb = effective_number(b, beta, root);
    const double wa = cluster_weight(ea);
    const double wb = cluster_weight(eb);
    CHECK(ea <= eb);
    CHECK(wa <= wb);
    CHECK(wa >= 0.0);
    CHECK(wa < 1.0);
    CHECK(wb < 1.0);
  }
}

TEST_CASE("beta limits") {
  std::mt19937_64 rng(123);
  auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  for (int trial = 0; trial < 200; ++trial) {
    const double mass = 1.0 + u() * 1e4;
    const int root = 1 + static_cast<int>(rng() % 3);
    // beta -> 0+: weights vanish.
    const double w0 = cluster_weight(effective_number(mass, 1e-9, root));
    CHECK(w0 < 1e-6);
    // beta -> 1-: effective number approaches the rooted mass.
    const double e1 = effective_number(mass, 1.0 - 1e-9, root);
    const double x = std::pow(mass, 1.0 / root);
    CHECK(e1 == doctest::Approx(x).epsilon(1e-4));
  }
}

TEST_CASE("class-balanced baseline weights") {
  SUBCASE("equal counts give equal weights") {
    const auto w = class_balanced_weights({{1, 50}, {2, 50}, {3, 50}}, 0.99);
    CHECK(w.at(1) == w.at(2));
    CHECK(w.at(2) == w.at(3));
  }
  SUBCASE("beta 0 gives unit weights") {
    const auto w = class_balanced_weights({{1, 10}, {2, 99}}, 0.0);
    CHECK(w.at(1) == 1.0);
    CHECK(w.at(2) == 1.0);
  }
  SUBCASE("rare classes get larger weights (inverse-frequency direction)") {
    // Frozen from a high-precision evaluation at beta = 0.99.
    const auto w = class_balanced_weights({{1, 10}, {2, 1000}}, 0.99);
    CHECK(w.at(1) == doctest::Approx(0.10458290117591236).epsilon(1e-12));
    CHECK(w.at(2) == doctest::Approx(0.010000431731112486).epsilon(1e-12));
    CHECK(w.at(1) > w.at(2));
  }
  SUBCASE("zero count is an error") {
    CHECK_THROWS_AS(class_balanced_weights({{1, 0}}, 0.5), aruba::DataError);
  }
}

namespace {

aruba::Dataset random_long_tail(std::uint64_t seed, int classes = 2,
                                int per_class = 400) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  DatasetBuilder builder;
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      // Mostly small areas, sparse large tail.
      const double z = u();
      const double area =
          z < 0.8 ? 10.0 + 100.0 * u() : 500.0 + 20000.0 * u();
      builder.add(c, area);
    }
  }
  return builder.build();
}

}  // namespace

TEST_CASE("build_weight_table on a single degenerate class") {
  DatasetBuilder builder;
  for (int i = 0; i < 25; ++i) builder.add(0, 64.0);
  WeightConfig config;
  config.k = 5;  // collapses to 1 cluster via the feasibility fallback
  const WeightTable table = build_weight_table(builder.build(), config);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.k_used.at(0) == 1);
  CHECK(table.rows[0].raw_count == 25);
  // One cluster holding everything: weight = 1 - 1/E(mass).
  const double expected = cluster_weight(effective_number(
      table.rows[0].amplified_mass, config.beta, config.root));
  CHECK(table.rows[0].weight == expected);
  CHECK_FALSE(table.warnings.empty());
}

TEST_CASE("weight table is bounded, monotone and NaN-free") {
  const auto dataset = random_long_tail(5);
  WeightConfig config;
  config.k = 10;
  config.bin_count = 200;
  const WeightTable table = build_weight_table(dataset, config);
  double prev_mass = -1.0, prev_weight = -1.0;
  int prev_class = -1;
  for (const auto& row : table.rows) {
    CHECK(std::isfinite(row.weight));
    CHECK(std::isfinite(row.effective_number));
    CHECK(row.weight >= 0.0);
    CHECK(row.weight < 1.0);
    if (row.class_id == prev_class && row.amplified_mass > prev_mass) {
      CHECK(row.weight >= prev_weight);
    }
    prev_class = row.class_id;
    prev_mass = row.amplified_mass;
    prev_weight = row.weight;
  }
  // Every retained instance resolves to exactly one weight.
  CHECK(table.instances.size() == dataset.retained_count());
}

TEST_CASE("within a class, more amplified mass never means less weight") {
  const auto dataset = random_long_tail(11);
  WeightConfig config;
  config.k = 8;
  config.bin_count = 150;
  const WeightTable table = build_weight_table(dataset, config);
  for (const auto& a : table.rows) {
    for (const auto& b : table.rows) {
      if (a.class_id == b.class_id && a.amplified_mass < b.amplified_mass) {
        CHECK(a.weight <= b.weight);
      }
    }
  }
}

TEST_CASE("degenerate pipeline reproduces unsmoothed per-bin weights") {
  // window 1 + root 1 + k = positive-bin count: the pipeline collapses to
  // the plain effective-number formula on raw bin counts, bit for bit.
  std::mt19937_64 rng(77);
  auto u = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -53); };
  for (int trial = 0; trial < 10; ++trial) {
    DatasetBuilder builder;
    const int n = 50 + static_cast<int>(rng() % 100);
    for (int i = 0; i < n; ++i) {
      builder.add(0, 1.0 + 500.0 * u());
    }
    const auto dataset = builder.build();
    WeightConfig config;
    config.kernel_window = 1;
    config.root = 1;
    config.bin_count = 40;
    config.k = 1000000;  // falls back to the positive-bin count
    const WeightTable table = build_weight_table(dataset, config);
    for (const auto& row : table.rows) {
      CHECK(row.amplified_mass == static_cast<double>(row.raw_count));
      const double direct = cluster_weight(effective_number(
          static_cast<double>(row.raw_count), config.beta, 1));
      CHECK(row.weight == direct);
    }
  }
}

TEST_CASE("direction of reweighting in a long-tailed class") {
  const auto dataset = random_long_tail(21, /*classes=*/1, /*per_class=*/800);
  WeightConfig config;
  config.k = 6;
  config.bin_count = 300;
  const WeightTable table = build_weight_table(dataset, config);
  REQUIRE(!table.rows.empty());
  const auto& smallest = table.rows.front();
  const auto& largest = table.rows.back();
  REQUIRE(smallest.cluster == 0);
  if (smallest.amplified_mass > largest.amplified_mass) {
    CHECK(smallest.weight >= largest.weight);
  }
}

TEST_CASE("normalize rescales each class's weights to mean 1") {
  const auto dataset = random_long_tail(31);
  WeightConfig config;
  config.k = 5;
  config.bin_count = 100;
  config.normalize = true;
  const WeightTable table = build_weight_table(dataset, config);
  std::map<int, std::pair<double, int>> sums;
  for (const auto& row : table.rows) {
    sums[row.class_id].first += row.weight;
    sums[row.class_id].second += 1;
  }
  for (const auto& [class_id, sum_count] : sums) {
    CHECK(sum_count.first / sum_count.second == doctest::Approx(1.0));
  }
}

TEST_CASE("weight floor lifts every emitted weight") {
  const auto dataset = random_long_tail(41);
  WeightConfig config;
  config.k = 5;
  config.bin_count = 100;
  config.weight_floor = 0.3;
  const WeightTable table = build_weight_table(dataset, config);
  for (const auto& row : table.rows) CHECK(row.weight >= 0.3);
}

TEST_CASE("beta = 0 is accepted with a warning and zero weights") {
  const auto dataset = random_long_tail(51);
  WeightConfig config;
  config.beta = 0.0;
  config.k = 3;
  config.bin_count = 50;
  const WeightTable table = build_weight_table(dataset, config);
  bool warned = false;
  for (const auto& w : table.warnings) {
    if (w.find("beta = 0") != std::string::npos) warned = true;
  }
  CHECK(warned);
  for (const auto& row : table.rows) CHECK(row.weight == 0.0);
}

TEST_CASE("invalid configurations are rejected") {
  const auto dataset = random_long_tail(61);
  WeightConfig config;
  config.beta = 1.0;
  CHECK_THROWS_AS(build_weight_table(dataset, config), aruba::ConfigError);
  config = WeightConfig{};
  config.root = 0;
  CHECK_THROWS_AS(build_weight_table(dataset, config), aruba::ConfigError);
  config = WeightConfig{};
  config.kernel_window = 2;
  CHECK_THROWS_AS(build_weight_table(dataset, config), aruba::ConfigError);
}

TEST_CASE("jobs do not change the result") {
  const auto dataset = random_long_tail(71, /*classes=*/5, /*per_class=*/200);
  WeightConfig config;
  config.k = 6;
  config.bin_count = 120;
  const WeightTable seq = build_weight_table(dataset, config, 1);
  const WeightTable par = build_weight_table(dataset, config, 8);
  REQUIRE(seq.rows.size() == par.rows.size());
  for (std::size_t i = 0; i < seq.rows.size(); ++i) {
    CHECK(seq.rows[i].weight == par.rows[i].weight);
    CHECK(seq.rows[i].amplified_mass == par.rows[i].amplified_mass);
  }
  CHECK(seq.instances.size() == par.instances.size());
}
