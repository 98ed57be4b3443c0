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
#include <vector>

#include "aruba/analyze.hpp"
#include "aruba/io/reports.hpp"
#include "aruba/synthetic.hpp"
#include "support/builders.hpp"

using aruba::gini_coefficient;
using aruba::summarize_imbalance;
using aruba::testing::DatasetBuilder;

TEST_CASE("gini of equal values is zero") {
  CHECK(gini_coefficient({5.0, 5.0, 5.0, 5.0}) == doctest::Approx(0.0));
  CHECK(gini_coefficient({1.0}) == doctest::Approx(0.0));
}

TEST_CASE("gini matches the closed-form two-point value") {
  // n instances: one of value A, n-1 of value a.
  // G = (n-1)(A-a) / (n ((n-1) a + A)).
  auto closed_form = [](std::size_t n, double big, double small) {
    return (static_cast<double>(n - 1) * (big - small)) /
           (static_cast<double>(n) *
            (static_cast<double>(n - 1) * small + big));
  };
  for (const auto& [n, big, small] :
       std::vector<std::tuple<std::size_t, double, double>>{
           {10, 1000.0, 1.0}, {5, 50.0, 2.0}, {100, 1e6, 10.0}}) {
    std::vector<double> values(n, small);
    values.back() = big;
    CHECK(gini_coefficient(values) ==
          doctest::Approx(closed_form(n, big, small)).epsilon(1e-12));
  }
}

TEST_CASE("gini rejects empty and negative input") {
  CHECK_THROWS_AS(gini_coefficient({}), aruba::DataError);
  CHECK_THROWS_AS(gini_coefficient({1.0, -2.0}), aruba::DataError);
}

TEST_CASE("near-uniform synthetic dataset has tiny gini") {
  aruba::SyntheticSpec spec;
  spec.seed = 3;
  aruba::ClassSpec cls;
  cls.class_id = 0;
  cls.instance_count = 2000;
  cls.law = aruba::ClassSpec::Law::log_normal;
  cls.mu = 5.0;
  cls.sigma = 0.01;  // essentially equal areas
  spec.classes = {cls};
  const auto dataset = aruba::generate_synthetic(spec);
  const auto summary = summarize_imbalance(dataset);
  CHECK(summary.gini < 0.05);
  CHECK(summary.instance_count == 2000);
}

TEST_CASE("imbalance summary on a long-tail dataset") {
  DatasetBuilder builder;
  for (int i = 0; i < 90; ++i) builder.add(0, 10.0 + i * 0.1);
  for (int i = 0; i < 10; ++i) builder.add(0, 5000.0 + i);
  const auto summary = summarize_imbalance(builder.build(), 0.25);
  CHECK(summary.head_count == 90);
  CHECK(summary.tail_count == 10);
  CHECK(summary.head_tail_ratio == doctest::Approx(9.0));
  CHECK(summary.min_area == doctest::Approx(10.0));
  CHECK(summary.max_area == doctest::Approx(5009.0));
  CHECK(summary.gini > 0.5);
}

TEST_CASE("class_frequencies counts retained and ignored separately") {
  const auto dataset = DatasetBuilder()
                           .add(1, 10.0)
                           .add(1, 20.0, true)
                           .add(2, 30.0)
                           .build();
  const auto rows = aruba::class_frequencies(dataset);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].retained == 1);
  CHECK(rows[0].ignored == 1);
  CHECK(rows[1].retained == 1);
  CHECK(rows[1].ignored == 0);
}

TEST_CASE("class frequency CSV carries the class-balanced baseline") {
  const auto dataset = DatasetBuilder()
                           .add(1, 10.0)
                           .add(1, 20.0)
                           .add(2, 30.0, true)
                           .build();
  const auto rows = aruba::class_frequencies(dataset);
  const std::map<int, double> baseline = {{1, 0.75}};
  const std::string csv =
      aruba::write_class_frequency_csv(rows, baseline, "command=test");
  CHECK(csv.find("class_id,name,retained,ignored,class_balanced_weight") !=
        std::string::npos);
  CHECK(csv.find("1,class_1,2,0,0.75") != std::string::npos);
  // Class 2 has no retained instances, so its baseline cell is empty.
  CHECK(csv.find("2,class_2,0,1,\n") != std::string::npos);
}

TEST_CASE("report writers embed the config and stay deterministic") {
  DatasetBuilder builder;
  for (int i = 0; i < 50; ++i) builder.add(0, 10.0 + i);
  const auto dataset = builder.build();
  const auto hist =
      aruba::build_histogram(0, aruba::segregate_by_class(dataset).at(0), 10);
  const std::string line = "command=test bins=10";

  const std::string csv = aruba::write_histogram_csv(hist, line);
  CHECK(csv.find(line) != std::string::npos);
  CHECK(csv == aruba::write_histogram_csv(hist, line));

  const std::string svg = aruba::write_histogram_svg(hist, true, line);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find(line) != std::string::npos);

  const auto summary = summarize_imbalance(dataset);
  const std::string json = aruba::write_imbalance_json(summary, line);
  CHECK(json.find("head_tail_ratio") != std::string::npos);
  CHECK(json == aruba::write_imbalance_json(summary, line));
}
