// Copyright 2026 The WSP Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "support.hpp"
#include "wsp/generator.hpp"
#include "wsp/io.hpp"

using namespace wsp;

namespace fs = std::filesystem;

TEST_CASE("instance JSON round-trips every constraint kind") {
  GenSpec spec{8, 40, {5, 3, 1, 1, 2}, 3};
  const auto g = generate(spec);
  std::vector<Constraint> cs(g.instance.constraints().begin(), g.instance.constraints().end());
  cs.push_back(BindingOfDuty{StepId{0}, StepId{7}});
  cs.push_back(AtLeast{2, step_mask({1, 2, 3})});
  const Instance inst(8, 40, g.instance.auth(), cs);
  const auto text = instance_to_json(inst, g.meta);
  const auto back = instance_from_json(text);
  CHECK(back.instance == inst);
  REQUIRE(back.meta.has_value());
  CHECK(back.meta->seed == 3);
  CHECK(back.meta->generator == "wsp-gen/1");
  CHECK(instance_to_json(back.instance, back.meta) == text);
  CHECK(text.back() == '\n');
}

TEST_CASE("fixtures load") {
  const auto f = load_instance(test::fixture("running_example.json"));
  CHECK(f.instance == test::running_example());
  CHECK(load_plan(test::fixture("running_example_plan.json")) == test::running_example_plan());
  CHECK(load_plan(test::fixture("truncated_plan.json")).size() == 3);
}

TEST_CASE("malformed input is reported with its path") {
  CHECK_THROWS_AS(instance_from_json("{"), FormatError);
  CHECK_THROWS_AS(instance_from_json(R"({"k":2,"n":2,"constraints":[]})"), FormatError);
  try {
    instance_from_json(
        R"({"k":2,"n":2,"auth":[[0],[1]],"constraints":[{"kind":"nope","steps":[0,1]}]})");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("constraints[0].kind") != std::string::npos);
  }
  // Out-of-range users are invariant errors surfaced as format errors.
  CHECK_THROWS(instance_from_json(R"({"k":1,"n":1,"auth":[[3]],"constraints":[]})"));
  CHECK_THROWS_AS(plan_from_json(R"({"assignment":[0,-1]})"), FormatError);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.json"), FormatError);
}

TEST_CASE("plan JSON round-trip") {
  const auto p = Plan::from_indices({4, 0, 4, 2});
  CHECK(plan_from_json(plan_to_json(p)) == p);
}

TEST_CASE("calibration cache files") {
  const auto dir = fs::temp_directory_path() / "wsp-io-test-cache";
  fs::remove_all(dir);
  CalibrationRecord rec{8, 80, "wsp", 14, 200, 0.4, 0.6, 1};
  CHECK(calibration_from_json(calibration_to_json(rec)) == rec);
  CHECK_FALSE(load_calibration(dir, "wsp", 8, 80).has_value());
  store_calibration(dir, rec);
  CHECK(calibration_path(dir, "wsp", 8, 80).filename() == "wsp_k8_n80.json");
  const auto got = load_calibration(dir, "wsp", 8, 80);
  REQUIRE(got.has_value());
  CHECK(*got == rec);
  fs::remove_all(dir);
}
