// Copyright 2026 The mapverify Authors
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

#include <string>

#include "doctest.h"
#include "mapverify/config.hpp"
#include "mapverify/util.hpp"

using namespace mapverify;

TEST_SUITE("config") {

TEST_CASE("defaults carry the shipped thresholds") {
  const EvalConfig config;
  CHECK(config.samples_per_centerline == 64);
  CHECK(config.overlap_radius == 1.5);
  CHECK(config.max_grade == 0.15);
  CHECK(config.max_step == 0.05);
  CHECK(config.stack_eps == 1.0);
  CHECK(config.min_clearance == 4.5);
  CHECK(config.parallel);
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("an empty object keeps the defaults") {
  const EvalConfig config = load_config("{}");
  CHECK(config.samples_per_centerline == 64);
  CHECK(config.min_clearance == 4.5);
}

TEST_CASE("fields override individually") {
  const EvalConfig config = load_config(R"({"max_grade": 0.4, "samples_per_centerline": 128})");
  CHECK(config.max_grade == 0.4);
  CHECK(config.samples_per_centerline == 128);
  CHECK(config.max_step == 0.05);
}

TEST_CASE("unknown fields are rejected") {
  CHECK_THROWS_AS(load_config(R"({"max_gradd": 0.4})"), ValidationError);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(load_config("{"), ValidationError);
  CHECK_THROWS_AS(load_config("[]"), ValidationError);
}

TEST_CASE("out-of-range values fail validation") {
  CHECK_THROWS_AS(load_config(R"({"max_grade": -0.1})"), ValidationError);
  CHECK_THROWS_AS(load_config(R"({"samples_per_centerline": 1})"), ValidationError);
  // stack_eps must stay below min_clearance.
  CHECK_THROWS_AS(load_config(R"({"stack_eps": 5.0})"), ValidationError);
}

TEST_CASE("save and load round-trip the persisted fields") {
  EvalConfig config;
  config.max_grade = 0.2;
  config.samples_per_centerline = 32;
  config.parallel = false;
  const std::string text = save_config(config);
  CHECK(text.find("parallel") == std::string::npos);
  const EvalConfig back = load_config(text);
  CHECK(back.max_grade == 0.2);
  CHECK(back.samples_per_centerline == 32);
  CHECK(back.parallel);  // not persisted, default restored
}

}  // TEST_SUITE
