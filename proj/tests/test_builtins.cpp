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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "mapverify/builtins.hpp"
#include "mapverify/config.hpp"
#include "mapverify/geometry.hpp"
#include "mapverify/util.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mapverify;
using mapverify::testing::make_straight;

namespace {

LaneletNetwork two_lane_chain() {
  // 1 climbs 1 m over 10 m; 2 continues flat with a 0.3 m step up.
  std::vector<Lanelet> lanelets;
  lanelets.push_back(make_straight(1, 0, 10, 0, 0.0, 1.0, {2}));
  lanelets.push_back(make_straight(2, 10, 20, 0, 1.3, 1.3));
  return LaneletNetwork::with_derived_predecessors(std::move(lanelets));
}

}  // namespace

TEST_SUITE("builtins") {

TEST_CASE("the catalog lists exactly the eight builtins") {
  const BuiltinCatalog& catalog = BuiltinCatalog::standard();
  CHECK(catalog.all().size() == 8);
  for (const char* name : {"grade_max", "elev_step", "min_clearance", "length", "start_z",
                           "end_z", "overlaps_xy", "is_successor"}) {
    CAPTURE(name);
    CHECK(catalog.find(name) != nullptr);
  }
  CHECK(catalog.find("not_a_builtin") == nullptr);
  CHECK(catalog.find("grade_max")->result == PdlType::kNumber);
  CHECK(catalog.find("overlaps_xy")->result == PdlType::kBoolean);
}

TEST_CASE("the rendered catalog documents every builtin") {
  const std::string text = BuiltinCatalog::standard().render();
  for (const BuiltinSig& sig : BuiltinCatalog::standard().all()) {
    CHECK(text.find(sig.name) != std::string::npos);
    CHECK(text.find(sig.doc) != std::string::npos);
  }
}

TEST_CASE("numeric builtins agree with the geometry oracles") {
  const LaneletNetwork net = two_lane_chain();
  const GeometryContext geo(net, EvalConfig{});
  CHECK(geo.grade_max(1) ==
        doctest::Approx(oracle::max_grade(oracle::centerline_points(net.at(1), 64))));
  CHECK(geo.grade_max(2) == doctest::Approx(0.0));
  CHECK(geo.elev_step(1, 2) == doctest::Approx(0.3));
  CHECK(geo.length(1) == doctest::Approx(10.0));
  CHECK(geo.start_z(1) == doctest::Approx(0.0));
  CHECK(geo.end_z(1) == doctest::Approx(1.0));
  CHECK(geo.is_successor(1, 2));
  CHECK_FALSE(geo.is_successor(2, 1));
}

TEST_CASE("overlap builtins are total on the same id") {
  const LaneletNetwork net = two_lane_chain();
  const GeometryContext geo(net, EvalConfig{});
  CHECK(geo.overlaps_xy(1, 1));
  CHECK(geo.min_clearance(1, 1) == 0.0);
}

TEST_CASE("min_clearance of separated lanelets is infinite") {
  std::vector<Lanelet> lanelets;
  lanelets.push_back(make_straight(1, 0, 10, 0, 0, 0));
  lanelets.push_back(make_straight(2, 0, 10, 40, 5, 5));
  const LaneletNetwork net = LaneletNetwork::from_lanelets(std::move(lanelets));
  const GeometryContext geo(net, EvalConfig{});
  CHECK_FALSE(geo.overlaps_xy(1, 2));
  CHECK(std::isinf(geo.min_clearance(1, 2)));
}

TEST_CASE("eval_builtin dispatches and records a witness") {
  const LaneletNetwork net = two_lane_chain();
  const GeometryContext geo(net, EvalConfig{});
  WitnessRecorder recorder;
  const std::vector<Value> args{Value::of_lanelet(1), Value::of_lanelet(2)};
  const Value got = eval_builtin(geo, "elev_step", args, &recorder);
  CHECK(got.type == PdlType::kNumber);
  CHECK(got.number == doctest::Approx(0.3));
  REQUIRE(recorder.entries().size() == 1);
  CHECK(recorder.entries()[0].call == "elev_step(1, 2)");
}

TEST_CASE("boolean builtins record as zero or one") {
  const LaneletNetwork net = two_lane_chain();
  const GeometryContext geo(net, EvalConfig{});
  WitnessRecorder recorder;
  const std::vector<Value> args{Value::of_lanelet(1), Value::of_lanelet(2)};
  const Value got = eval_builtin(geo, "is_successor", args, &recorder);
  CHECK(got.type == PdlType::kBoolean);
  CHECK(got.boolean);
  REQUIRE(recorder.entries().size() == 1);
  CHECK(recorder.entries()[0].value == 1.0);
}

TEST_CASE("an unknown lanelet id is an evaluation error") {
  const LaneletNetwork net = two_lane_chain();
  const GeometryContext geo(net, EvalConfig{});
  CHECK_THROWS_AS((void)geo.grade_max(99), EvalError);
}

TEST_CASE("render_call formats each argument by type") {
  const std::vector<Value> args{Value::of_lanelet(3), Value::of_number(0.15),
                                Value::of_boolean(true)};
  CHECK(render_call("f", args) == "f(3, 0.15, true)");
}

TEST_CASE("sampling count follows the config") {
  // A kinked centerline measured coarsely vs finely gives different grades;
  // the context must honor samples_per_centerline.
  std::vector<Point3> left{{0, 2, 0}, {10, 2, 2}, {20, 2, 0}};
  std::vector<Point3> right{{0, -2, 0}, {10, -2, 2}, {20, -2, 0}};
  const Lanelet kinked{1, Polyline3(std::move(left)), Polyline3(std::move(right)), {}, {}};
  const LaneletNetwork net = LaneletNetwork::from_lanelets({kinked});
  EvalConfig coarse;
  coarse.samples_per_centerline = 2;
  const GeometryContext geo_coarse(net, coarse);
  const GeometryContext geo_fine(net, EvalConfig{});
  CHECK(geo_coarse.grade_max(1) == doctest::Approx(0.0));
  CHECK(geo_fine.grade_max(1) == doctest::Approx(0.2));
}

}  // TEST_SUITE
