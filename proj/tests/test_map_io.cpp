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
#include "mapverify/map_io.hpp"
#include "mapverify/scenario_gen.hpp"
#include "mapverify/util.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mapverify;
using mapverify::testing::read_data;

namespace {

const char* kOneLanelet = R"(<laneletNetwork>
  <lanelet id="1">
    <leftBound>
      <point><x>0</x><y>2</y><z>0</z></point>
      <point><x>10</x><y>2</y><z>0</z></point>
    </leftBound>
    <rightBound>
      <point><x>0</x><y>-2</y><z>0</z></point>
      <point><x>10</x><y>-2</y><z>0</z></point>
    </rightBound>
  </lanelet>
</laneletNetwork>
)";

}  // namespace

TEST_SUITE("map_io") {

TEST_CASE("reads a minimal one-lanelet document") {
  const LaneletNetwork net = read_map(kOneLanelet);
  CHECK(net.size() == 1);
  CHECK(net.at(1).left.size() == 2);
  CHECK(net.at(1).right.front() == Point3{0, -2, 0});
}

TEST_CASE("a dangling successor reference names the missing id") {
  std::string doc = kOneLanelet;
  const size_t at = doc.find("</rightBound>") + std::string("</rightBound>").size();
  doc.insert(at, "\n    <successor ref=\"33\"/>");
  try {
    read_map(doc);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("33") != std::string::npos);
  }
}

TEST_CASE("chain fixture links both directions") {
  const LaneletNetwork net = read_map(read_data("fixtures/maps/chain_clean.xml"));
  REQUIRE(net.size() == 3);
  CHECK(net.at(1).successors == std::vector<int64_t>{2});
  CHECK(net.at(2).predecessors == std::vector<int64_t>{1});
  CHECK(net.at(2).successors == std::vector<int64_t>{3});
  CHECK(net.at(3).predecessors == std::vector<int64_t>{2});
}

TEST_CASE("unknown elements are rejected with a position") {
  std::string doc = kOneLanelet;
  doc.insert(doc.find("</lanelet>"), "<speedLimit>30</speedLimit>");
  try {
    read_map(doc);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("speedLimit") != std::string::npos);
    CHECK(e.line() > 0);
  }
}

TEST_CASE("write_map of an empty network round-trips") {
  const LaneletNetwork empty = LaneletNetwork::from_lanelets({});
  const std::string doc = write_map(empty);
  CHECK(read_map(doc).size() == 0);
}

TEST_CASE("write then read reproduces a generated map exactly") {
  ScenarioSpec spec;
  spec.seed = 11;
  spec.layout = MapTemplate::kBridgeOverRoad;
  spec.defects = {DefectKind::kLowClearance};
  const GeneratedMap made = generate(spec);
  const std::string doc = write_map(made.network);
  const LaneletNetwork back = read_map(doc);
  REQUIRE(back.size() == made.network.size());
  for (const auto& [id, lanelet] : made.network.lanelets()) {
    CHECK(back.at(id).left.points() == lanelet.left.points());
    CHECK(back.at(id).right.points() == lanelet.right.points());
    CHECK(back.at(id).successors == lanelet.successors);
    CHECK(back.at(id).predecessors == lanelet.predecessors);
  }
  CHECK(write_map(back) == doc);
}

TEST_CASE("awkward coordinates survive the round trip bit-exactly") {
  Rng rng(31);
  std::vector<Point3> left;
  std::vector<Point3> right;
  double x = 0.0;
  for (int i = 0; i < 6; ++i) {
    left.push_back({x, 2.0 + rng.uniform(-1e-7, 1e-7), rng.uniform(-1.0, 1.0) / 3.0});
    right.push_back({x, -2.0, rng.uniform(-1e3, 1e3) * (1.0 / 3.0)});
    x += 1.0 / 3.0 + rng.uniform(0.0, 7.0);
  }
  const Lanelet one{5, Polyline3(std::move(left)), Polyline3(std::move(right)), {}, {}};
  const LaneletNetwork net = LaneletNetwork::from_lanelets({one});
  const LaneletNetwork back = read_map(write_map(net));
  CHECK(back.at(5).left.points() == net.at(5).left.points());
  CHECK(back.at(5).right.points() == net.at(5).right.points());
}

TEST_CASE("line road with linear elevation hits the closed-form endpoint") {
  const std::vector<OpenDriveRoad> roads =
      read_opendrive(read_data("fixtures/opendrive/line_slope.xodr"));
  REQUIRE(roads.size() == 1);
  const Polyline3 line = sample_reference_line(roads[0], 1.0);
  CHECK(line.back().x == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(line.back().y == doctest::Approx(0.0));
  CHECK(line.back().z == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("cubic elevation matches the closed form at every station") {
  const std::vector<OpenDriveRoad> roads =
      read_opendrive(read_data("fixtures/opendrive/cubic.xodr"));
  REQUIRE(roads.size() == 1);
  const Polyline3 line = sample_reference_line(roads[0], 1.0);
  REQUIRE(line.size() >= 100);
  double s = 0.0;
  for (size_t i = 0; i < line.size(); ++i) {
    s = i + 1 == line.size() ? roads[0].length : static_cast<double>(i);
    const double want = oracle::cubic_eval(1.0, 0.0, 0.0, 1e-6, s);
    CHECK(std::abs(line.points()[i].z - want) < 1e-9);
  }
  CHECK(line.back().z == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("arc geometry lands on the analytic circle point") {
  const std::vector<OpenDriveRoad> roads = read_opendrive(read_data("fixtures/opendrive/arc.xodr"));
  REQUIRE(roads.size() == 1);
  const Polyline3 line = sample_reference_line(roads[0], 0.5);
  CHECK(std::abs(line.back().x - 100.0) < 1e-6);
  CHECK(std::abs(line.back().y - 100.0) < 1e-6);
  const Point3 stepped = oracle::arc_endpoint(0, 0, 0, 0.01, roads[0].length, 1e-4);
  CHECK(std::abs(line.back().x - stepped.x) < 1e-6);
  CHECK(std::abs(line.back().y - stepped.y) < 1e-6);
}

TEST_CASE("a station beyond the plan coverage is an error") {
  OpenDriveRoad road;
  road.id = 1;
  road.length = 50.0;
  road.plan.push_back({0.0, 0.0, 0.0, 0.0, 30.0, GeometryKind::kLine, 0.0});
  road.elevations.push_back({0.0, 0.0, 0.0, 0.0, 0.0});
  road.lane_width = 4.0;
  CHECK_THROWS_AS(sample_reference_line(road, 1.0), ValidationError);
}

TEST_CASE("converted straight road offsets the bounds by half a width") {
  const std::vector<OpenDriveRoad> roads =
      read_opendrive(read_data("fixtures/opendrive/line_slope.xodr"));
  const Lanelet lanelet = convert(roads[0], 1.0);
  CHECK(lanelet.id == roads[0].id);
  for (const Point3& p : lanelet.left.points()) CHECK(p.y == doctest::Approx(2.0));
  for (const Point3& p : lanelet.right.points()) CHECK(p.y == doctest::Approx(-2.0));
}

TEST_CASE("conversion preserves a linear grade") {
  const std::vector<OpenDriveRoad> roads =
      read_opendrive(read_data("fixtures/opendrive/line_slope.xodr"));
  const Lanelet lanelet = convert(roads[0], 1.0);
  CHECK(std::abs(max_abs_grade(centerline(lanelet, 64)) - 0.05) < 1e-9);
}

TEST_CASE("arc road bounds stay concentric") {
  const std::vector<OpenDriveRoad> roads = read_opendrive(read_data("fixtures/opendrive/arc.xodr"));
  const Lanelet lanelet = convert(roads[0], 0.5);
  // hdg 0 from the origin with curvature 0.01 turns about (0, 100).
  const double r = 100.0;
  const double w = roads[0].lane_width / 2.0;
  for (const Point3& p : lanelet.left.points()) {
    CHECK(std::abs(std::hypot(p.x, p.y - r) - (r - w)) < 1e-6);
  }
  for (const Point3& p : lanelet.right.points()) {
    CHECK(std::abs(std::hypot(p.x, p.y - r) - (r + w)) < 1e-6);
  }
}

TEST_CASE("convert_document links roads and keeps elevation continuous") {
  const std::vector<OpenDriveRoad> roads =
      read_opendrive(read_data("fixtures/opendrive/chain.xodr"));
  REQUIRE(roads.size() == 2);
  const LaneletNetwork net = convert_document(roads, 1.0);
  REQUIRE(net.size() == 2);
  CHECK(net.at(1).successors == std::vector<int64_t>{2});
  CHECK(net.at(2).predecessors == std::vector<int64_t>{1});
  CHECK(boundary_step(net.at(1), net.at(2), 64) < 1e-9);
}

}  // TEST_SUITE
