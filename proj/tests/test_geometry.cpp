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
#include <limits>
#include <vector>

#include "doctest.h"
#include "mapverify/geometry.hpp"
#include "mapverify/util.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mapverify;
using mapverify::testing::make_straight;

namespace {

Polyline3 random_polyline(Rng& rng) {
  const int verts = 2 + static_cast<int>(rng.below(5));
  std::vector<Point3> pts;
  double x = rng.uniform(-10.0, 10.0);
  double y = rng.uniform(-10.0, 10.0);
  for (int i = 0; i < verts; ++i) {
    pts.push_back({x, y, rng.uniform(-4.0, 4.0)});
    x += rng.uniform(0.5, 8.0);
    y += rng.uniform(-3.0, 3.0);
  }
  return Polyline3(std::move(pts));
}

double dist_to_segment(const Point3& p, const Point3& a, const Point3& b) {
  const double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
  const double len2 = dx * dx + dy * dy + dz * dz;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy + (p.z - a.z) * dz) / len2;
    t = std::min(1.0, std::max(0.0, t));
  }
  const double ex = p.x - (a.x + t * dx);
  const double ey = p.y - (a.y + t * dy);
  const double ez = p.z - (a.z + t * dz);
  return std::sqrt(ex * ex + ey * ey + ez * ez);
}

double dist_to_chain(const Point3& p, const Polyline3& line) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j + 1 < line.size(); ++j) {
    best = std::min(best, dist_to_segment(p, line.points()[j], line.points()[j + 1]));
  }
  return best;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("polyline rejects degenerate inputs") {
  CHECK_THROWS_AS(Polyline3(std::vector<Point3>{{0, 0, 0}}), ValidationError);
  CHECK_THROWS_AS(Polyline3({{0, 0, 0}, {0, 0, 5}}), ValidationError);  // vertical-only segment
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Polyline3({{0, 0, 0}, {inf, 0, 0}}), ValidationError);
}

TEST_CASE("resample splits a straight segment evenly") {
  const Polyline3 out = resample(Polyline3({{0, 0, 0}, {10, 0, 0}}), 3);
  REQUIRE(out.size() == 3);
  CHECK(out.points()[1].x == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(out.points()[1].y == doctest::Approx(0.0));
}

TEST_CASE("resample at n=2 keeps the endpoints") {
  const Polyline3 out = resample(Polyline3({{0, 0, 0}, {10, 0, 2}}), 2);
  CHECK(out.front() == Point3{0, 0, 0});
  CHECK(out.back() == Point3{10, 0, 2});
}

TEST_CASE("resample places the midpoint by xy arc length") {
  // Segments of xy length 4 and 3; the halfway station 3.5 sits on the first.
  const Polyline3 out = resample(Polyline3({{0, 0, 0}, {4, 0, 0}, {4, 3, 3}}), 3);
  REQUIRE(out.size() == 3);
  CHECK(out.points()[1].x == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(out.points()[1].y == doctest::Approx(0.0));
  CHECK(out.points()[1].z == doctest::Approx(0.0));
}

TEST_CASE("resample matches the dense parameterization oracle") {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const Polyline3 line = random_polyline(rng);
    const int n = 2 + static_cast<int>(rng.below(8));
    const Polyline3 got = resample(line, n);
    const std::vector<Point3> want = oracle::resample_points(line.points(), n);
    REQUIRE(got.size() == static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      CHECK(got.points()[k].x == doctest::Approx(want[k].x).epsilon(1e-9));
      CHECK(got.points()[k].y == doctest::Approx(want[k].y).epsilon(1e-9));
      CHECK(got.points()[k].z == doctest::Approx(want[k].z).epsilon(1e-9));
    }
  }
}

TEST_CASE("equal-chord polylines are fixed points of resample") {
  // Stations land exactly on existing vertices when the xy chords are all
  // equal, so resampling at the vertex count must reproduce the polyline.
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng.below(30));
    const double heading = rng.uniform(0.0, 6.28);
    const double spacing = rng.uniform(0.5, 20.0);
    const double ox = rng.uniform(-50.0, 50.0), oy = rng.uniform(-50.0, 50.0);
    std::vector<Point3> pts;
    for (int k = 0; k < n; ++k) {
      pts.push_back({ox + std::cos(heading) * spacing * k,
                     oy + std::sin(heading) * spacing * k, rng.uniform(-5.0, 5.0)});
    }
    const Polyline3 line{pts};
    const Polyline3 back = resample(line, n);
    REQUIRE(back.size() == static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(back.points()[k].x - pts[k].x) < 1e-9);
      CHECK(std::abs(back.points()[k].y - pts[k].y) < 1e-9);
      CHECK(std::abs(back.points()[k].z - pts[k].z) < 1e-9);
    }
  }
}

TEST_CASE("resample pins endpoints and stays on the source chain") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const Polyline3 line = random_polyline(rng);
    const int n = 2 + static_cast<int>(rng.below(60));
    const Polyline3 out = resample(line, n);
    CHECK(std::abs(out.front().x - line.front().x) < 1e-9);
    CHECK(std::abs(out.front().z - line.front().z) < 1e-9);
    CHECK(std::abs(out.back().x - line.back().x) < 1e-9);
    CHECK(std::abs(out.back().z - line.back().z) < 1e-9);
    // Every sample lies on the source chain, so the chordal path never lengthens.
    for (const Point3& p : out.points()) CHECK(dist_to_chain(p, line) < 1e-9);
    CHECK(out.xy_length() <= line.xy_length() + 1e-9);
  }
}

TEST_CASE("centerline averages symmetric bounds to the axis") {
  const Lanelet l = make_straight(1, 0, 20, 0, 0, 0);
  const Polyline3 center = centerline(l, 5);
  for (const Point3& p : center.points()) {
    CHECK(p.y == doctest::Approx(0.0));
    CHECK(p.z == doctest::Approx(0.0));
  }
}

TEST_CASE("centerline z is the midpoint of the bound elevations") {
  const Lanelet l{1, Polyline3({{0, 2, 1}, {10, 2, 1}}), Polyline3({{0, -2, 0}, {10, -2, 0}}),
                  {}, {}};
  const Polyline3 center = centerline(l, 4);
  for (const Point3& p : center.points()) CHECK(p.z == doctest::Approx(0.5));
}

TEST_CASE("centerline aligns bounds with different vertex counts") {
  const Lanelet l{1,
                  Polyline3({{0, 2, 0}, {12, 2, 3}}),
                  Polyline3({{0, -2, 0}, {3, -2, 1}, {6, -2, 1}, {9, -2, 2}, {12, -2, 3}}),
                  {},
                  {}};
  const Polyline3 got = centerline(l, 4);
  const std::vector<Point3> want = oracle::centerline_points(l, 4);
  REQUIRE(got.size() == 4);
  for (size_t k = 0; k < 4; ++k) {
    CHECK(got.points()[k].x == doctest::Approx(want[k].x).epsilon(1e-9));
    CHECK(got.points()[k].z == doctest::Approx(want[k].z).epsilon(1e-9));
  }
}

TEST_CASE("max_abs_grade on flat and sloped lines") {
  CHECK(max_abs_grade(Polyline3({{0, 0, 0}, {10, 0, 0}})) == 0.0);
  CHECK(max_abs_grade(Polyline3({{0, 0, 0}, {10, 0, 1}})) == doctest::Approx(0.1));
}

TEST_CASE("max_abs_grade takes the worst segment") {
  // Per-segment grades 0.1 then 0.2.
  const double got = max_abs_grade(Polyline3({{0, 0, 0}, {10, 0, 1}, {20, 0, 3}}));
  CHECK(got == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(got == doctest::Approx(oracle::max_grade({{0, 0, 0}, {10, 0, 1}, {20, 0, 3}})));
}

TEST_CASE("max_abs_grade is invariant under translation and z-rotation") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Polyline3 line = random_polyline(rng);
    const double base = max_abs_grade(line);
    const double dx = rng.uniform(-50.0, 50.0);
    const double dy = rng.uniform(-50.0, 50.0);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    std::vector<Point3> moved;
    for (const Point3& p : line.points()) {
      const double x = p.x * std::cos(angle) - p.y * std::sin(angle) + dx;
      const double y = p.x * std::sin(angle) + p.y * std::cos(angle) + dy;
      moved.push_back({x, y, p.z});
    }
    CHECK(std::abs(max_abs_grade(Polyline3(std::move(moved))) - base) < 1e-9);
  }
}

TEST_CASE("boundary_step measures the junction offset") {
  const Lanelet a = make_straight(1, 0, 10, 0, 1.0, 2.0);
  SUBCASE("continuous junction") {
    const Lanelet b = make_straight(2, 10, 20, 0, 2.0, 2.0);
    CHECK(boundary_step(a, b, 8) == doctest::Approx(0.0));
  }
  SUBCASE("offset junction") {
    const Lanelet b = make_straight(2, 10, 20, 0, 2.5, 2.5);
    CHECK(boundary_step(a, b, 8) == doctest::Approx(0.5));
  }
}

TEST_CASE("boundary_step uses centerline midpoints") {
  // a's bounds end at z 1.0 and 3.0 (centerline 2.0); b starts flat at 2.6.
  const Lanelet a{1, Polyline3({{0, 2, 0}, {10, 2, 1.0}}), Polyline3({{0, -2, 0}, {10, -2, 3.0}}),
                  {}, {}};
  const Lanelet b = make_straight(2, 10, 20, 0, 2.6, 2.6);
  CHECK(boundary_step(a, b, 16) == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("crossing roads overlap with the full height difference") {
  const Lanelet road = make_straight(1, -30, 30, 0, 0, 0);
  const Lanelet bridge{2, Polyline3({{2, -30, 5}, {2, 30, 5}}),
                       Polyline3({{-2, -30, 5}, {-2, 30, 5}}), {}, {}};
  const OverlapResult got = xy_overlap_clearance(road, bridge, 1.5, 64);
  CHECK(got.overlaps);
  CHECK(got.min_gap == doctest::Approx(5.0).epsilon(1e-12));
  const OverlapResult brute = oracle::clearance_brute(road, bridge, 1.5, 1024);
  CHECK(brute.overlaps);
  CHECK(std::abs(got.min_gap - brute.min_gap) <= 0.1);
}

TEST_CASE("distant parallel roads do not overlap") {
  const Lanelet a = make_straight(1, 0, 40, 0, 0, 0);
  const Lanelet b = make_straight(2, 0, 40, 50, 0, 0);
  const OverlapResult got = xy_overlap_clearance(a, b, 1.5, 64);
  CHECK_FALSE(got.overlaps);
  CHECK(std::isinf(got.min_gap));
}

TEST_CASE("stacked identical geometry reports the constant offset") {
  const Lanelet a = make_straight(1, 0, 40, 0, 0, 0);
  const Lanelet b = make_straight(2, 0, 40, 0, 4.5, 4.5);
  const OverlapResult got = xy_overlap_clearance(a, b, 1.5, 64);
  CHECK(got.overlaps);
  CHECK(got.min_gap == doctest::Approx(4.5));
}

TEST_CASE("xy_overlap_clearance is symmetric") {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 4);
    const std::vector<int64_t> ids = net.ids();
    for (size_t x = 0; x < ids.size(); ++x) {
      for (size_t y = x + 1; y < ids.size(); ++y) {
        const OverlapResult ab = xy_overlap_clearance(net.at(ids[x]), net.at(ids[y]), 1.5, 32);
        const OverlapResult ba = xy_overlap_clearance(net.at(ids[y]), net.at(ids[x]), 1.5, 32);
        CHECK(ab.overlaps == ba.overlaps);
        if (ab.overlaps) CHECK(std::abs(ab.min_gap - ba.min_gap) < 1e-9);
      }
    }
  }
}

TEST_CASE("parallel overlap scan matches the serial one") {
  Rng rng(29);
  for (int i = 0; i < 40; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 3);
    const std::vector<int64_t> ids = net.ids();
    for (size_t x = 0; x < ids.size(); ++x) {
      for (size_t y = x + 1; y < ids.size(); ++y) {
        const OverlapResult par = xy_overlap_clearance(net.at(ids[x]), net.at(ids[y]), 1.5, 64);
        const OverlapResult ser =
            xy_overlap_clearance_serial(net.at(ids[x]), net.at(ids[y]), 1.5, 64);
        CHECK(par.overlaps == ser.overlaps);
        if (par.overlaps) CHECK(par.min_gap == ser.min_gap);
      }
    }
  }
}

TEST_CASE("validate_lanelet rejects bad ids and links") {
  Lanelet bad = make_straight(0, 0, 10, 0, 0, 0);
  CHECK_THROWS_AS(validate_lanelet(bad), ValidationError);
  Lanelet self = make_straight(3, 0, 10, 0, 0, 0, {3});
  CHECK_THROWS_AS(validate_lanelet(self), ValidationError);
  Lanelet dup = make_straight(4, 0, 10, 0, 0, 0, {5, 5});
  CHECK_THROWS_AS(validate_lanelet(dup), ValidationError);
}

TEST_CASE("from_lanelets requires symmetric links") {
  std::vector<Lanelet> pair;
  pair.push_back(make_straight(1, 0, 10, 0, 0, 0, {2}));
  pair.push_back(make_straight(2, 10, 20, 0, 0, 0));
  CHECK_THROWS_AS(LaneletNetwork::from_lanelets(std::move(pair)), ValidationError);
}

TEST_CASE("from_lanelets rejects a dangling successor") {
  std::vector<Lanelet> one;
  one.push_back(make_straight(1, 0, 10, 0, 0, 0, {9}));
  try {
    LaneletNetwork::from_lanelets(std::move(one));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("9") != std::string::npos);
  }
}

TEST_CASE("with_derived_predecessors completes the back links") {
  std::vector<Lanelet> chain;
  chain.push_back(make_straight(1, 0, 10, 0, 0, 0, {2}));
  chain.push_back(make_straight(2, 10, 20, 0, 0, 0, {3}));
  chain.push_back(make_straight(3, 20, 30, 0, 0, 0));
  const LaneletNetwork net = LaneletNetwork::with_derived_predecessors(std::move(chain));
  CHECK(net.at(2).predecessors == std::vector<int64_t>{1});
  CHECK(net.at(3).predecessors == std::vector<int64_t>{2});
  CHECK(net.at(1).predecessors.empty());
  CHECK(net.ids() == std::vector<int64_t>{1, 2, 3});
}

}  // TEST_SUITE
