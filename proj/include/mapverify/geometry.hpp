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

#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace mapverify {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Point3&) const = default;
};

double xy_distance(const Point3& a, const Point3& b);

/// Open polyline in 3D. Always valid once constructed: at least two points,
/// all coordinates finite, and every consecutive pair at least kMinSegmentXy
/// apart in the xy plane (vertical jumps within a polyline are excluded, so
/// grades are always well defined).
class Polyline3 {
 public:
  static constexpr double kMinSegmentXy = 1e-6;

  explicit Polyline3(std::vector<Point3> points);

  const std::vector<Point3>& points() const { return points_; }
  size_t size() const { return points_.size(); }
  const Point3& front() const { return points_.front(); }
  const Point3& back() const { return points_.back(); }

  /// Sum of segment lengths projected to the xy plane.
  double xy_length() const;

 private:
  std::vector<Point3> points_;
};

/// One drivable segment bounded by a left and a right polyline. Connectivity
/// is stored on both sides: b in successors(a) iff a in predecessors(b).
struct Lanelet {
  int64_t id = 0;
  Polyline3 left;
  Polyline3 right;
  std::vector<int64_t> successors;
  std::vector<int64_t> predecessors;
};

/// Checks the single-lanelet invariants (positive id, no duplicate or
/// self-referencing links); throws ValidationError naming the lanelet.
void validate_lanelet(const Lanelet& lanelet);

/// Validated collection of lanelets with referential integrity and symmetric
/// successor/predecessor links.
class LaneletNetwork {
 public:
  /// Validates and adopts the lanelets; throws ValidationError on duplicate
  /// ids, dangling references, or asymmetric links, naming the offender.
  static LaneletNetwork from_lanelets(std::vector<Lanelet> lanelets);

  /// Builder for sources that record only successors: predecessor lists must
  /// be empty and are derived before validation.
  static LaneletNetwork with_derived_predecessors(std::vector<Lanelet> lanelets);

  bool contains(int64_t id) const { return lanelets_.count(id) != 0; }
  const Lanelet& at(int64_t id) const;
  size_t size() const { return lanelets_.size(); }

  /// Lanelets keyed by id; iteration order is ascending id.
  const std::map<int64_t, Lanelet>& lanelets() const { return lanelets_; }
  std::vector<int64_t> ids() const;

 private:
  std::map<int64_t, Lanelet> lanelets_;
};

struct OverlapResult {
  bool overlaps = false;
  /// Smallest |dz| over sample pairs that are xy-close; +infinity iff the
  /// lanelets do not overlap.
  double min_gap = 0.0;
};

/// Uniform resampling by xy arc length to exactly n points (n >= 2). Sample
/// stations are spread evenly over [0, total xy length], so the endpoints are
/// the input endpoints; z is interpolated linearly along the same parameter.
Polyline3 resample(const Polyline3& line, int n);

/// Pointwise midpoint of both bounds after resampling them to n points each.
Polyline3 centerline(const Lanelet& lanelet, int n);

/// Largest |dz| / xy-run over consecutive segments; 0 for level polylines.
double max_abs_grade(const Polyline3& line);

/// |end elevation of a's centerline - start elevation of b's centerline|,
/// with both centerlines sampled at n points.
double boundary_step(const Lanelet& a, const Lanelet& b, int n);

/// Scans all n*n centerline sample pairs of two distinct lanelets; a pair
/// within `radius` in the xy plane counts as overlap, and min_gap is the
/// smallest |dz| over the overlapping pairs. Runs the scan in parallel for
/// large n; the result is identical to the serial kernel.
OverlapResult xy_overlap_clearance(const Lanelet& a, const Lanelet& b, double radius, int n);

/// Serial reference kernel for the pair scan, kept for tests and benchmarks.
OverlapResult xy_overlap_clearance_serial(const Lanelet& a, const Lanelet& b, double radius,
                                          int n);

/// Pair scans over already-sampled centerlines (the kernels proper).
OverlapResult overlap_scan_serial(const std::vector<Point3>& a, const std::vector<Point3>& b,
                                  double radius);
OverlapResult overlap_scan_parallel(const std::vector<Point3>& a, const std::vector<Point3>& b,
                                    double radius);

}  // namespace mapverify
