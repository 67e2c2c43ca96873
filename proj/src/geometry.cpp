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

#include "mapverify/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "mapverify/util.hpp"

namespace mapverify {

double xy_distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Polyline3::Polyline3(std::vector<Point3> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw ValidationError("polyline needs at least two points");
  }
  for (size_t i = 0; i < points_.size(); ++i) {
    const Point3& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ValidationError("polyline point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && xy_distance(points_[i - 1], p) <= kMinSegmentXy) {
      throw ValidationError("polyline points " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " coincide in the xy plane");
    }
  }
}

double Polyline3::xy_length() const {
  double total = 0.0;
  for (size_t i = 1; i < points_.size(); ++i) {
    total += xy_distance(points_[i - 1], points_[i]);
  }
  return total;
}

void validate_lanelet(const Lanelet& lanelet) {
  const std::string who = "lanelet " + std::to_string(lanelet.id);
  if (lanelet.id <= 0) {
    throw ValidationError(who + ": id must be positive");
  }
  for (const auto* links : {&lanelet.successors, &lanelet.predecessors}) {
    std::set<int64_t> seen;
    for (int64_t ref : *links) {
      if (ref == lanelet.id) throw ValidationError(who + ": links to itself");
      if (!seen.insert(ref).second) {
        throw ValidationError(who + ": duplicate link to " + std::to_string(ref));
      }
    }
  }
}

LaneletNetwork LaneletNetwork::from_lanelets(std::vector<Lanelet> lanelets) {
  LaneletNetwork net;
  for (Lanelet& l : lanelets) {
    validate_lanelet(l);
    int64_t id = l.id;
    if (!net.lanelets_.emplace(id, std::move(l)).second) {
      throw ValidationError("duplicate lanelet id " + std::to_string(id));
    }
  }
  for (const auto& [id, l] : net.lanelets_) {
    for (int64_t ref : l.successors) {
      auto it = net.lanelets_.find(ref);
      if (it == net.lanelets_.end()) {
        throw ValidationError("lanelet " + std::to_string(id) + ": successor " +
                              std::to_string(ref) + " does not exist");
      }
      const auto& preds = it->second.predecessors;
      if (std::find(preds.begin(), preds.end(), id) == preds.end()) {
        throw ValidationError("lanelet " + std::to_string(id) + ": successor link to " +
                              std::to_string(ref) + " has no matching predecessor link");
      }
    }
    for (int64_t ref : l.predecessors) {
      auto it = net.lanelets_.find(ref);
      if (it == net.lanelets_.end()) {
        throw ValidationError("lanelet " + std::to_string(id) + ": predecessor " +
                              std::to_string(ref) + " does not exist");
      }
      const auto& succs = it->second.successors;
      if (std::find(succs.begin(), succs.end(), id) == succs.end()) {
        throw ValidationError("lanelet " + std::to_string(id) + ": predecessor link to " +
                              std::to_string(ref) + " has no matching successor link");
      }
    }
  }
  return net;
}

LaneletNetwork LaneletNetwork::with_derived_predecessors(std::vector<Lanelet> lanelets) {
  std::map<int64_t, std::vector<int64_t>> preds;
  for (const Lanelet& l : lanelets) {
    if (!l.predecessors.empty()) {
      throw ValidationError("lanelet " + std::to_string(l.id) +
                            ": predecessor lists must be empty when deriving them");
    }
    for (int64_t ref : l.successors) preds[ref].push_back(l.id);
  }
  for (Lanelet& l : lanelets) {
    auto it = preds.find(l.id);
    if (it != preds.end()) {
      std::sort(it->second.begin(), it->second.end());
      l.predecessors = std::move(it->second);
    }
  }
  return from_lanelets(std::move(lanelets));
}

const Lanelet& LaneletNetwork::at(int64_t id) const {
  auto it = lanelets_.find(id);
  if (it == lanelets_.end()) {
    throw ValidationError("unknown lanelet id " + std::to_string(id));
  }
  return it->second;
}

std::vector<int64_t> LaneletNetwork::ids() const {
  std::vector<int64_t> out;
  out.reserve(lanelets_.size());
  for (const auto& [id, l] : lanelets_) out.push_back(id);
  return out;
}

Polyline3 resample(const Polyline3& line, int n) {
  if (n < 2) throw ValidationError("resample needs at least two points");
  const std::vector<Point3>& pts = line.points();

  std::vector<double> cum(pts.size(), 0.0);
  for (size_t i = 1; i < pts.size(); ++i) {
    cum[i] = cum[i - 1] + xy_distance(pts[i - 1], pts[i]);
  }
  const double total = cum.back();

  std::vector<Point3> out;
  out.reserve(static_cast<size_t>(n));
  out.push_back(pts.front());
  size_t seg = 0;
  for (int k = 1; k < n - 1; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < pts.size() && cum[seg + 1] < s) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double t = (s - cum[seg]) / seg_len;
    const Point3& a = pts[seg];
    const Point3& b = pts[seg + 1];
    out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)});
  }
  out.push_back(pts.back());
  return Polyline3(std::move(out));
}

Polyline3 centerline(const Lanelet& lanelet, int n) {
  Polyline3 left = resample(lanelet.left, n);
  Polyline3 right = resample(lanelet.right, n);
  std::vector<Point3> mid(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Point3& l = left.points()[static_cast<size_t>(i)];
    const Point3& r = right.points()[static_cast<size_t>(i)];
    mid[static_cast<size_t>(i)] = {(l.x + r.x) / 2.0, (l.y + r.y) / 2.0, (l.z + r.z) / 2.0};
  }
  return Polyline3(std::move(mid));
}

double max_abs_grade(const Polyline3& line) {
  const std::vector<Point3>& pts = line.points();
  double worst = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    const double run = xy_distance(pts[i - 1], pts[i]);
    const double grade = std::abs(pts[i].z - pts[i - 1].z) / run;
    worst = std::max(worst, grade);
  }
  return worst;
}

double boundary_step(const Lanelet& a, const Lanelet& b, int n) {
  const Polyline3 ca = centerline(a, n);
  const Polyline3 cb = centerline(b, n);
  return std::abs(ca.back().z - cb.front().z);
}

OverlapResult overlap_scan_serial(const std::vector<Point3>& a, const std::vector<Point3>& b,
                                  double radius) {
  const double r2 = radius * radius;
  bool overlaps = false;
  double best = std::numeric_limits<double>::infinity();
  for (const Point3& pa : a) {
    for (const Point3& pb : b) {
      const double dx = pa.x - pb.x;
      const double dy = pa.y - pb.y;
      if (dx * dx + dy * dy <= r2) {
        overlaps = true;
        best = std::min(best, std::abs(pa.z - pb.z));
      }
    }
  }
  return {overlaps, best};
}

OverlapResult overlap_scan_parallel(const std::vector<Point3>& a, const std::vector<Point3>& b,
                                    double radius) {
  const double r2 = radius * radius;
  const long na = static_cast<long>(a.size());
  const long nb = static_cast<long>(b.size());
  int hit = 0;
  double best = std::numeric_limits<double>::infinity();
  // min-reductions are exact, so thread count never changes the result.
#pragma omp parallel for collapse(2) reduction(| : hit) reduction(min : best) schedule(static)
  for (long i = 0; i < na; ++i) {
    for (long j = 0; j < nb; ++j) {
      const Point3& pa = a[static_cast<size_t>(i)];
      const Point3& pb = b[static_cast<size_t>(j)];
      const double dx = pa.x - pb.x;
      const double dy = pa.y - pb.y;
      if (dx * dx + dy * dy <= r2) {
        hit |= 1;
        best = std::min(best, std::abs(pa.z - pb.z));
      }
    }
  }
  return {hit != 0, best};
}

namespace {

OverlapResult clearance_with_kernel(const Lanelet& a, const Lanelet& b, double radius, int n,
                                    bool allow_parallel) {
  if (a.id == b.id) throw ValidationError("overlap clearance needs two distinct lanelets");
  if (!(radius > 0.0)) throw ValidationError("overlap radius must be positive");
  const Polyline3 ca = centerline(a, n);
  const Polyline3 cb = centerline(b, n);
  // The scan is quadratic; below ~64k pairs the parallel setup costs more
  // than it saves.
  const bool big = static_cast<long long>(n) * n >= 65536;
  if (allow_parallel && big) {
    return overlap_scan_parallel(ca.points(), cb.points(), radius);
  }
  return overlap_scan_serial(ca.points(), cb.points(), radius);
}

}  // namespace

OverlapResult xy_overlap_clearance(const Lanelet& a, const Lanelet& b, double radius, int n) {
  return clearance_with_kernel(a, b, radius, n, true);
}

OverlapResult xy_overlap_clearance_serial(const Lanelet& a, const Lanelet& b, double radius,
                                          int n) {
  return clearance_with_kernel(a, b, radius, n, false);
}

}  // namespace mapverify
