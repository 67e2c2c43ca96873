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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapverify/geometry.hpp"

namespace mapverify {

// Lanelet map documents: <laneletNetwork> containing <lanelet id="..."> with
// one <leftBound>, one <rightBound> (each a list of <point><x/><y/><z/>), and
// any number of <successor ref="..."/> / <predecessor ref="..."/> links.
// Reading is strict: unknown elements or attributes are format errors.

/// Parses and validates a map document; throws ParseError on malformed XML,
/// FormatError on dialect violations (with element path and line), and
/// ValidationError on network invariant violations.
LaneletNetwork read_map(std::string_view xml_text);

/// Serializes deterministically (lanelets ascending by id, links in stored
/// order, shortest round-trip decimals), so read_map(write_map(n)) == n.
std::string write_map(const LaneletNetwork& network);

enum class GeometryKind { kLine, kArc };

/// One plan-view segment of a road reference line.
struct PlanGeometry {
  double s0 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double hdg = 0.0;
  double length = 0.0;
  GeometryKind kind = GeometryKind::kLine;
  double curvature = 0.0;  // arcs only; nonzero
};

/// Cubic elevation segment: z(s) = a + b u + c u^2 + d u^3 with u = s - s0.
struct ElevationPoly {
  double s0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double eval(double s) const {
    const double u = s - s0;
    return a + u * (b + u * (c + u * d));
  }
};

struct OpenDriveRoad {
  int64_t id = 0;
  double length = 0.0;
  std::vector<PlanGeometry> plan;            // s0 strictly increasing from 0
  std::vector<ElevationPoly> elevations;     // s0 strictly increasing from 0
  double lane_width = 0.0;
  std::optional<int64_t> successor_road_id;
};

/// Parses the supported OpenDRIVE subset (line/arc plan geometry, cubic
/// elevation, one lane width, optional successor link). Strict like read_map.
std::vector<OpenDriveRoad> read_opendrive(std::string_view xml_text);

/// Samples the reference line at stations 0, ds, 2 ds, ... plus the exact
/// road length as the final station. Throws ValidationError when a station
/// falls outside every plan geometry.
Polyline3 sample_reference_line(const OpenDriveRoad& road, double ds);

/// Converts one road to a lanelet: bounds offset half a lane width each side
/// of the reference line, perpendicular to the local heading; elevation is
/// carried over unchanged; the successor link comes from the road link.
Lanelet convert(const OpenDriveRoad& road, double ds);

/// Converts every road and assembles a validated network (predecessor links
/// derived from the successor links).
LaneletNetwork convert_document(const std::vector<OpenDriveRoad>& roads, double ds);

/// Default sampling step for conversions, in meters.
inline constexpr double kDefaultSampleStep = 1.0;

}  // namespace mapverify
