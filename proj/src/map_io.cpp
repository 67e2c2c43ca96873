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

#include "mapverify/map_io.hpp"

#include <cmath>
#include <set>
#include <string>

#include "mapverify/util.hpp"
#include "mapverify/xml.hpp"

namespace mapverify {

namespace {

// Walks an XML tree while tracking the element path for error messages,
// e.g. /laneletNetwork/lanelet[2]/leftBound/point[1]/x.
class StrictWalker {
 public:
  StrictWalker(const XmlNode& node, std::string path) : node_(node), path_(std::move(path)) {}

  const XmlNode& node() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw FormatError(message, path_, node_.line);
  }

  void expect_attrs(const std::vector<std::string>& allowed) const {
    for (const auto& [k, v] : node_.attrs) {
      bool ok = false;
      for (const auto& name : allowed) ok = ok || name == k;
      if (!ok) fail("unknown attribute '" + k + "'");
    }
  }

  std::string require_attr(const std::string& name) const {
    const std::string* v = node_.attr(name);
    if (v == nullptr) fail("missing attribute '" + name + "'");
    return *v;
  }

  void expect_no_text() const {
    if (!node_.text.empty()) fail("unexpected character data");
  }

  void expect_no_children() const {
    if (!node_.children.empty()) {
      fail("unexpected element <" + node_.children.front().name + ">");
    }
  }

  StrictWalker child(size_t index) const {
    const XmlNode& c = node_.children[index];
    int nth = 0;
    for (size_t i = 0; i <= index; ++i) {
      if (node_.children[i].name == c.name) ++nth;
    }
    return StrictWalker(c, path_ + "/" + c.name + "[" + std::to_string(nth) + "]");
  }

  double attr_double(const std::string& name) const {
    double v = 0.0;
    std::string raw = require_attr(name);
    if (!try_parse_double(raw, v) || !std::isfinite(v)) {
      fail("attribute '" + name + "' is not a finite number: '" + raw + "'");
    }
    return v;
  }

  int64_t attr_id(const std::string& name) const {
    long long v = 0;
    std::string raw = require_attr(name);
    if (!try_parse_int(raw, v) || v <= 0) {
      fail("attribute '" + name + "' must be a positive integer: '" + raw + "'");
    }
    return v;
  }

  double text_double() const {
    expect_no_children();
    double v = 0.0;
    if (!try_parse_double(node_.text, v) || !std::isfinite(v)) {
      fail("expected a finite number, got '" + node_.text + "'");
    }
    return v;
  }

 private:
  const XmlNode& node_;
  std::string path_;
};

Point3 read_point(const StrictWalker& w) {
  w.expect_attrs({});
  w.expect_no_text();
  bool have_x = false, have_y = false, have_z = false;
  Point3 p;
  for (size_t i = 0; i < w.node().children.size(); ++i) {
    StrictWalker c = w.child(i);
    const std::string& name = c.node().name;
    c.expect_attrs({});
    if (name == "x") {
      if (have_x) c.fail("duplicate <x>");
      p.x = c.text_double();
      have_x = true;
    } else if (name == "y") {
      if (have_y) c.fail("duplicate <y>");
      p.y = c.text_double();
      have_y = true;
    } else if (name == "z") {
      if (have_z) c.fail("duplicate <z>");
      p.z = c.text_double();
      have_z = true;
    } else {
      c.fail("unknown element <" + name + ">");
    }
  }
  if (!have_x || !have_y || !have_z) w.fail("point needs <x>, <y>, and <z>");
  return p;
}

std::vector<Point3> read_bound(const StrictWalker& w) {
  w.expect_attrs({});
  w.expect_no_text();
  std::vector<Point3> pts;
  for (size_t i = 0; i < w.node().children.size(); ++i) {
    StrictWalker c = w.child(i);
    if (c.node().name != "point") c.fail("unknown element <" + c.node().name + ">");
    pts.push_back(read_point(c));
  }
  if (pts.size() < 2) w.fail("bound needs at least two points");
  return pts;
}

Lanelet read_lanelet(const StrictWalker& w) {
  w.expect_attrs({"id"});
  w.expect_no_text();
  const int64_t id = w.attr_id("id");

  std::optional<std::vector<Point3>> left, right;
  std::vector<int64_t> successors, predecessors;
  for (size_t i = 0; i < w.node().children.size(); ++i) {
    StrictWalker c = w.child(i);
    const std::string& name = c.node().name;
    if (name == "leftBound") {
      if (left) c.fail("duplicate <leftBound>");
      left = read_bound(c);
    } else if (name == "rightBound") {
      if (right) c.fail("duplicate <rightBound>");
      right = read_bound(c);
    } else if (name == "successor" || name == "predecessor") {
      c.expect_attrs({"ref"});
      c.expect_no_text();
      c.expect_no_children();
      (name == "successor" ? successors : predecessors).push_back(c.attr_id("ref"));
    } else {
      c.fail("unknown element <" + name + ">");
    }
  }
  if (!left) w.fail("missing <leftBound>");
  if (!right) w.fail("missing <rightBound>");

  try {
    return Lanelet{id, Polyline3(std::move(*left)), Polyline3(std::move(*right)),
                   std::move(successors), std::move(predecessors)};
  } catch (const ValidationError& e) {
    throw ValidationError("lanelet " + std::to_string(id) + ": " + e.what());
  }
}

}  // namespace

LaneletNetwork read_map(std::string_view xml_text) {
  const XmlNode root = xml_parse(xml_text);
  StrictWalker w(root, "/" + root.name);
  if (root.name != "laneletNetwork") w.fail("expected root element <laneletNetwork>");
  w.expect_attrs({});
  w.expect_no_text();

  std::vector<Lanelet> lanelets;
  for (size_t i = 0; i < root.children.size(); ++i) {
    StrictWalker c = w.child(i);
    if (c.node().name != "lanelet") c.fail("unknown element <" + c.node().name + ">");
    lanelets.push_back(read_lanelet(c));
  }
  return LaneletNetwork::from_lanelets(std::move(lanelets));
}

namespace {

void write_bound(std::string& out, const char* tag, const Polyline3& bound) {
  out += "    <";
  out += tag;
  out += ">\n";
  for (const Point3& p : bound.points()) {
    out += "      <point><x>" + format_double(p.x) + "</x><y>" + format_double(p.y) +
           "</y><z>" + format_double(p.z) + "</z></point>\n";
  }
  out += "    </";
  out += tag;
  out += ">\n";
}

}  // namespace

std::string write_map(const LaneletNetwork& network) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<laneletNetwork>\n";
  for (const auto& [id, l] : network.lanelets()) {
    out += "  <lanelet id=\"" + std::to_string(id) + "\">\n";
    write_bound(out, "leftBound", l.left);
    write_bound(out, "rightBound", l.right);
    for (int64_t ref : l.successors) {
      out += "    <successor ref=\"" + std::to_string(ref) + "\"/>\n";
    }
    for (int64_t ref : l.predecessors) {
      out += "    <predecessor ref=\"" + std::to_string(ref) + "\"/>\n";
    }
    out += "  </lanelet>\n";
  }
  out += "</laneletNetwork>\n";
  return out;
}

namespace {

PlanGeometry read_geometry(const StrictWalker& w) {
  w.expect_attrs({"s", "x", "y", "hdg", "length"});
  w.expect_no_text();
  PlanGeometry g;
  g.s0 = w.attr_double("s");
  g.x0 = w.attr_double("x");
  g.y0 = w.attr_double("y");
  g.hdg = w.attr_double("hdg");
  g.length = w.attr_double("length");
  if (!(g.length > 0.0)) w.fail("geometry length must be positive");

  if (w.node().children.size() != 1) w.fail("geometry needs exactly one <line/> or <arc/>");
  StrictWalker shape = w.child(0);
  shape.expect_no_text();
  shape.expect_no_children();
  if (shape.node().name == "line") {
    shape.expect_attrs({});
    g.kind = GeometryKind::kLine;
  } else if (shape.node().name == "arc") {
    shape.expect_attrs({"curvature"});
    g.kind = GeometryKind::kArc;
    g.curvature = shape.attr_double("curvature");
    if (g.curvature == 0.0) shape.fail("arc curvature must be nonzero");
  } else {
    shape.fail("unknown element <" + shape.node().name + ">");
  }
  return g;
}

ElevationPoly read_elevation(const StrictWalker& w) {
  w.expect_attrs({"s", "a", "b", "c", "d"});
  w.expect_no_text();
  w.expect_no_children();
  ElevationPoly e;
  e.s0 = w.attr_double("s");
  e.a = w.attr_double("a");
  e.b = w.attr_double("b");
  e.c = w.attr_double("c");
  e.d = w.attr_double("d");
  return e;
}

OpenDriveRoad read_road(const StrictWalker& w) {
  w.expect_attrs({"id", "length"});
  w.expect_no_text();
  OpenDriveRoad road;
  road.id = w.attr_id("id");
  road.length = w.attr_double("length");
  if (!(road.length > 0.0)) w.fail("road length must be positive");

  bool have_plan = false, have_width = false, have_elev = false, have_link = false;
  for (size_t i = 0; i < w.node().children.size(); ++i) {
    StrictWalker c = w.child(i);
    const std::string& name = c.node().name;
    if (name == "planView") {
      if (have_plan) c.fail("duplicate <planView>");
      have_plan = true;
      c.expect_attrs({});
      c.expect_no_text();
      for (size_t j = 0; j < c.node().children.size(); ++j) {
        StrictWalker g = c.child(j);
        if (g.node().name != "geometry") g.fail("unknown element <" + g.node().name + ">");
        road.plan.push_back(read_geometry(g));
      }
      if (road.plan.empty()) c.fail("planView needs at least one geometry");
      for (size_t j = 0; j < road.plan.size(); ++j) {
        if (j == 0 && road.plan[0].s0 != 0.0) c.fail("first geometry must start at s=0");
        if (j > 0 && road.plan[j].s0 <= road.plan[j - 1].s0) {
          c.fail("geometry s-offsets must be strictly increasing");
        }
      }
    } else if (name == "elevationProfile") {
      if (have_elev) c.fail("duplicate <elevationProfile>");
      have_elev = true;
      c.expect_attrs({});
      c.expect_no_text();
      for (size_t j = 0; j < c.node().children.size(); ++j) {
        StrictWalker e = c.child(j);
        if (e.node().name != "elevation") e.fail("unknown element <" + e.node().name + ">");
        road.elevations.push_back(read_elevation(e));
      }
      if (road.elevations.empty()) c.fail("elevationProfile needs at least one entry");
      for (size_t j = 0; j < road.elevations.size(); ++j) {
        if (j == 0 && road.elevations[0].s0 != 0.0) c.fail("first elevation must start at s=0");
        if (j > 0 && road.elevations[j].s0 <= road.elevations[j - 1].s0) {
          c.fail("elevation s-offsets must be strictly increasing");
        }
      }
    } else if (name == "link") {
      if (have_link) c.fail("duplicate <link>");
      have_link = true;
      c.expect_attrs({});
      c.expect_no_text();
      for (size_t j = 0; j < c.node().children.size(); ++j) {
        StrictWalker s = c.child(j);
        if (s.node().name != "successor") s.fail("unknown element <" + s.node().name + ">");
        if (road.successor_road_id) s.fail("duplicate <successor>");
        s.expect_attrs({"elementId"});
        s.expect_no_text();
        s.expect_no_children();
        road.successor_road_id = s.attr_id("elementId");
      }
    } else if (name == "laneWidth") {
      if (have_width) c.fail("duplicate <laneWidth>");
      have_width = true;
      c.expect_attrs({"value"});
      c.expect_no_text();
      c.expect_no_children();
      road.lane_width = c.attr_double("value");
      if (!(road.lane_width > 0.0)) c.fail("lane width must be positive");
    } else {
      c.fail("unknown element <" + name + ">");
    }
  }
  if (!have_plan) w.fail("missing <planView>");
  if (!have_elev) w.fail("missing <elevationProfile>");
  if (!have_width) w.fail("missing <laneWidth>");
  return road;
}

struct RefSample {
  Point3 point;
  double heading = 0.0;
};

RefSample sample_at(const OpenDriveRoad& road, double s) {
  // Active segment: the last one starting at or before s. A station beyond
  // the segment end means the plan view does not cover the road length.
  size_t gi = 0;
  for (size_t i = 0; i < road.plan.size(); ++i) {
    if (road.plan[i].s0 <= s + 1e-12) gi = i;
  }
  const PlanGeometry& g = road.plan[gi];
  const double u = s - g.s0;
  if (u > g.length + 1e-9) {
    throw ValidationError("road " + std::to_string(road.id) + ": station " + format_double(s) +
                          " is not covered by any plan geometry");
  }

  RefSample out;
  if (g.kind == GeometryKind::kLine) {
    out.point.x = g.x0 + u * std::cos(g.hdg);
    out.point.y = g.y0 + u * std::sin(g.hdg);
    out.heading = g.hdg;
  } else {
    const double k = g.curvature;
    out.point.x = g.x0 + (std::sin(g.hdg + k * u) - std::sin(g.hdg)) / k;
    out.point.y = g.y0 + (std::cos(g.hdg) - std::cos(g.hdg + k * u)) / k;
    out.heading = g.hdg + k * u;
  }

  size_t ei = 0;
  for (size_t i = 0; i < road.elevations.size(); ++i) {
    if (road.elevations[i].s0 <= s + 1e-12) ei = i;
  }
  out.point.z = road.elevations[ei].eval(s);
  return out;
}

std::vector<double> stations(const OpenDriveRoad& road, double ds) {
  if (!(ds > 0.0)) throw ValidationError("sampling step must be positive");
  std::vector<double> out;
  for (double s = 0.0; s < road.length; s += ds) out.push_back(s);
  // The final station is the exact road length; drop a regular station that
  // would leave a sub-resolution tail segment.
  if (!out.empty() && road.length - out.back() <= Polyline3::kMinSegmentXy) out.pop_back();
  out.push_back(road.length);
  return out;
}

}  // namespace

Polyline3 sample_reference_line(const OpenDriveRoad& road, double ds) {
  std::vector<Point3> pts;
  for (double s : stations(road, ds)) pts.push_back(sample_at(road, s).point);
  return Polyline3(std::move(pts));
}

std::vector<OpenDriveRoad> read_opendrive(std::string_view xml_text) {
  const XmlNode root = xml_parse(xml_text);
  StrictWalker w(root, "/" + root.name);
  if (root.name != "OpenDRIVE") w.fail("expected root element <OpenDRIVE>");
  w.expect_attrs({});
  w.expect_no_text();

  std::vector<OpenDriveRoad> roads;
  std::set<int64_t> ids;
  for (size_t i = 0; i < root.children.size(); ++i) {
    StrictWalker c = w.child(i);
    if (c.node().name != "road") c.fail("unknown element <" + c.node().name + ">");
    OpenDriveRoad road = read_road(c);
    if (!ids.insert(road.id).second) {
      c.fail("duplicate road id " + std::to_string(road.id));
    }
    roads.push_back(std::move(road));
  }
  return roads;
}

Lanelet convert(const OpenDriveRoad& road, double ds) {
  std::vector<Point3> left, right;
  const double half = road.lane_width / 2.0;
  for (double s : stations(road, ds)) {
    const RefSample ref = sample_at(road, s);
    const double nx = -std::sin(ref.heading);
    const double ny = std::cos(ref.heading);
    left.push_back({ref.point.x + half * nx, ref.point.y + half * ny, ref.point.z});
    right.push_back({ref.point.x - half * nx, ref.point.y - half * ny, ref.point.z});
  }
  Lanelet out{road.id, Polyline3(std::move(left)), Polyline3(std::move(right)), {}, {}};
  if (road.successor_road_id) out.successors.push_back(*road.successor_road_id);
  return out;
}

LaneletNetwork convert_document(const std::vector<OpenDriveRoad>& roads, double ds) {
  std::vector<Lanelet> lanelets;
  lanelets.reserve(roads.size());
  for (const OpenDriveRoad& road : roads) lanelets.push_back(convert(road, ds));
  return LaneletNetwork::with_derived_predecessors(std::move(lanelets));
}

}  // namespace mapverify
