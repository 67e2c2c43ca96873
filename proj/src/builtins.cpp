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

#include "mapverify/builtins.hpp"

#include <algorithm>
#include <cmath>

#include "mapverify/util.hpp"

namespace mapverify {

const char* pdl_type_name(PdlType type) {
  switch (type) {
    case PdlType::kLanelet: return "lanelet";
    case PdlType::kNumber: return "number";
    case PdlType::kBoolean: return "boolean";
  }
  return "?";
}

Value Value::of_lanelet(int64_t id) {
  Value v;
  v.type = PdlType::kLanelet;
  v.lanelet = id;
  return v;
}

Value Value::of_number(double n) {
  Value v;
  v.type = PdlType::kNumber;
  v.number = n;
  return v;
}

Value Value::of_boolean(bool b) {
  Value v;
  v.type = PdlType::kBoolean;
  v.boolean = b;
  return v;
}

const BuiltinCatalog& BuiltinCatalog::standard() {
  static const BuiltinCatalog catalog({
      {"grade_max", {PdlType::kLanelet}, PdlType::kNumber,
       "largest |dz| / xy-run over the centerline segments"},
      {"elev_step", {PdlType::kLanelet, PdlType::kLanelet}, PdlType::kNumber,
       "|end elevation of a's centerline - start elevation of b's centerline|"},
      {"min_clearance", {PdlType::kLanelet, PdlType::kLanelet}, PdlType::kNumber,
       "smallest |dz| over xy-overlapping centerline samples; +infinity without overlap"},
      {"length", {PdlType::kLanelet}, PdlType::kNumber,
       "xy arc length of the sampled centerline"},
      {"start_z", {PdlType::kLanelet}, PdlType::kNumber,
       "elevation at the start of the centerline"},
      {"end_z", {PdlType::kLanelet}, PdlType::kNumber,
       "elevation at the end of the centerline"},
      {"overlaps_xy", {PdlType::kLanelet, PdlType::kLanelet}, PdlType::kBoolean,
       "whether any centerline samples come within the overlap radius in plan view"},
      {"is_successor", {PdlType::kLanelet, PdlType::kLanelet}, PdlType::kBoolean,
       "whether b is listed as a successor of a"},
  });
  return catalog;
}

const BuiltinSig* BuiltinCatalog::find(const std::string& name) const {
  for (const BuiltinSig& sig : sigs_) {
    if (name == sig.name) return &sig;
  }
  return nullptr;
}

std::string BuiltinCatalog::render() const {
  std::string out = "Builtin functions:\n";
  for (const BuiltinSig& sig : sigs_) {
    out += "  ";
    out += sig.name;
    out += '(';
    for (size_t i = 0; i < sig.params.size(); ++i) {
      if (i > 0) out += ", ";
      out += pdl_type_name(sig.params[i]);
    }
    out += ") -> ";
    out += pdl_type_name(sig.result);
    out += "  -- ";
    out += sig.doc;
    out += '\n';
  }
  return out;
}

void WitnessRecorder::record(std::string call, double value) {
  if (seen_.insert(call).second) {
    entries_.push_back({std::move(call), value});
  }
}

GeometryContext::GeometryContext(const LaneletNetwork& network, const EvalConfig& config)
    : network_(network), config_(config) {
  config_.validate();
  for (const auto& [id, lanelet] : network_.lanelets()) {
    centerlines_.emplace(id, centerline(lanelet, config_.samples_per_centerline));
  }
}

const Polyline3& GeometryContext::require(int64_t id) const {
  auto it = centerlines_.find(id);
  if (it == centerlines_.end()) {
    throw EvalError("unknown lanelet id " + std::to_string(id) + " in evaluation");
  }
  return it->second;
}

const Polyline3& GeometryContext::centerline_of(int64_t id) const { return require(id); }

double GeometryContext::grade_max(int64_t id) const { return max_abs_grade(require(id)); }

double GeometryContext::elev_step(int64_t a, int64_t b) const {
  return std::abs(require(a).back().z - require(b).front().z);
}

OverlapResult GeometryContext::overlap(int64_t a, int64_t b) const {
  // A lanelet trivially overlaps itself at zero gap; keeping the diagonal
  // total lets rules quantify two variables over L without special cases.
  if (a == b) {
    require(a);
    return {true, 0.0};
  }
  return overlap_scan_serial(require(a).points(), require(b).points(), config_.overlap_radius);
}

double GeometryContext::min_clearance(int64_t a, int64_t b) const {
  return overlap(a, b).min_gap;
}

bool GeometryContext::overlaps_xy(int64_t a, int64_t b) const { return overlap(a, b).overlaps; }

double GeometryContext::length(int64_t id) const { return require(id).xy_length(); }

double GeometryContext::start_z(int64_t id) const { return require(id).front().z; }

double GeometryContext::end_z(int64_t id) const { return require(id).back().z; }

bool GeometryContext::is_successor(int64_t a, int64_t b) const {
  require(a);
  require(b);
  const auto& succs = network_.at(a).successors;
  return std::find(succs.begin(), succs.end(), b) != succs.end();
}

std::string render_call(const std::string& name, std::span<const Value> args) {
  std::string out = name;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    switch (args[i].type) {
      case PdlType::kLanelet:
        out += std::to_string(args[i].lanelet);
        break;
      case PdlType::kNumber:
        out += format_double(args[i].number);
        break;
      case PdlType::kBoolean:
        out += args[i].boolean ? "true" : "false";
        break;
    }
  }
  out += ')';
  return out;
}

Value eval_builtin(const GeometryContext& ctx, const std::string& name,
                   std::span<const Value> args, WitnessRecorder* recorder) {
  auto lane = [&](size_t i) { return args[i].lanelet; };
  Value out;
  if (name == "grade_max") {
    out = Value::of_number(ctx.grade_max(lane(0)));
  } else if (name == "elev_step") {
    out = Value::of_number(ctx.elev_step(lane(0), lane(1)));
  } else if (name == "min_clearance") {
    out = Value::of_number(ctx.min_clearance(lane(0), lane(1)));
  } else if (name == "length") {
    out = Value::of_number(ctx.length(lane(0)));
  } else if (name == "start_z") {
    out = Value::of_number(ctx.start_z(lane(0)));
  } else if (name == "end_z") {
    out = Value::of_number(ctx.end_z(lane(0)));
  } else if (name == "overlaps_xy") {
    out = Value::of_boolean(ctx.overlaps_xy(lane(0), lane(1)));
  } else if (name == "is_successor") {
    out = Value::of_boolean(ctx.is_successor(lane(0), lane(1)));
  } else {
    throw EvalError("unknown builtin '" + name + "'");
  }
  if (recorder != nullptr) {
    const double numeric = out.type == PdlType::kBoolean ? (out.boolean ? 1.0 : 0.0) : out.number;
    recorder->record(render_call(name, args), numeric);
  }
  return out;
}

}  // namespace mapverify
