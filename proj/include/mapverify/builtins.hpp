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
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "mapverify/config.hpp"
#include "mapverify/geometry.hpp"

namespace mapverify {

enum class PdlType { kLanelet, kNumber, kBoolean };

const char* pdl_type_name(PdlType type);

/// Typed runtime value flowing through rule and predicate evaluation.
struct Value {
  PdlType type = PdlType::kNumber;
  int64_t lanelet = 0;
  double number = 0.0;
  bool boolean = false;

  static Value of_lanelet(int64_t id);
  static Value of_number(double v);
  static Value of_boolean(bool b);
};

struct BuiltinSig {
  const char* name;
  std::vector<PdlType> params;
  PdlType result;
  const char* doc;
};

/// The fixed measurement vocabulary rules and predicates build on. Builtin
/// names are reserved: user predicates may not shadow them.
class BuiltinCatalog {
 public:
  static const BuiltinCatalog& standard();

  const BuiltinSig* find(const std::string& name) const;
  const std::vector<BuiltinSig>& all() const { return sigs_; }

  /// Plain-text signature list with the one-line docs, used verbatim as the
  /// catalog section of synthesis context.
  std::string render() const;

 private:
  explicit BuiltinCatalog(std::vector<BuiltinSig> sigs) : sigs_(std::move(sigs)) {}
  std::vector<BuiltinSig> sigs_;
};

/// One builtin observation made while falsifying a rule: the call with its
/// bound arguments rendered as text, and the numeric result (booleans as
/// 0/1).
struct WitnessEntry {
  std::string call;
  double value = 0.0;
};

/// Collects witness entries, keeping the first value per distinct call.
class WitnessRecorder {
 public:
  void record(std::string call, double value);
  const std::vector<WitnessEntry>& entries() const { return entries_; }

 private:
  std::vector<WitnessEntry> entries_;
  std::unordered_set<std::string> seen_;
};

/// Read-only measurement context over one network: centerlines are sampled
/// once up front, every query is a pure function of them, so instances are
/// safe to share across threads.
class GeometryContext {
 public:
  // Holds a reference to the network for its whole lifetime.
  GeometryContext(const LaneletNetwork& network, const EvalConfig& config);
  GeometryContext(LaneletNetwork&& network, const EvalConfig& config) = delete;

  const LaneletNetwork& network() const { return network_; }
  const EvalConfig& config() const { return config_; }

  const Polyline3& centerline_of(int64_t id) const;

  double grade_max(int64_t id) const;
  double elev_step(int64_t a, int64_t b) const;
  double min_clearance(int64_t a, int64_t b) const;
  double length(int64_t id) const;
  double start_z(int64_t id) const;
  double end_z(int64_t id) const;
  bool overlaps_xy(int64_t a, int64_t b) const;
  bool is_successor(int64_t a, int64_t b) const;

 private:
  /// Throws EvalError for ids outside the network (an engine bug upstream).
  const Polyline3& require(int64_t id) const;
  OverlapResult overlap(int64_t a, int64_t b) const;

  const LaneletNetwork& network_;
  EvalConfig config_;
  std::map<int64_t, Polyline3> centerlines_;
};

/// Dispatches one builtin call. Arguments must already match the signature
/// (the linker and type checker guarantee it); records a witness entry when
/// a recorder is given.
Value eval_builtin(const GeometryContext& ctx, const std::string& name,
                   std::span<const Value> args, WitnessRecorder* recorder);

/// "name(arg, ...)" with lanelet ids printed as integers.
std::string render_call(const std::string& name, std::span<const Value> args);

}  // namespace mapverify
