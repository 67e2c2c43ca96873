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

#include <string>
#include <string_view>

namespace mapverify {

/// Evaluation parameters plus the threshold bundle the shipped ruleset uses
/// as its literals. stack_eps is the vertical band treated as at-grade when
/// two lanelets overlap in plan view; min_clearance is the smallest legal
/// stacked gap, so stack_eps < min_clearance always.
struct EvalConfig {
  int samples_per_centerline = 64;
  double overlap_radius = 1.5;

  double max_grade = 0.15;
  double max_step = 0.05;
  double stack_eps = 1.0;
  double min_clearance = 4.5;

  /// Evaluate independent bindings/maps on multiple threads. Reports are
  /// identical either way; this is not part of the persisted config.
  bool parallel = true;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

/// Strict JSON object with the six persisted fields; absent fields keep
/// defaults, unknown fields are errors.
EvalConfig load_config(std::string_view json_text);
std::string save_config(const EvalConfig& config);

}  // namespace mapverify
