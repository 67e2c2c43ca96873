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

#include <filesystem>
#include <string>
#include <vector>

#include "mapverify/config.hpp"
#include "mapverify/engine.hpp"
#include "mapverify/scenario_gen.hpp"

namespace mapverify {

// Corpus evaluation: runs a linked ruleset over every map of a generated
// corpus and scores detection per defect category at map level. A defect
// instance counts as detected iff the rule mapped to its category is
// violated on that map; a clean map counts as a false positive iff any rule
// is violated on it.

/// Which rule is expected to flag each defect kind.
struct CategoryMapping {
  struct Row {
    DefectKind kind = DefectKind::kExcessiveSlope;
    std::string rule;
  };
  std::vector<Row> rows;

  /// excessive_slope -> slope_limit, abrupt_step -> elevation_continuity,
  /// low_clearance -> vertical_clearance.
  static CategoryMapping standard();

  /// Throws ValidationError when the kind has no row.
  const std::string& rule_for(DefectKind kind) const;
};

struct CategoryMetrics {
  DefectKind kind = DefectKind::kExcessiveSlope;
  std::string rule;
  int labeled = 0;   // maps carrying this defect
  int detected = 0;  // of those, maps where the mapped rule is violated

  /// Recall is undefined for a category with no labeled maps.
  bool defined() const { return labeled > 0; }
  double recall() const { return labeled > 0 ? static_cast<double>(detected) / labeled : 0.0; }
};

struct MetricsReport {
  std::vector<CategoryMetrics> categories;  // one per DefectKind, in kind order
  int maps_total = 0;
  int clean_maps = 0;
  int false_positives = 0;      // clean maps with at least one violated rule
  double runtime_seconds = 0.0;  // wall clock; shown in the table, never in the JSON
};

/// Evaluates every map listed in `<corpus_dir>/manifest`. Maps run in
/// parallel when the config allows; the metrics are identical either way.
/// Throws when the mapping names a rule missing from the ruleset or when a
/// map file cannot be read.
MetricsReport run_eval(const std::filesystem::path& corpus_dir, const LinkedRuleset& ruleset,
                       const CategoryMapping& mapping, const EvalConfig& config);

/// True iff every defined recall is 1 and there are no false positives.
bool metrics_pass(const MetricsReport& report);

/// Stable machine-readable rendering; excludes the runtime so reruns over
/// the same input are byte-identical.
std::string metrics_to_json(const MetricsReport& report);

/// Human-readable table, runtime included.
std::string metrics_table(const MetricsReport& report);

}  // namespace mapverify
