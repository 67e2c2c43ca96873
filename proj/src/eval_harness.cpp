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

#include "mapverify/eval_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>

#include "json.hpp"
#include "mapverify/map_io.hpp"

namespace mapverify {

CategoryMapping CategoryMapping::standard() {
  return CategoryMapping{{
      {DefectKind::kExcessiveSlope, "slope_limit"},
      {DefectKind::kAbruptStep, "elevation_continuity"},
      {DefectKind::kLowClearance, "vertical_clearance"},
  }};
}

const std::string& CategoryMapping::rule_for(DefectKind kind) const {
  for (const Row& row : rows) {
    if (row.kind == kind) return row.rule;
  }
  throw ValidationError(std::string("mapping: no rule mapped for defect '") +
                        defect_name(kind) + "'");
}

MetricsReport run_eval(const std::filesystem::path& corpus_dir, const LinkedRuleset& ruleset,
                       const CategoryMapping& mapping, const EvalConfig& config) {
  const Manifest manifest = read_manifest(corpus_dir);
  for (const CategoryMapping::Row& row : mapping.rows) {
    const bool known = std::any_of(ruleset.rules.begin(), ruleset.rules.end(),
                                   [&](const RuleDecl& r) { return r.name == row.rule; });
    if (!known) {
      throw ValidationError("mapping: rule '" + row.rule + "' is not in the ruleset");
    }
  }

  MetricsReport report;
  for (DefectKind kind : {DefectKind::kExcessiveSlope, DefectKind::kAbruptStep,
                          DefectKind::kLowClearance}) {
    report.categories.push_back({kind, mapping.rule_for(kind), 0, 0});
  }

  const int64_t total = static_cast<int64_t>(manifest.entries.size());
  std::vector<std::vector<std::string>> violated(manifest.entries.size());
  std::exception_ptr failure = nullptr;
  const auto started = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (int64_t i = 0; i < total; ++i) {
    try {
      const ManifestEntry& entry = manifest.entries[i];
      const LaneletNetwork network = read_map(read_file(corpus_dir / entry.file));
      const GeometryContext geometry(network, config);
      for (const RuleDecl& rule : ruleset.rules) {
        if (evaluate_rule(rule, ruleset.predicates, geometry).status ==
            RuleStatus::kViolated) {
          violated[i].push_back(rule.name);
        }
      }
    } catch (...) {
#pragma omp critical(mapverify_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  report.maps_total = static_cast<int>(total);
  for (int64_t i = 0; i < total; ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    if (entry.clean()) {
      ++report.clean_maps;
      if (!violated[i].empty()) ++report.false_positives;
      continue;
    }
    for (const InjectedDefect& defect : entry.defects) {
      CategoryMetrics& metrics = report.categories[static_cast<size_t>(defect.kind)];
      ++metrics.labeled;
      if (std::find(violated[i].begin(), violated[i].end(), metrics.rule) !=
          violated[i].end()) {
        ++metrics.detected;
      }
    }
  }
  return report;
}

bool metrics_pass(const MetricsReport& report) {
  for (const CategoryMetrics& metrics : report.categories) {
    if (metrics.defined() && metrics.detected < metrics.labeled) return false;
  }
  return report.false_positives == 0;
}

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["maps"] = report.maps_total;
  doc["clean_maps"] = report.clean_maps;
  doc["false_positives"] = report.false_positives;
  doc["categories"] = nlohmann::ordered_json::array();
  for (const CategoryMetrics& metrics : report.categories) {
    nlohmann::ordered_json row;
    row["label"] = defect_name(metrics.kind);
    row["rule"] = metrics.rule;
    row["labeled"] = metrics.labeled;
    row["detected"] = metrics.detected;
    if (metrics.defined()) {
      row["recall"] = metrics.recall();
    } else {
      row["recall"] = nullptr;
    }
    doc["categories"].push_back(std::move(row));
  }
  doc["pass"] = metrics_pass(report);
  return doc.dump(2) + "\n";
}

std::string metrics_table(const MetricsReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s  %-22s  %7s  %8s  %6s\n", "category", "rule",
                "labeled", "detected", "recall");
  out += line;
  for (const CategoryMetrics& metrics : report.categories) {
    char recall[16];
    if (metrics.defined()) {
      std::snprintf(recall, sizeof recall, "%.3f", metrics.recall());
    } else {
      std::snprintf(recall, sizeof recall, "n/a");
    }
    std::snprintf(line, sizeof line, "%-16s  %-22s  %7d  %8d  %6s\n",
                  defect_name(metrics.kind), metrics.rule.c_str(), metrics.labeled,
                  metrics.detected, recall);
    out += line;
  }
  std::snprintf(line, sizeof line,
                "maps: %d (%d clean), false positives: %d, runtime: %.2f s\n",
                report.maps_total, report.clean_maps, report.false_positives,
                report.runtime_seconds);
  out += line;
  out += std::string("result: ") + (metrics_pass(report) ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace mapverify
