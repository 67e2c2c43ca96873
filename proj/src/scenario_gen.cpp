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

#include "mapverify/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iterator>
#include <utility>

#include "json.hpp"
#include "mapverify/map_io.hpp"
#include "mapverify/util.hpp"

namespace mapverify {

namespace fs = std::filesystem;

namespace {

constexpr double kSegmentLength = 30.0;
constexpr double kVertexSpacing = 5.0;
constexpr int kVerticesPerSegment = 7;
constexpr double kHalfWidth = 2.0;
constexpr double kCrossingLength = 60.0;  // road and bridge extent in the bridge layout
constexpr int kRampSegments = 3;

// Magnitude ranges. Clean values sit well inside the default thresholds
// (grade 0.15, step 0.05 m, clearance 4.5 m / at-grade 1.0 m) and injected
// values sit well beyond them, so no sampling choice can blur a verdict.
constexpr double kRampGradeLo = 0.06, kRampGradeHi = 0.10;
constexpr double kCleanGapLo = 6.0, kCleanGapHi = 8.0;
constexpr double kSlopeLo = 0.20, kSlopeHi = 0.35;
constexpr double kStepLo = 0.20, kStepHi = 1.00;
constexpr double kLowGapLo = 2.0, kLowGapHi = 3.5;

struct Placement {
  double heading = 0.0;
  double ox = 0.0;
  double oy = 0.0;
};

/// Mutable precursor of a Lanelet; defects edit these before the immutable
/// polylines are built.
struct LaneletDraft {
  int64_t id = 0;
  std::vector<Point3> left;
  std::vector<Point3> right;
  std::vector<int64_t> successors;
};

LaneletDraft straight_draft(int64_t id, double ox, double oy, double heading, double s0,
                            double length, double z0, double grade) {
  const double dx = std::cos(heading), dy = std::sin(heading);
  const double nx = -dy, ny = dx;
  LaneletDraft draft;
  draft.id = id;
  const int vertices = static_cast<int>(std::lround(length / kVertexSpacing)) + 1;
  for (int v = 0; v < vertices; ++v) {
    const double s = s0 + v * kVertexSpacing;
    const double cx = ox + dx * s, cy = oy + dy * s;
    const double z = z0 + grade * s;
    draft.left.push_back({cx + nx * kHalfWidth, cy + ny * kHalfWidth, z});
    draft.right.push_back({cx - nx * kHalfWidth, cy - ny * kHalfWidth, z});
  }
  return draft;
}

std::vector<LaneletDraft> make_chain(int segments, const Placement& place, double grade) {
  std::vector<LaneletDraft> drafts;
  for (int seg = 0; seg < segments; ++seg) {
    LaneletDraft draft = straight_draft(seg + 1, place.ox, place.oy, place.heading,
                                        seg * kSegmentLength, kSegmentLength, 0.0, grade);
    if (seg + 1 < segments) draft.successors.push_back(seg + 2);
    drafts.push_back(std::move(draft));
  }
  return drafts;
}

std::vector<LaneletDraft> make_bridge(const Placement& place, double gap) {
  std::vector<LaneletDraft> drafts;
  drafts.push_back(
      straight_draft(1, place.ox, place.oy, place.heading, 0.0, kCrossingLength, 0.0, 0.0));
  // The bridge runs perpendicular to the road and crosses it at mid extent.
  const double dx = std::cos(place.heading), dy = std::sin(place.heading);
  const double mid = kCrossingLength / 2.0;
  const double cx = place.ox + dx * mid, cy = place.oy + dy * mid;
  drafts.push_back(straight_draft(2, cx, cy, place.heading + std::acos(-1.0) / 2.0, -mid,
                                  kCrossingLength, gap, 0.0));
  return drafts;
}

/// Raises one interior vertex so the steeper flank of the bump has grade
/// exactly `g`; the lanelet endpoints stay put, so boundary steps and the
/// neighbors are untouched.
void inject_slope(std::vector<LaneletDraft>& drafts, Rng& rng, double base_grade,
                  GroundTruth& truth) {
  LaneletDraft& draft = drafts[rng.below(drafts.size())];
  const size_t site = 1 + rng.below(kVerticesPerSegment - 2);
  const double g = rng.uniform(kSlopeLo, kSlopeHi);
  const double lift = (g - base_grade) * kVertexSpacing;
  draft.left[site].z += lift;
  draft.right[site].z += lift;
  truth.defects.push_back({DefectKind::kExcessiveSlope, g});
}

/// Lifts every lanelet past one junction rigidly by `s`: grades inside each
/// lanelet are unchanged and exactly one boundary step of size `s` appears.
void inject_step(std::vector<LaneletDraft>& drafts, Rng& rng, GroundTruth& truth) {
  const size_t junction = rng.below(drafts.size() - 1);
  const double s = rng.uniform(kStepLo, kStepHi);
  for (size_t i = junction + 1; i < drafts.size(); ++i) {
    for (Point3& p : drafts[i].left) p.z += s;
    for (Point3& p : drafts[i].right) p.z += s;
  }
  truth.defects.push_back({DefectKind::kAbruptStep, s});
}

}  // namespace

const char* template_name(MapTemplate layout) {
  switch (layout) {
    case MapTemplate::kChain: return "chain";
    case MapTemplate::kRamp: return "ramp";
    case MapTemplate::kBridgeOverRoad: return "bridge";
  }
  return "?";
}

MapTemplate template_from_name(const std::string& name) {
  if (name == "chain") return MapTemplate::kChain;
  if (name == "ramp") return MapTemplate::kRamp;
  if (name == "bridge") return MapTemplate::kBridgeOverRoad;
  throw ValidationError("unknown template '" + name + "'");
}

const char* defect_name(DefectKind kind) {
  switch (kind) {
    case DefectKind::kExcessiveSlope: return "excessive_slope";
    case DefectKind::kAbruptStep: return "abrupt_step";
    case DefectKind::kLowClearance: return "low_clearance";
  }
  return "?";
}

DefectKind defect_from_name(const std::string& name) {
  if (name == "excessive_slope") return DefectKind::kExcessiveSlope;
  if (name == "abrupt_step") return DefectKind::kAbruptStep;
  if (name == "low_clearance") return DefectKind::kLowClearance;
  throw ValidationError("unknown defect '" + name + "'");
}

void validate_spec(const ScenarioSpec& spec) {
  if (spec.defects.size() > 2) {
    throw ValidationError("scenario: at most two defects per map, got " +
                          std::to_string(spec.defects.size()));
  }
  for (size_t i = 0; i < spec.defects.size(); ++i) {
    for (size_t j = i + 1; j < spec.defects.size(); ++j) {
      if (spec.defects[i] == spec.defects[j]) {
        throw ValidationError(std::string("scenario: duplicate defect '") +
                              defect_name(spec.defects[i]) + "'");
      }
    }
  }
  const bool along_road =
      spec.layout == MapTemplate::kChain || spec.layout == MapTemplate::kRamp;
  for (DefectKind kind : spec.defects) {
    if (kind == DefectKind::kLowClearance && spec.layout != MapTemplate::kBridgeOverRoad) {
      throw ValidationError("scenario: low_clearance needs the bridge layout, not " +
                            std::string(template_name(spec.layout)));
    }
    if (kind != DefectKind::kLowClearance && !along_road) {
      throw ValidationError(std::string("scenario: ") + defect_name(kind) +
                            " needs a chain or ramp layout, not " +
                            template_name(spec.layout));
    }
  }
  if (spec.layout == MapTemplate::kChain &&
      (spec.chain_length < 2 || spec.chain_length > 4)) {
    throw ValidationError("scenario: chain length must be between 2 and 4, got " +
                          std::to_string(spec.chain_length));
  }
}

GeneratedMap generate(const ScenarioSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  const double pi = std::acos(-1.0);
  Placement place;
  place.heading = rng.uniform(0.0, 2.0 * pi);
  place.ox = rng.uniform(-200.0, 200.0);
  place.oy = rng.uniform(-200.0, 200.0);

  auto has = [&](DefectKind kind) {
    for (DefectKind d : spec.defects) {
      if (d == kind) return true;
    }
    return false;
  };

  GroundTruth truth;
  truth.layout = spec.layout;
  truth.seed = spec.seed;

  std::vector<LaneletDraft> drafts;
  double base_grade = 0.0;
  switch (spec.layout) {
    case MapTemplate::kChain:
      drafts = make_chain(spec.chain_length, place, 0.0);
      break;
    case MapTemplate::kRamp:
      base_grade = rng.uniform(kRampGradeLo, kRampGradeHi);
      drafts = make_chain(kRampSegments, place, base_grade);
      break;
    case MapTemplate::kBridgeOverRoad: {
      const bool low = has(DefectKind::kLowClearance);
      const double gap =
          low ? rng.uniform(kLowGapLo, kLowGapHi) : rng.uniform(kCleanGapLo, kCleanGapHi);
      drafts = make_bridge(place, gap);
      if (low) truth.defects.push_back({DefectKind::kLowClearance, gap});
      break;
    }
  }
  if (has(DefectKind::kExcessiveSlope)) inject_slope(drafts, rng, base_grade, truth);
  if (has(DefectKind::kAbruptStep)) inject_step(drafts, rng, truth);
  std::sort(truth.defects.begin(), truth.defects.end(),
            [](const InjectedDefect& a, const InjectedDefect& b) { return a.kind < b.kind; });
  truth.lanelet_count = static_cast<int>(drafts.size());

  std::vector<Lanelet> lanelets;
  lanelets.reserve(drafts.size());
  for (LaneletDraft& draft : drafts) {
    lanelets.push_back(Lanelet{draft.id, Polyline3(std::move(draft.left)),
                               Polyline3(std::move(draft.right)),
                               std::move(draft.successors), {}});
  }
  return GeneratedMap{LaneletNetwork::with_derived_predecessors(std::move(lanelets)),
                      std::move(truth)};
}

std::string manifest_to_json(const Manifest& manifest) {
  nlohmann::ordered_json doc;
  doc["seed"] = manifest.seed;
  doc["maps"] = nlohmann::ordered_json::array();
  for (const ManifestEntry& entry : manifest.entries) {
    nlohmann::ordered_json row;
    row["id"] = entry.id;
    row["file"] = entry.file;
    row["template"] = template_name(entry.layout);
    row["lanelets"] = entry.lanelet_count;
    row["seed"] = entry.seed;
    row["labels"] = nlohmann::ordered_json::array();
    row["magnitudes"] = nlohmann::ordered_json::object();
    for (const InjectedDefect& defect : entry.defects) {
      row["labels"].push_back(defect_name(defect.kind));
      row["magnitudes"][defect_name(defect.kind)] = defect.magnitude;
    }
    doc["maps"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

Manifest manifest_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("manifest: ") + e.what());
  }
  auto bad = [](const std::string& what) {
    return ValidationError("manifest: " + what);
  };
  if (!doc.is_object() || !doc.contains("seed") || !doc.contains("maps") ||
      !doc["maps"].is_array()) {
    throw bad("expected an object with 'seed' and a 'maps' array");
  }
  Manifest manifest;
  manifest.seed = doc["seed"].get<uint64_t>();
  for (const auto& row : doc["maps"]) {
    ManifestEntry entry;
    for (const char* key : {"id", "file", "template"}) {
      if (!row.contains(key) || !row[key].is_string()) {
        throw bad(std::string("map entry needs a string field '") + key + "'");
      }
    }
    entry.id = row["id"].get<std::string>();
    entry.file = row["file"].get<std::string>();
    entry.layout = template_from_name(row["template"].get<std::string>());
    if (!row.contains("lanelets") || !row.contains("seed") || !row.contains("labels") ||
        !row["labels"].is_array() || !row.contains("magnitudes")) {
      throw bad("map entry '" + entry.id + "' is missing fields");
    }
    entry.lanelet_count = row["lanelets"].get<int>();
    entry.seed = row["seed"].get<uint64_t>();
    for (const auto& label : row["labels"]) {
      const DefectKind kind = defect_from_name(label.get<std::string>());
      const auto& magnitudes = row["magnitudes"];
      if (!magnitudes.contains(defect_name(kind))) {
        throw bad("map entry '" + entry.id + "' lacks a magnitude for '" +
                  defect_name(kind) + "'");
      }
      entry.defects.push_back({kind, magnitudes[defect_name(kind)].get<double>()});
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

Manifest read_manifest(const fs::path& corpus_dir) {
  return manifest_from_json(read_file(corpus_dir / "manifest"));
}

Manifest build_corpus(const fs::path& out_dir, uint64_t seed, int n_clean, int n_defective,
                      bool parallel) {
  if (n_clean < 0 || n_defective < 0) {
    throw ValidationError("corpus: map counts must be nonnegative");
  }
  const Rng corpus_rng(seed);
  // Selection streams live above 2^32 so they never collide with the
  // per-map streams indexed by position.
  constexpr uint64_t kSelectStream = uint64_t(1) << 32;

  std::vector<ScenarioSpec> specs;
  Rng pick = corpus_rng.split(kSelectStream);
  for (int i = 0; i < n_clean; ++i) {
    ScenarioSpec spec;
    spec.layout = static_cast<MapTemplate>(pick.below(3));
    if (spec.layout == MapTemplate::kChain) {
      spec.chain_length = 2 + static_cast<int>(pick.below(3));
    }
    specs.push_back(std::move(spec));
  }

  using Defects = std::vector<DefectKind>;
  static const std::pair<MapTemplate, Defects> combos[] = {
      {MapTemplate::kChain, {DefectKind::kExcessiveSlope}},
      {MapTemplate::kChain, {DefectKind::kAbruptStep}},
      {MapTemplate::kChain, {DefectKind::kExcessiveSlope, DefectKind::kAbruptStep}},
      {MapTemplate::kRamp, {DefectKind::kExcessiveSlope}},
      {MapTemplate::kRamp, {DefectKind::kAbruptStep}},
      {MapTemplate::kRamp, {DefectKind::kExcessiveSlope, DefectKind::kAbruptStep}},
      {MapTemplate::kBridgeOverRoad, {DefectKind::kLowClearance}},
  };
  const int needed = std::min(5, n_defective / 3);
  for (uint64_t attempt = 0;; ++attempt) {
    if (attempt == 10000) {
      throw ValidationError("corpus: could not satisfy the per-defect floor");
    }
    Rng draw = corpus_rng.split(kSelectStream + 1 + attempt);
    std::vector<ScenarioSpec> batch;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n_defective; ++i) {
      const auto& combo = combos[draw.below(std::size(combos))];
      ScenarioSpec spec;
      spec.layout = combo.first;
      spec.defects = combo.second;
      if (spec.layout == MapTemplate::kChain) {
        spec.chain_length = 2 + static_cast<int>(draw.below(3));
      }
      for (DefectKind kind : spec.defects) ++counts[static_cast<int>(kind)];
      batch.push_back(std::move(spec));
    }
    if (counts[0] >= needed && counts[1] >= needed && counts[2] >= needed) {
      specs.insert(specs.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
      break;
    }
  }

  const int64_t total = static_cast<int64_t>(specs.size());
  for (int64_t i = 0; i < total; ++i) {
    specs[i].seed = corpus_rng.split(static_cast<uint64_t>(i)).next_u64();
  }

  std::vector<GroundTruth> truths(total);
  std::vector<std::string> xmls(total);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t i = 0; i < total; ++i) {
    try {
      GeneratedMap made = generate(specs[i]);
      xmls[i] = write_map(made.network);
      truths[i] = std::move(made.truth);
    } catch (...) {
#pragma omp critical(mapverify_corpus_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Manifest manifest;
  manifest.seed = seed;
  for (int64_t i = 0; i < total; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "map_%03d", static_cast<int>(i));
    ManifestEntry entry;
    entry.id = id;
    entry.file = std::string("maps/") + id + ".xml";
    entry.layout = truths[i].layout;
    entry.lanelet_count = truths[i].lanelet_count;
    entry.defects = truths[i].defects;
    entry.seed = specs[i].seed;
    atomic_write_file(out_dir / "maps" / (entry.id + ".xml"), xmls[i]);
    manifest.entries.push_back(std::move(entry));
  }
  atomic_write_file(out_dir / "manifest", manifest_to_json(manifest));
  return manifest;
}

}  // namespace mapverify
