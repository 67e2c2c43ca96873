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
#include <filesystem>
#include <string>
#include <vector>

#include "mapverify/geometry.hpp"

namespace mapverify {

// Seeded generator of synthetic lanelet networks with injectable elevation
// defects and a ground-truth manifest. Clean templates satisfy the default
// ruleset at default thresholds; injected defects land with a wide margin
// beyond the thresholds, so detection is deterministic rather than
// statistical.

/// Road layouts the generator can build.
enum class MapTemplate {
  kChain,           // straight level road split into 2..4 lanelets
  kRamp,            // three-lanelet road climbing at a mild constant grade
  kBridgeOverRoad,  // level road crossed by an elevated perpendicular road
};

const char* template_name(MapTemplate layout);
MapTemplate template_from_name(const std::string& name);

/// Elevation defects and the rules that catch them at default thresholds:
///   kExcessiveSlope  interior bump with max grade in [0.20, 0.35]
///                    (limit 0.15)            -> slope_limit
///   kAbruptStep      rigid lift of the downstream lanelets by
///                    [0.20, 1.00) m (limit 0.05)  -> elevation_continuity
///   kLowClearance    bridge gap shrunk to [2.0, 3.5) m
///                    (legal >= 4.5, at-grade <= 1.0) -> vertical_clearance
enum class DefectKind { kExcessiveSlope, kAbruptStep, kLowClearance };

const char* defect_name(DefectKind kind);
DefectKind defect_from_name(const std::string& name);

/// What to build. Slope and step defects need a road with along-track
/// extent (chain or ramp); low clearance needs the bridge layout. A spec
/// carries at most two defects, at most one of each kind.
struct ScenarioSpec {
  uint64_t seed = 0;
  MapTemplate layout = MapTemplate::kChain;
  int chain_length = 3;  // lanelets per chain, 2..4; ignored otherwise
  std::vector<DefectKind> defects;
};

/// Throws ValidationError on an inapplicable defect for the layout, a
/// duplicate defect, more than two defects, or a chain length outside 2..4.
void validate_spec(const ScenarioSpec& spec);

struct InjectedDefect {
  DefectKind kind = DefectKind::kExcessiveSlope;
  double magnitude = 0.0;  // grade for slope, meters for step and clearance
};

/// Label record for one generated map; `id` is assigned by the corpus
/// builder and stays empty for standalone generate() calls.
struct GroundTruth {
  std::string id;
  MapTemplate layout = MapTemplate::kChain;
  int lanelet_count = 0;
  std::vector<InjectedDefect> defects;  // in DefectKind order
  uint64_t seed = 0;
};

struct GeneratedMap {
  LaneletNetwork network;
  GroundTruth truth;
};

/// Builds the network for a spec. Pure: the same spec always yields the
/// same network and truth, bit for bit.
GeneratedMap generate(const ScenarioSpec& spec);

/// One manifest row; `file` is relative to the corpus root.
struct ManifestEntry {
  std::string id;
  std::string file;
  MapTemplate layout = MapTemplate::kChain;
  int lanelet_count = 0;
  std::vector<InjectedDefect> defects;
  uint64_t seed = 0;

  bool clean() const { return defects.empty(); }
};

struct Manifest {
  uint64_t seed = 0;
  std::vector<ManifestEntry> entries;
};

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(std::string_view json_text);
Manifest read_manifest(const std::filesystem::path& corpus_dir);

/// Writes `n_clean + n_defective` maps under `<out_dir>/maps/<id>.xml` plus
/// one `<out_dir>/manifest`, and returns the manifest. Clean maps sample
/// the three layouts uniformly; defective maps sample uniformly over the
/// seven applicable (layout, defect set) combinations, redrawing the whole
/// batch deterministically until every defect kind appears at least
/// min(5, n_defective / 3) times. Maps may be generated in parallel; the
/// output is byte-identical for a given seed either way.
Manifest build_corpus(const std::filesystem::path& out_dir, uint64_t seed, int n_clean,
                      int n_defective, bool parallel = true);

}  // namespace mapverify
