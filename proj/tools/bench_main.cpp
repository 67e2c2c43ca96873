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

// Compares the serial reference kernels against the parallel ones: the pair
// scan at growing sample counts, then a full corpus evaluation. Results must
// match exactly; only the wall clock may differ.

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "mapverify/engine.hpp"
#include "mapverify/eval_harness.hpp"
#include "mapverify/scenario_gen.hpp"

namespace fs = std::filesystem;
using namespace mapverify;

namespace {

template <typename F>
double best_ms(int reps, F&& body) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main() {
  ScenarioSpec spec;
  spec.layout = MapTemplate::kBridgeOverRoad;
  spec.seed = 7;
  const GeneratedMap made = generate(spec);
  const Lanelet& road = made.network.at(1);
  const Lanelet& bridge = made.network.at(2);

  std::printf("pair-scan kernel (crossing road and bridge, radius 1.5 m)\n");
  for (const int n : {256, 1024, 2048}) {
    const std::vector<Point3> a = centerline(road, n).points();
    const std::vector<Point3> b = centerline(bridge, n).points();
    OverlapResult serial_result{}, parallel_result{};
    const double serial_ms = best_ms(5, [&] { serial_result = overlap_scan_serial(a, b, 1.5); });
    const double parallel_ms =
        best_ms(5, [&] { parallel_result = overlap_scan_parallel(a, b, 1.5); });
    const bool match = serial_result.overlaps == parallel_result.overlaps &&
                       serial_result.min_gap == parallel_result.min_gap;
    std::printf("  n=%-5d serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx   %s\n", n,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                match ? "results match" : "RESULTS DIFFER");
  }

  const fs::path corpus = fs::temp_directory_path() / "mapverify_bench_corpus";
  build_corpus(corpus, 42, 10, 30, true);
  const fs::path context = fs::path(MAPVERIFY_DATA_DIR) / "context";
  const LinkedRuleset ruleset = load_ruleset(read_file(context / "ruleset.rules"),
                                             read_file(context / "predicates.pdl"));
  EvalConfig config;
  config.parallel = false;
  MetricsReport serial_metrics;
  const double serial_s =
      best_ms(3, [&] { serial_metrics = run_eval(corpus, ruleset, CategoryMapping::standard(),
                                                 config); }) /
      1000.0;
  config.parallel = true;
  MetricsReport parallel_metrics;
  const double parallel_s =
      best_ms(3, [&] { parallel_metrics = run_eval(corpus, ruleset,
                                                   CategoryMapping::standard(), config); }) /
      1000.0;
  const bool match = metrics_to_json(serial_metrics) == metrics_to_json(parallel_metrics);
  std::printf("corpus eval (40 maps, default ruleset)\n");
  std::printf("  serial %6.2f s   parallel %6.2f s   speedup %5.2fx   %s\n", serial_s,
              parallel_s, serial_s / parallel_s, match ? "results match" : "RESULTS DIFFER");
  fs::remove_all(corpus);
  return match ? 0 : 1;
}
