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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "mapverify/builtins.hpp"
#include "mapverify/config.hpp"
#include "mapverify/engine.hpp"
#include "mapverify/map_io.hpp"
#include "mapverify/util.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mapverify;
using mapverify::testing::make_straight;
using mapverify::testing::read_data;

namespace {

const char* kSlopeRule = "rule slope_limit: forall l in L . is_grade_within_limit(l, 0.15);";
const char* kSlopePred =
    "pred is_grade_within_limit(l: lanelet, g: number) := grade_max(l) <= g;";

LaneletNetwork two_grades() {
  // Lanelet 1 at grade 0.10, lanelet 2 at grade 0.30.
  std::vector<Lanelet> lanelets;
  lanelets.push_back(make_straight(1, 0, 10, 0, 0.0, 1.0));
  lanelets.push_back(make_straight(2, 0, 10, 8, 0.0, 3.0));
  return LaneletNetwork::from_lanelets(std::move(lanelets));
}

using BindingSet = std::vector<std::vector<std::pair<std::string, int64_t>>>;

BindingSet binding_set(const RuleResult& result) {
  BindingSet out;
  for (const Violation& v : result.violations) out.push_back(v.binding);
  std::sort(out.begin(), out.end());
  return out;
}

BindingSet binding_set(const oracle::NaiveOutcome& outcome) {
  BindingSet out = outcome.bindings;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("the default registry links cleanly") {
  const LinkedRuleset linked =
      load_ruleset(read_data("context/ruleset.rules"), read_data("context/predicates.pdl"));
  CHECK(linked.rules.size() == 3);
  CHECK(linked.predicates.defs().size() == 3);
}

TEST_CASE("a misspelled predicate gets a suggestion") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule r: forall l in L . is_grade_within_limits(l, 0.15);");
  PredicateTable table;
  REQUIRE(typecheck_predicates(parse_predicates(kSlopePred), table).empty());
  const LinkResult result = link_ruleset(rules, std::move(table));
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message.find("is_grade_within_limit") != std::string::npos);
  CHECK(result.diagnostics[0].message.find("did you mean") != std::string::npos);
}

TEST_CASE("wrong arity fails to link") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule r: forall l in L . is_grade_within_limit(l);");
  PredicateTable table;
  REQUIRE(typecheck_predicates(parse_predicates(kSlopePred), table).empty());
  const LinkResult result = link_ruleset(rules, std::move(table));
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message.find("argument") != std::string::npos);
}

TEST_CASE("nearest_name picks close candidates only") {
  CHECK(nearest_name("grade_min", {"grade_max", "elev_step"}) == "grade_max");
  CHECK(nearest_name("zzzzzzzzz", {"grade_max", "elev_step"}).empty());
  CHECK(nearest_name("ac", {"ab", "aa"}) == "aa");  // tie resolves alphabetically
}

TEST_CASE("the slope rule blames the steep lanelet with its grade") {
  const LinkedRuleset linked = load_ruleset(kSlopeRule, kSlopePred);
  const LaneletNetwork net = two_grades();
  const GeometryContext geo(net, EvalConfig{});
  const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
  CHECK(result.status == RuleStatus::kViolated);
  CHECK(result.domain_size == 2);
  REQUIRE(result.violations.size() == 1);
  const Violation& v = result.violations[0];
  REQUIRE(v.binding.size() == 1);
  CHECK(v.binding[0].first == "l");
  CHECK(v.binding[0].second == 2);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].call == "grade_max(2)");
  CHECK(v.witnesses[0].value == doctest::Approx(0.30));
}

TEST_CASE("a clean chain satisfies the full default ruleset") {
  const LinkedRuleset linked =
      load_ruleset(read_data("context/ruleset.rules"), read_data("context/predicates.pdl"));
  const LaneletNetwork net = read_map(read_data("fixtures/maps/chain_clean.xml"));
  const GeometryContext geo(net, EvalConfig{});
  const VerificationReport report = evaluate_ruleset(linked, geo, {});
  CHECK(count_violated(report) == 0);
  CHECK(report.results.size() == 3);
}

TEST_CASE("a low bridge violates the clearance rule with the gap as witness") {
  const LinkedRuleset linked =
      load_ruleset(read_data("context/ruleset.rules"), read_data("context/predicates.pdl"));
  const LaneletNetwork net = read_map(read_data("fixtures/bridge/flat_gap3.xml"));
  const GeometryContext geo(net, EvalConfig{});
  const VerificationReport report = evaluate_ruleset(linked, geo, {});
  const auto it = std::find_if(report.results.begin(), report.results.end(),
                               [](const RuleResult& r) { return r.rule == "vertical_clearance"; });
  REQUIRE(it != report.results.end());
  CHECK(it->status == RuleStatus::kViolated);
  REQUIRE(it->violations.size() == 1);
  bool saw_gap = false;
  for (const WitnessEntry& w : it->violations[0].witnesses) {
    if (w.call.rfind("min_clearance(", 0) == 0) {
      CHECK(w.value == doctest::Approx(3.0));
      saw_gap = true;
    }
  }
  CHECK(saw_gap);
}

TEST_CASE("an existential dual is satisfied") {
  const LinkedRuleset linked =
      load_ruleset("rule any_steep: exists l in L . grade_max(l) > 0.15;", "");
  const LaneletNetwork net = two_grades();
  const GeometryContext geo(net, EvalConfig{});
  const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
  CHECK(result.status == RuleStatus::kSatisfied);
  CHECK(result.violations.empty());
}

TEST_CASE("a failed existential lead has no binding to blame") {
  const LinkedRuleset linked =
      load_ruleset("rule any_cliff: exists l in L . grade_max(l) > 9;", "");
  const LaneletNetwork net = two_grades();
  const GeometryContext geo(net, EvalConfig{});
  const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
  CHECK(result.status == RuleStatus::kViolated);
  CHECK(result.violations.empty());
  CHECK(result.domain_size == 1);
}

TEST_CASE("a failed quantifier-free rule reports one empty binding") {
  const LinkedRuleset linked = load_ruleset("rule axiom: 1 > 2;", "");
  const LaneletNetwork net = two_grades();
  const GeometryContext geo(net, EvalConfig{});
  const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
  CHECK(result.status == RuleStatus::kViolated);
  REQUIRE(result.violations.size() == 1);
  CHECK(result.violations[0].binding.empty());
}

TEST_CASE("nested quantifiers after the prefix contribute truth only") {
  std::vector<Lanelet> chain;
  chain.push_back(make_straight(1, 0, 10, 0, 0, 0, {2}));
  chain.push_back(make_straight(2, 10, 20, 0, 0, 0));
  const LaneletNetwork net = LaneletNetwork::with_derived_predecessors(std::move(chain));
  const LinkedRuleset linked =
      load_ruleset("rule has_next: forall a in L . exists b in L . is_successor(a, b);", "");
  const GeometryContext geo(net, EvalConfig{});
  const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
  CHECK(result.status == RuleStatus::kViolated);
  CHECK(result.domain_size == 2);
  REQUIRE(result.violations.size() == 1);
  CHECK(result.violations[0].binding ==
        std::vector<std::pair<std::string, int64_t>>{{"a", 2}});
}

TEST_CASE("pairs enumeration size lands in the report") {
  const LinkedRuleset linked =
      load_ruleset("rule all_pairs: forall (a, b) in pairs(L) . length(a) > 0;", "");
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 6);
    const GeometryContext geo(net, EvalConfig{});
    const RuleResult result = evaluate_rule(linked.rules[0], linked.predicates, geo);
    const size_t n = net.size();
    CHECK(result.domain_size == n * (n - 1) / 2);
  }
}

TEST_CASE("reports are deterministic and sorted by rule name") {
  const LinkedRuleset linked =
      load_ruleset(read_data("context/ruleset.rules"), read_data("context/predicates.pdl"));
  const LaneletNetwork net = read_map(read_data("fixtures/bridge/flat_gap3.xml"));
  const GeometryContext geo(net, EvalConfig{});
  const RunInfo run{"map.xml", "r.rules", "p.pdl"};
  const std::string a = report_to_json(evaluate_ruleset(linked, geo, run));
  const std::string b = report_to_json(evaluate_ruleset(linked, geo, run));
  CHECK(a == b);
  const VerificationReport report = evaluate_ruleset(linked, geo, run);
  for (size_t i = 1; i < report.results.size(); ++i) {
    CHECK(report.results[i - 1].rule < report.results[i].rule);
  }
}

TEST_CASE("parallel evaluation events match the serial ones") {
  Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 6);
    const RuleDecl rule = oracle::random_linked_rule(rng, 4);
    EvalConfig serial;
    serial.parallel = false;
    const GeometryContext geo_par(net, EvalConfig{});
    const GeometryContext geo_ser(net, serial);
    const PredicateTable empty;
    const RuleResult par = evaluate_rule(rule, empty, geo_par);
    const RuleResult ser = evaluate_rule(rule, empty, geo_ser);
    CHECK(par.status == ser.status);
    CHECK(binding_set(par) == binding_set(ser));
  }
}

TEST_CASE("scaling elevations up never hides a slope violation") {
  const LinkedRuleset linked = load_ruleset(kSlopeRule, kSlopePred);
  Rng rng(88);
  for (int i = 0; i < 30; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 5);
    const double factor = rng.uniform(1.5, 4.0);
    std::vector<Lanelet> scaled;
    for (const auto& [id, lanelet] : net.lanelets()) {
      std::vector<Point3> left;
      std::vector<Point3> right;
      for (const Point3& p : lanelet.left.points()) left.push_back({p.x, p.y, p.z * factor});
      for (const Point3& p : lanelet.right.points()) right.push_back({p.x, p.y, p.z * factor});
      scaled.push_back({id, Polyline3(std::move(left)), Polyline3(std::move(right)),
                        lanelet.successors, lanelet.predecessors});
    }
    const LaneletNetwork bigger = LaneletNetwork::from_lanelets(std::move(scaled));
    const GeometryContext geo_before(net, EvalConfig{});
    const GeometryContext geo_after(bigger, EvalConfig{});
    const BindingSet before =
        binding_set(evaluate_rule(linked.rules[0], linked.predicates, geo_before));
    const BindingSet after =
        binding_set(evaluate_rule(linked.rules[0], linked.predicates, geo_after));
    for (const auto& b : before) {
      CHECK(std::find(after.begin(), after.end(), b) != after.end());
    }
  }
}

TEST_CASE("the engine agrees with substitute-and-reduce on random inputs") {
  Rng rng(99);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const LaneletNetwork net = oracle::random_network(rng, 6);
    const RuleDecl rule = oracle::random_linked_rule(rng, 4);
    const PredicateTable empty;
    const GeometryContext geo(net, EvalConfig{});
    const RuleResult fast = evaluate_rule(rule, empty, geo);
    const oracle::NaiveOutcome naive = oracle::naive_evaluate(rule, empty, geo);
    CAPTURE(print_rule(rule));
    CHECK((fast.status == RuleStatus::kSatisfied) == naive.satisfied);
    CHECK(binding_set(fast) == binding_set(naive));
    ++checked;
  }
  CHECK(checked == 60);
}

}  // TEST_SUITE
