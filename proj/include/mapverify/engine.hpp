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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapverify/builtins.hpp"
#include "mapverify/config.hpp"
#include "mapverify/pdl.hpp"
#include "mapverify/rule_lang.hpp"
#include "mapverify/util.hpp"

namespace mapverify {

inline constexpr const char* kToolName = "mapverify";
inline constexpr const char* kToolVersion = "0.1.0";

/// Ruleset whose function references all resolve against the builtin catalog
/// and the predicate table with matching arities and argument categories.
struct LinkedRuleset {
  std::vector<RuleDecl> rules;
  PredicateTable predicates;
};

struct LinkResult {
  LinkedRuleset ruleset;
  std::vector<Diagnostic> diagnostics;  // empty means the ruleset is sound
};

/// Resolves every predicate application and every call nested in terms.
/// Boolean positions accept boolean builtins and registered predicates;
/// term positions accept numeric builtins only; lanelet parameters accept
/// variables only and number parameters accept numeric terms. Unknown names
/// get a nearest-name suggestion when one is close enough.
LinkResult link_ruleset(std::vector<RuleDecl> rules, PredicateTable predicates);

/// link_ruleset, but throws ValidationError with all findings rendered.
LinkedRuleset link_or_throw(std::vector<RuleDecl> rules, PredicateTable predicates);

/// Parse + typecheck + link from source text; throws ParseError or
/// ValidationError on the first stage that fails.
LinkedRuleset load_ruleset(std::string_view rules_text, std::string_view predicates_text);

/// Nearest candidate by edit distance, or empty when nothing is within
/// distance 3. Ties resolve to the lexicographically smallest candidate.
std::string nearest_name(const std::string& name, const std::vector<std::string>& candidates);

enum class RuleStatus { kSatisfied, kViolated };

const char* rule_status_name(RuleStatus status);

/// One falsifying assignment of the rule's leading universal quantifiers,
/// with every builtin observation made on the falsifying evaluation path.
struct Violation {
  std::vector<std::pair<std::string, int64_t>> binding;  // quantifier order
  std::vector<WitnessEntry> witnesses;
};

struct RuleResult {
  std::string rule;
  RuleStatus status = RuleStatus::kSatisfied;
  /// Assignments of the leading universal chain that were enumerated; 1 for
  /// a rule with no such chain (one whole-formula evaluation).
  size_t domain_size = 0;
  /// All falsifying bindings of the universal prefix, in domain enumeration
  /// order (ascending ids). A failed rule led by an existential quantifier
  /// has no binding to blame and reports none; a failed quantifier-free rule
  /// reports a single violation with an empty binding.
  std::vector<Violation> violations;
};

/// Input paths exactly as the caller supplied them, echoed into reports.
struct RunInfo {
  std::string map_path;
  std::string rules_path;
  std::string predicates_path;
};

struct VerificationReport {
  RunInfo run;
  EvalConfig config;
  std::vector<RuleResult> results;  // sorted by rule name
};

/// Evaluates one rule. The maximal leading chain of universal quantifiers is
/// enumerated exhaustively and every falsifying binding is reported; nested
/// quantifiers and existential leads contribute only their truth value.
/// Deterministic for fixed inputs whether or not the binding loop runs in
/// parallel.
RuleResult evaluate_rule(const RuleDecl& rule, const PredicateTable& predicates,
                         const GeometryContext& geometry);

VerificationReport evaluate_ruleset(const LinkedRuleset& ruleset,
                                    const GeometryContext& geometry, RunInfo run);

size_t count_violated(const VerificationReport& report);

/// Stable JSON rendering: key order is fixed, rules are sorted by name,
/// violations follow enumeration order, and non-finite witness values are
/// encoded as the strings "inf" and "-inf". Byte-identical for equal inputs.
std::string report_to_json(const VerificationReport& report);

/// Human-readable per-rule summary ending in a satisfied/violated count line.
std::string report_summary(const VerificationReport& report);

}  // namespace mapverify
