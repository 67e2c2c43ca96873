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

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mapverify/rule_lang.hpp"
#include "mapverify/util.hpp"
#include "oracles.hpp"

using namespace mapverify;

TEST_SUITE("rule_lang") {

TEST_CASE("parses the canonical slope rule") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule slope_limit: forall l in L . is_grade_within_limit(l, 0.15);");
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].name == "slope_limit");
  const Formula& top = *rules[0].body;
  REQUIRE(top.kind == Formula::Kind::kQuant);
  CHECK(top.quant == QuantKind::kForall);
  CHECK(top.binding.vars == std::vector<std::string>{"l"});
  CHECK(top.binding.domain == DomainKind::kAllLanelets);
  const Formula& body = *top.body;
  REQUIRE(body.kind == Formula::Kind::kPred);
  CHECK(body.pred_name == "is_grade_within_limit");
  REQUIRE(body.args.size() == 2);
  CHECK(body.args[0] == Term::var("l"));
  CHECK(body.args[1] == Term::num(0.15));
}

TEST_CASE("missing dot after a binding is a positioned error") {
  try {
    parse_ruleset("rule bad: forall l in L is_ok(l);");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() > 20);
    CHECK(std::string(e.what()).find(".") != std::string::npos);
  }
}

TEST_CASE("an unbound variable is rejected by name") {
  try {
    parse_ruleset("rule free: is_ok(l);");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'l'") != std::string::npos);
  }
}

TEST_CASE("duplicate rule names are rejected") {
  CHECK_THROWS_AS(parse_ruleset("rule a: 1 < 2; rule a: 2 < 3;"), ParseError);
}

TEST_CASE("variable shadowing is rejected") {
  CHECK_THROWS_AS(parse_ruleset("rule s: forall l in L . exists l in L . is_ok(l);"),
                  ParseError);
}

TEST_CASE("pair bindings parse with both domains") {
  const std::vector<RuleDecl> rules = parse_ruleset(
      "rule p: forall (a, b) in pairs(L) . ok(a, b);\n"
      "rule s: exists (a, b) in succ_pairs(L) . ok(a, b);");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].body->binding.domain == DomainKind::kUnorderedPairs);
  CHECK(rules[0].body->binding.vars == std::vector<std::string>{"a", "b"});
  CHECK(rules[1].body->quant == QuantKind::kExists);
  CHECK(rules[1].body->binding.domain == DomainKind::kSuccessorPairs);
}

TEST_CASE("negation binds tighter than disjunction when printing") {
  const FormulaPtr f = Formula::binary(BinOpKind::kOr,
                                       Formula::negation(Formula::predicate("a", {})),
                                       Formula::predicate("b", {}));
  CHECK(print_formula(*f) == "!a() || b()");
}

TEST_CASE("implication parses right-associative and prints without parens") {
  const std::vector<RuleDecl> rules = parse_ruleset("rule r: a() => b() => c();");
  const Formula& top = *rules[0].body;
  REQUIRE(top.kind == Formula::Kind::kBinOp);
  CHECK(top.bin_op == BinOpKind::kImplies);
  CHECK(top.lhs->kind == Formula::Kind::kPred);
  REQUIRE(top.rhs->kind == Formula::Kind::kBinOp);
  CHECK(top.rhs->bin_op == BinOpKind::kImplies);
  CHECK(print_rule(rules[0]) == "rule r: a() => b() => c();");
}

TEST_CASE("precedence needs parens only against the grain") {
  // && over ||: the conjunction prints bare, the grouped disjunction keeps
  // its parens when reparsed.
  const std::vector<RuleDecl> rules = parse_ruleset("rule r: (a() || b()) && c();");
  const std::string printed = print_rule(rules[0]);
  CHECK(printed == "rule r: (a() || b()) && c();");
  const std::vector<RuleDecl> again = parse_ruleset(printed);
  CHECK(formula_equal(*again[0].body, *rules[0].body));
}

TEST_CASE("comments and whitespace are skipped") {
  const std::vector<RuleDecl> rules = parse_ruleset(
      "# leading note\nrule a: 1 < 2;  # trailing\n\n# lone\nrule b: 2 < 3;\n");
  CHECK(rules.size() == 2);
}

TEST_CASE("numbers have no exponent form") {
  CHECK_THROWS_AS(parse_ruleset("rule r: forall l in L . grade_max(l) <= 1e5;"), ParseError);
  const std::vector<RuleDecl> ok = parse_ruleset("rule r: -0.25 < 1.5;");
  CHECK(ok[0].body->cmp_lhs == Term::num(-0.25));
}

TEST_CASE("deep nesting fails cleanly at the depth limit") {
  std::string text = "rule deep: ";
  for (int i = 0; i < 200; ++i) text += "(";
  text += "1 < 2";
  for (int i = 0; i < 200; ++i) text += ")";
  text += ";";
  try {
    parse_ruleset(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("nesting") != std::string::npos);
  }
}

TEST_CASE("free_functions reports name and arity once") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule slope_limit: forall l in L . is_grade_within_limit(l, 0.15);");
  const std::set<std::pair<std::string, int>> got = free_functions(*rules[0].body);
  CHECK(got == std::set<std::pair<std::string, int>>{{"is_grade_within_limit", 2}});
}

TEST_CASE("free_functions includes calls nested in comparisons") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule r: forall l in L . grade_max(l) <= cap();");
  const std::set<std::pair<std::string, int>> got = free_functions(*rules[0].body);
  CHECK(got.count({"grade_max", 1}) == 1);
  CHECK(got.count({"cap", 0}) == 1);
}

TEST_CASE("free_functions reports every predicate used") {
  const std::vector<RuleDecl> rules =
      parse_ruleset("rule r: forall (a, b) in pairs(L) . near(a, b) => level_ok(a, b, 0.5);");
  const std::set<std::pair<std::string, int>> got = free_functions(*rules[0].body);
  CHECK(got.count({"near", 2}) == 1);
  CHECK(got.count({"level_ok", 3}) == 1);
}

TEST_CASE("randomized round trip holds at depth six") {
  Rng rng(4242);
  for (int i = 0; i < 500; ++i) {
    const RuleDecl rule = oracle::random_rule_ast(rng, 6);
    const std::string printed = print_rule(rule);
    CAPTURE(printed);
    std::vector<RuleDecl> back;
    REQUIRE_NOTHROW(back = parse_ruleset(printed));
    REQUIRE(back.size() == 1);
    CHECK(formula_equal(*back[0].body, *rule.body));
  }
}

}  // TEST_SUITE
