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

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mapverify {

// First-order rule language over lanelet networks.
//
//   ruleset  := rule* ;
//   rule     := "rule" IDENT ":" formula ";" ;
//   formula  := quant | iff ;
//   quant    := ("forall" | "exists") binding "." formula ;
//   binding  := IDENT "in" "L"
//             | "(" IDENT "," IDENT ")" "in" ("pairs(L)" | "succ_pairs(L)") ;
//   iff      := impl ("<=>" impl)* ;
//   impl     := or ("=>" or)* ;          (right-associative)
//   or       := and ("||" and)* ;
//   and      := unary ("&&" unary)* ;
//   unary    := "!" unary | atom ;
//   atom     := "(" formula ")" | cmp | pred ;
//   cmp      := term ("<"|"<="|">"|">="|"=="|"!=") term ;
//   pred     := IDENT "(" (term ("," term)*)? ")" ;
//   term     := NUMBER | IDENT | IDENT "(" (term ("," term)*)? ")" ;
//
// "#" starts a line comment. Variables range over lanelets; numeric literals
// are plain decimals with an optional sign and fraction.

enum class TermKind { kNum, kVar, kCall };

struct Term {
  TermKind kind = TermKind::kNum;
  double value = 0.0;      // kNum
  std::string name;        // kVar, kCall
  std::vector<Term> args;  // kCall

  static Term num(double v);
  static Term var(std::string name);
  static Term call(std::string name, std::vector<Term> args);

  bool operator==(const Term& other) const;
};

enum class QuantKind { kForall, kExists };
enum class DomainKind { kAllLanelets, kUnorderedPairs, kSuccessorPairs };
enum class BinOpKind { kAnd, kOr, kImplies, kIff };
enum class CmpOpKind { kLt, kLe, kGt, kGe, kEq, kNe };

struct Binding {
  std::vector<std::string> vars;  // one var for L, two for the pair domains
  DomainKind domain = DomainKind::kAllLanelets;

  bool operator==(const Binding&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { kQuant, kNot, kBinOp, kPred, kCmp };

  Kind kind = Kind::kPred;

  // kQuant
  QuantKind quant = QuantKind::kForall;
  Binding binding;
  FormulaPtr body;

  // kNot
  FormulaPtr child;

  // kBinOp
  BinOpKind bin_op = BinOpKind::kAnd;
  FormulaPtr lhs;
  FormulaPtr rhs;

  // kPred
  std::string pred_name;
  std::vector<Term> args;

  // kCmp
  CmpOpKind cmp_op = CmpOpKind::kLt;
  Term cmp_lhs;
  Term cmp_rhs;

  static FormulaPtr quantifier(QuantKind kind, Binding binding, FormulaPtr body);
  static FormulaPtr negation(FormulaPtr child);
  static FormulaPtr binary(BinOpKind op, FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr predicate(std::string name, std::vector<Term> args);
  static FormulaPtr comparison(CmpOpKind op, Term lhs, Term rhs);
};

bool formula_equal(const Formula& a, const Formula& b);

struct RuleDecl {
  std::string name;
  FormulaPtr body;
};

/// Maximum formula/term nesting the parser accepts before giving up with a
/// clean error; keeps hostile input from exhausting the stack.
inline constexpr int kMaxParseDepth = 128;

/// Parses a complete ruleset. Throws ParseError with line/column on syntax
/// errors, unbound variables, variable shadowing, or duplicate rule names.
std::vector<RuleDecl> parse_ruleset(std::string_view source);

/// Renders a formula with minimal parentheses; parsing the result yields a
/// structurally identical formula.
std::string print_formula(const Formula& formula);
std::string print_rule(const RuleDecl& rule);

/// Every function-shaped reference in the formula as (name, arity) pairs,
/// covering predicate applications and calls nested inside terms.
std::set<std::pair<std::string, int>> free_functions(const Formula& formula);

const char* domain_name(DomainKind domain);

}  // namespace mapverify
