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

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapverify/builtins.hpp"
#include "mapverify/rule_lang.hpp"
#include "mapverify/util.hpp"

namespace mapverify {

// Predicate definition language. Closed helper layer between rules and the
// builtin catalog:
//
//   file      = { pred_def } ;
//   pred_def  = "pred" IDENT "(" [ param { "," param } ] ")" ":=" expr ";" ;
//   param     = IDENT ":" ( "lanelet" | "number" ) ;
//   expr      = or_expr ;
//   or_expr   = and_expr { "||" and_expr } ;
//   and_expr  = unary { "&&" unary } ;
//   unary     = "!" unary | atom ;
//   atom      = "(" expr ")" | term [ cmp_op term ] ;
//   term      = NUMBER | IDENT | IDENT "(" [ term { "," term } ] ")" ;
//   cmp_op    = "<" | "<=" | ">" | ">=" | "==" | "!=" ;
//
// "#" starts a line comment. A lone term is only a valid atom when it is a
// call (the type checker then requires it to be boolean). Bodies may call
// builtins and previously defined predicates; a predicate is not in scope
// inside its own body, so definitions are acyclic by construction. There is
// no implication or quantification at this layer.

enum class PdlExprKind { kNum, kParam, kCall, kCmp, kNot, kAnd, kOr };

struct PdlExpr {
  PdlExprKind kind = PdlExprKind::kNum;
  double number = 0.0;        // kNum
  std::string name;           // kParam, kCall
  CmpOpKind cmp_op = CmpOpKind::kLt;  // kCmp
  std::vector<std::shared_ptr<const PdlExpr>> children;  // kCall args, operands otherwise
  int line = 0;
  int col = 0;

  static std::shared_ptr<const PdlExpr> num(double value);
  static std::shared_ptr<const PdlExpr> param(std::string name);
  static std::shared_ptr<const PdlExpr> call(std::string name,
                                             std::vector<std::shared_ptr<const PdlExpr>> args);
  static std::shared_ptr<const PdlExpr> cmp(CmpOpKind op, std::shared_ptr<const PdlExpr> lhs,
                                            std::shared_ptr<const PdlExpr> rhs);
  static std::shared_ptr<const PdlExpr> negation(std::shared_ptr<const PdlExpr> operand);
  static std::shared_ptr<const PdlExpr> binary(PdlExprKind kind,
                                               std::shared_ptr<const PdlExpr> lhs,
                                               std::shared_ptr<const PdlExpr> rhs);
};

bool pdl_expr_equal(const PdlExpr& a, const PdlExpr& b);

struct PdlParam {
  std::string name;
  PdlType type = PdlType::kLanelet;  // lanelet or number, never boolean
};

struct PredicateDef {
  std::string name;
  std::vector<PdlParam> params;
  std::shared_ptr<const PdlExpr> body;
  int line = 0;
  int col = 0;
};

/// Parses a predicate file. Throws ParseError on the first syntax error;
/// name collisions and type errors are left to typecheck_predicates.
std::vector<PredicateDef> parse_predicates(std::string_view text);

/// Registered predicates in registration order. Lookup is by name; the first
/// registration of a name wins.
class PredicateTable {
 public:
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const PredicateDef* find(const std::string& name) const;
  void add(PredicateDef def);
  const std::vector<PredicateDef>& defs() const { return defs_; }
  std::vector<std::string> names() const;

 private:
  std::vector<PredicateDef> defs_;
  std::map<std::string, size_t> index_;
};

/// Checks defs in order against the builtin catalog and predicates already
/// in `table`: name collisions, duplicate or boolean-typed parameters,
/// unknown references, arity and argument types, and a boolean body type.
/// Every definition is added to `table` whether or not it has errors, so one
/// bad definition does not cascade into unknown-name noise downstream.
/// Returns all diagnostics; an empty result means the table is sound.
std::vector<Diagnostic> typecheck_predicates(std::vector<PredicateDef> defs,
                                             PredicateTable& table);

std::string print_pdl_expr(const PdlExpr& expr);
std::string print_predicate(const PredicateDef& def);

bool eval_cmp(CmpOpKind op, double lhs, double rhs);

struct PdlEnv {
  const GeometryContext& geometry;
  const PredicateTable& table;
  WitnessRecorder* recorder = nullptr;
};

/// Applies a registered predicate to already-typed arguments. Builtin calls
/// on the evaluated path are reported to env.recorder when one is set.
bool eval_predicate(const PdlEnv& env, const PredicateDef& def, std::span<const Value> args);

}  // namespace mapverify
