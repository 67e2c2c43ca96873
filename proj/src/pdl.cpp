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

#include "mapverify/pdl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace mapverify {

std::shared_ptr<const PdlExpr> PdlExpr::num(double value) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = PdlExprKind::kNum;
  e->number = value;
  return e;
}

std::shared_ptr<const PdlExpr> PdlExpr::param(std::string name) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = PdlExprKind::kParam;
  e->name = std::move(name);
  return e;
}

std::shared_ptr<const PdlExpr> PdlExpr::call(std::string name,
                                             std::vector<std::shared_ptr<const PdlExpr>> args) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = PdlExprKind::kCall;
  e->name = std::move(name);
  e->children = std::move(args);
  return e;
}

std::shared_ptr<const PdlExpr> PdlExpr::cmp(CmpOpKind op, std::shared_ptr<const PdlExpr> lhs,
                                            std::shared_ptr<const PdlExpr> rhs) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = PdlExprKind::kCmp;
  e->cmp_op = op;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

std::shared_ptr<const PdlExpr> PdlExpr::negation(std::shared_ptr<const PdlExpr> operand) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = PdlExprKind::kNot;
  e->children = {std::move(operand)};
  return e;
}

std::shared_ptr<const PdlExpr> PdlExpr::binary(PdlExprKind kind,
                                               std::shared_ptr<const PdlExpr> lhs,
                                               std::shared_ptr<const PdlExpr> rhs) {
  auto e = std::make_shared<PdlExpr>();
  e->kind = kind;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

bool pdl_expr_equal(const PdlExpr& a, const PdlExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case PdlExprKind::kNum:
      if (a.number != b.number) return false;
      break;
    case PdlExprKind::kParam:
    case PdlExprKind::kCall:
      if (a.name != b.name) return false;
      break;
    case PdlExprKind::kCmp:
      if (a.cmp_op != b.cmp_op) return false;
      break;
    case PdlExprKind::kNot:
    case PdlExprKind::kAnd:
    case PdlExprKind::kOr:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (!pdl_expr_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

enum class Tok {
  kEnd, kIdent, kNumber,
  kKwPred, kKwLanelet, kKwNumber,
  kColon, kAssign, kSemi, kComma, kLParen, kRParen,
  kBang, kAndAnd, kOrOr,
  kLt, kLe, kGt, kGe, kEq, kNe,
};

const char* token_label(Tok t) {
  switch (t) {
    case Tok::kEnd: return "end of input";
    case Tok::kIdent: return "identifier";
    case Tok::kNumber: return "number";
    case Tok::kKwPred: return "'pred'";
    case Tok::kKwLanelet: return "'lanelet'";
    case Tok::kKwNumber: return "'number'";
    case Tok::kColon: return "':'";
    case Tok::kAssign: return "':='";
    case Tok::kSemi: return "';'";
    case Tok::kComma: return "','";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kBang: return "'!'";
    case Tok::kAndAnd: return "'&&'";
    case Tok::kOrOr: return "'||'";
    case Tok::kLt: return "'<'";
    case Tok::kLe: return "'<='";
    case Tok::kGt: return "'>'";
    case Tok::kGe: return "'>='";
    case Tok::kEq: return "'=='";
    case Tok::kNe: return "'!='";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  int line = 1;
  int col = 1;

  std::string describe() const {
    if (kind == Tok::kIdent) return "identifier '" + text + "'";
    if (kind == Tok::kNumber) return "number '" + text + "'";
    return token_label(kind);
  }
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;

  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, std::string text, int l, int c) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = l;
    t.col = c;
    out.push_back(std::move(t));
  };

  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    const int l = line, cl = col;
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };

    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      size_t j = i;
      if (src[j] == '-' || src[j] == '+') ++j;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      std::string text(src.substr(i, j - i));
      double value = 0.0;
      if (!try_parse_double(text, value)) {
        throw ParseError("malformed number '" + text + "'", l, cl);
      }
      bump(j - i);
      push(Tok::kNumber, text, l, cl);
      out.back().number = value;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      std::string text(src.substr(i, j - i));
      bump(j - i);
      Tok kind = Tok::kIdent;
      if (text == "pred") kind = Tok::kKwPred;
      else if (text == "lanelet") kind = Tok::kKwLanelet;
      else if (text == "number") kind = Tok::kKwNumber;
      push(kind, std::move(text), l, cl);
      continue;
    }

    if (two(':', '=')) { bump(2); push(Tok::kAssign, ":=", l, cl); continue; }
    if (two('<', '=')) { bump(2); push(Tok::kLe, "<=", l, cl); continue; }
    if (two('>', '=')) { bump(2); push(Tok::kGe, ">=", l, cl); continue; }
    if (two('=', '=')) { bump(2); push(Tok::kEq, "==", l, cl); continue; }
    if (two('!', '=')) { bump(2); push(Tok::kNe, "!=", l, cl); continue; }
    if (two('&', '&')) { bump(2); push(Tok::kAndAnd, "&&", l, cl); continue; }
    if (two('|', '|')) { bump(2); push(Tok::kOrOr, "||", l, cl); continue; }

    switch (c) {
      case ':': bump(1); push(Tok::kColon, ":", l, cl); continue;
      case ';': bump(1); push(Tok::kSemi, ";", l, cl); continue;
      case ',': bump(1); push(Tok::kComma, ",", l, cl); continue;
      case '(': bump(1); push(Tok::kLParen, "(", l, cl); continue;
      case ')': bump(1); push(Tok::kRParen, ")", l, cl); continue;
      case '<': bump(1); push(Tok::kLt, "<", l, cl); continue;
      case '>': bump(1); push(Tok::kGt, ">", l, cl); continue;
      case '!': bump(1); push(Tok::kBang, "!", l, cl); continue;
      case '=':
        throw ParseError("unexpected '='; predicate bodies have no implication", l, cl);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  push(Tok::kEnd, "", line, col);
  return out;
}

class PdlParser {
 public:
  explicit PdlParser(std::string_view src) : toks_(lex(src)) {}

  std::vector<PredicateDef> parse_file() {
    std::vector<PredicateDef> defs;
    while (peek().kind != Tok::kEnd) defs.push_back(parse_pred_def());
    return defs;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(PdlParser& p) : parser(p) {
      if (++parser.depth_ > kMaxParseDepth) {
        const Token& t = parser.peek();
        throw ParseError("expression nesting exceeds the limit of " +
                             std::to_string(kMaxParseDepth),
                         t.line, t.col);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    PdlParser& parser;
  };

  const Token& peek() const { return toks_[i_]; }
  const Token& get() { return toks_[i_++]; }

  const Token& expect(Tok kind, const char* context) {
    const Token& t = peek();
    if (t.kind != kind) {
      throw ParseError(std::string("syntax error in ") + context + ": expected " +
                           token_label(kind) + ", got " + t.describe(),
                       t.line, t.col);
    }
    return get();
  }

  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++i_;
      return true;
    }
    return false;
  }

  PredicateDef parse_pred_def() {
    expect(Tok::kKwPred, "predicate declaration");
    const Token& name = expect(Tok::kIdent, "predicate declaration");
    PredicateDef def;
    def.name = name.text;
    def.line = name.line;
    def.col = name.col;
    expect(Tok::kLParen, "predicate declaration");
    params_.clear();
    if (!accept(Tok::kRParen)) {
      parse_param(def);
      while (accept(Tok::kComma)) parse_param(def);
      expect(Tok::kRParen, "parameter list");
    }
    expect(Tok::kAssign, "predicate declaration");
    def.body = parse_expr();
    expect(Tok::kSemi, "predicate declaration");
    return def;
  }

  void parse_param(PredicateDef& def) {
    const Token& name = expect(Tok::kIdent, "parameter");
    expect(Tok::kColon, "parameter");
    PdlParam param;
    param.name = name.text;
    if (accept(Tok::kKwLanelet)) {
      param.type = PdlType::kLanelet;
    } else if (accept(Tok::kKwNumber)) {
      param.type = PdlType::kNumber;
    } else {
      const Token& t = peek();
      throw ParseError("parameter type must be 'lanelet' or 'number', got " + t.describe(),
                       t.line, t.col);
    }
    def.params.push_back(param);
    params_.push_back(param.name);
  }

  std::shared_ptr<const PdlExpr> parse_expr() {
    DepthGuard guard(*this);
    return parse_or();
  }

  std::shared_ptr<const PdlExpr> parse_or() {
    auto lhs = parse_and();
    while (accept(Tok::kOrOr)) {
      lhs = PdlExpr::binary(PdlExprKind::kOr, std::move(lhs), parse_and());
    }
    return lhs;
  }

  std::shared_ptr<const PdlExpr> parse_and() {
    auto lhs = parse_unary();
    while (accept(Tok::kAndAnd)) {
      lhs = PdlExpr::binary(PdlExprKind::kAnd, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  static std::shared_ptr<const PdlExpr> at(std::shared_ptr<const PdlExpr> e, const Token& t) {
    auto m = std::const_pointer_cast<PdlExpr>(std::move(e));
    m->line = t.line;
    m->col = t.col;
    return m;
  }

  std::shared_ptr<const PdlExpr> parse_unary() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::kBang) {
      const Token& t = get();
      return at(PdlExpr::negation(parse_unary()), t);
    }
    return parse_atom();
  }

  std::shared_ptr<const PdlExpr> parse_atom() {
    DepthGuard guard(*this);
    if (accept(Tok::kLParen)) {
      auto inner = parse_expr();
      expect(Tok::kRParen, "parenthesized expression");
      return inner;
    }
    const Token& start = peek();
    auto first = parse_term();
    CmpOpKind op;
    if (try_cmp_op(op)) {
      return at(PdlExpr::cmp(op, std::move(first), parse_term()), start);
    }
    if (first->kind != PdlExprKind::kCall) {
      throw ParseError("expected a comparison or a function application", start.line,
                       start.col);
    }
    return first;
  }

  bool try_cmp_op(CmpOpKind& op) {
    switch (peek().kind) {
      case Tok::kLt: op = CmpOpKind::kLt; break;
      case Tok::kLe: op = CmpOpKind::kLe; break;
      case Tok::kGt: op = CmpOpKind::kGt; break;
      case Tok::kGe: op = CmpOpKind::kGe; break;
      case Tok::kEq: op = CmpOpKind::kEq; break;
      case Tok::kNe: op = CmpOpKind::kNe; break;
      default:
        return false;
    }
    ++i_;
    return true;
  }

  std::shared_ptr<const PdlExpr> parse_term() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.kind == Tok::kNumber) {
      get();
      return at(PdlExpr::num(t.number), t);
    }
    if (t.kind != Tok::kIdent) {
      throw ParseError("syntax error in term: expected number or identifier, got " +
                           t.describe(),
                       t.line, t.col);
    }
    get();
    if (accept(Tok::kLParen)) {
      std::vector<std::shared_ptr<const PdlExpr>> args;
      if (!accept(Tok::kRParen)) {
        args.push_back(parse_term());
        while (accept(Tok::kComma)) args.push_back(parse_term());
        expect(Tok::kRParen, "argument list");
      }
      return at(PdlExpr::call(t.text, std::move(args)), t);
    }
    if (std::find(params_.begin(), params_.end(), t.text) == params_.end()) {
      throw ParseError("unknown parameter '" + t.text + "'", t.line, t.col);
    }
    return at(PdlExpr::param(t.text), t);
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  int depth_ = 0;
  std::vector<std::string> params_;
};

const char* cmp_op_text(CmpOpKind op) {
  switch (op) {
    case CmpOpKind::kLt: return "<";
    case CmpOpKind::kLe: return "<=";
    case CmpOpKind::kGt: return ">";
    case CmpOpKind::kGe: return ">=";
    case CmpOpKind::kEq: return "==";
    case CmpOpKind::kNe: return "!=";
  }
  return "?";
}

int precedence(const PdlExpr& e) {
  switch (e.kind) {
    case PdlExprKind::kOr: return 1;
    case PdlExprKind::kAnd: return 2;
    case PdlExprKind::kNot: return 3;
    default: return 4;
  }
}

// min_prec: the lowest precedence printable in this position without parens.
void print_node(const PdlExpr& e, int min_prec, std::string& out) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case PdlExprKind::kNum:
      out += format_double_fixed(e.number);
      break;
    case PdlExprKind::kParam:
      out += e.name;
      break;
    case PdlExprKind::kCall:
      out += e.name;
      out += '(';
      for (size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += ", ";
        print_node(*e.children[i], 0, out);
      }
      out += ')';
      break;
    case PdlExprKind::kCmp:
      print_node(*e.children[0], prec, out);
      out += ' ';
      out += cmp_op_text(e.cmp_op);
      out += ' ';
      print_node(*e.children[1], prec, out);
      break;
    case PdlExprKind::kNot:
      out += '!';
      print_node(*e.children[0], prec, out);
      break;
    case PdlExprKind::kAnd:
    case PdlExprKind::kOr:
      print_node(*e.children[0], prec, out);
      out += e.kind == PdlExprKind::kAnd ? " && " : " || ";
      print_node(*e.children[1], prec + 1, out);
      break;
  }
  if (parens) out += ')';
}

struct TypeChecker {
  const std::vector<PdlParam>& params;
  const PredicateTable& table;
  std::vector<Diagnostic>& diags;
  const std::string& subject;

  void report(const PdlExpr& at, const std::string& message) {
    diags.push_back({subject, std::to_string(at.line) + ":" + std::to_string(at.col) + ": " +
                                  message});
  }

  std::optional<PdlType> infer(const PdlExpr& e) {
    switch (e.kind) {
      case PdlExprKind::kNum:
        return PdlType::kNumber;
      case PdlExprKind::kParam: {
        for (const PdlParam& p : params) {
          if (p.name == e.name) return p.type;
        }
        report(e, "unknown parameter '" + e.name + "'");
        return std::nullopt;
      }
      case PdlExprKind::kCall:
        return infer_call(e);
      case PdlExprKind::kCmp: {
        require(*e.children[0], PdlType::kNumber, "comparison operand");
        require(*e.children[1], PdlType::kNumber, "comparison operand");
        return PdlType::kBoolean;
      }
      case PdlExprKind::kNot:
        require(*e.children[0], PdlType::kBoolean, "operand of '!'");
        return PdlType::kBoolean;
      case PdlExprKind::kAnd:
      case PdlExprKind::kOr: {
        const char* what =
            e.kind == PdlExprKind::kAnd ? "operand of '&&'" : "operand of '||'";
        require(*e.children[0], PdlType::kBoolean, what);
        require(*e.children[1], PdlType::kBoolean, what);
        return PdlType::kBoolean;
      }
    }
    return std::nullopt;
  }

  void require(const PdlExpr& e, PdlType want, const std::string& what) {
    auto got = infer(e);
    if (got && *got != want) {
      report(e, what + " must be a " + pdl_type_name(want) + ", got " + pdl_type_name(*got));
    }
  }

  std::optional<PdlType> infer_call(const PdlExpr& e) {
    std::vector<PdlType> want;
    PdlType result;
    if (const BuiltinSig* sig = BuiltinCatalog::standard().find(e.name)) {
      want = sig->params;
      result = sig->result;
    } else if (const PredicateDef* def = table.find(e.name)) {
      for (const PdlParam& p : def->params) want.push_back(p.type);
      result = PdlType::kBoolean;
    } else {
      report(e, "unknown function '" + e.name + "'");
      for (const auto& arg : e.children) infer(*arg);
      return std::nullopt;
    }
    if (e.children.size() != want.size()) {
      report(e, "'" + e.name + "' expects " + std::to_string(want.size()) + " argument" +
                    (want.size() == 1 ? "" : "s") + ", got " +
                    std::to_string(e.children.size()));
      for (const auto& arg : e.children) infer(*arg);
      return result;
    }
    for (size_t i = 0; i < want.size(); ++i) {
      require(*e.children[i], want[i],
              "argument " + std::to_string(i + 1) + " of '" + e.name + "'");
    }
    return result;
  }
};

}  // namespace

std::vector<PredicateDef> parse_predicates(std::string_view text) {
  return PdlParser(text).parse_file();
}

const PredicateDef* PredicateTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &defs_[it->second];
}

void PredicateTable::add(PredicateDef def) {
  // First registration wins; duplicates are already reported as diagnostics.
  index_.emplace(def.name, defs_.size());
  defs_.push_back(std::move(def));
}

std::vector<std::string> PredicateTable::names() const {
  std::vector<std::string> out;
  out.reserve(defs_.size());
  for (const PredicateDef& def : defs_) out.push_back(def.name);
  return out;
}

std::vector<Diagnostic> typecheck_predicates(std::vector<PredicateDef> defs,
                                             PredicateTable& table) {
  std::vector<Diagnostic> diags;
  for (PredicateDef& def : defs) {
    auto at = [&](const std::string& message) {
      diags.push_back({def.name, std::to_string(def.line) + ":" + std::to_string(def.col) +
                                     ": " + message});
    };
    if (BuiltinCatalog::standard().find(def.name) != nullptr) {
      at("'" + def.name + "' collides with a builtin function");
    } else if (table.contains(def.name)) {
      at("predicate '" + def.name + "' is already defined");
    }
    for (size_t i = 0; i < def.params.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        if (def.params[i].name == def.params[j].name) {
          at("duplicate parameter '" + def.params[i].name + "'");
        }
      }
    }
    // The definition is not in scope inside its own body, so self-reference
    // surfaces as an unknown function.
    TypeChecker checker{def.params, table, diags, def.name};
    checker.require(*def.body, PdlType::kBoolean, "predicate body");
    table.add(std::move(def));
  }
  return diags;
}

std::string print_pdl_expr(const PdlExpr& expr) {
  std::string out;
  print_node(expr, 0, out);
  return out;
}

std::string print_predicate(const PredicateDef& def) {
  std::string out = "pred " + def.name + "(";
  for (size_t i = 0; i < def.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += def.params[i].name;
    out += ": ";
    out += pdl_type_name(def.params[i].type);
  }
  out += ") := ";
  print_node(*def.body, 0, out);
  out += ";";
  return out;
}

bool eval_cmp(CmpOpKind op, double lhs, double rhs) {
  switch (op) {
    case CmpOpKind::kLt: return lhs < rhs;
    case CmpOpKind::kLe: return lhs <= rhs;
    case CmpOpKind::kGt: return lhs > rhs;
    case CmpOpKind::kGe: return lhs >= rhs;
    case CmpOpKind::kEq: return lhs == rhs;
    case CmpOpKind::kNe: return lhs != rhs;
  }
  return false;
}

namespace {

Value eval_expr(const PdlEnv& env, const PdlExpr& e,
                const std::vector<PdlParam>& params, std::span<const Value> args) {
  switch (e.kind) {
    case PdlExprKind::kNum:
      return Value::of_number(e.number);
    case PdlExprKind::kParam: {
      for (size_t i = 0; i < params.size(); ++i) {
        if (params[i].name == e.name) return args[i];
      }
      throw EvalError("unbound parameter '" + e.name + "'");
    }
    case PdlExprKind::kCall: {
      std::vector<Value> argv;
      argv.reserve(e.children.size());
      for (const auto& arg : e.children) {
        argv.push_back(eval_expr(env, *arg, params, args));
      }
      if (BuiltinCatalog::standard().find(e.name) != nullptr) {
        return eval_builtin(env.geometry, e.name, argv, env.recorder);
      }
      const PredicateDef* callee = env.table.find(e.name);
      if (callee == nullptr) throw EvalError("unknown function '" + e.name + "'");
      return Value::of_boolean(eval_predicate(env, *callee, argv));
    }
    case PdlExprKind::kCmp: {
      const Value lhs = eval_expr(env, *e.children[0], params, args);
      const Value rhs = eval_expr(env, *e.children[1], params, args);
      return Value::of_boolean(eval_cmp(e.cmp_op, lhs.number, rhs.number));
    }
    case PdlExprKind::kNot:
      return Value::of_boolean(!eval_expr(env, *e.children[0], params, args).boolean);
    case PdlExprKind::kAnd: {
      const Value lhs = eval_expr(env, *e.children[0], params, args);
      if (!lhs.boolean) return Value::of_boolean(false);
      return eval_expr(env, *e.children[1], params, args);
    }
    case PdlExprKind::kOr: {
      const Value lhs = eval_expr(env, *e.children[0], params, args);
      if (lhs.boolean) return Value::of_boolean(true);
      return eval_expr(env, *e.children[1], params, args);
    }
  }
  throw EvalError("malformed expression");
}

}  // namespace

bool eval_predicate(const PdlEnv& env, const PredicateDef& def, std::span<const Value> args) {
  if (args.size() != def.params.size()) {
    throw EvalError("'" + def.name + "' applied to " + std::to_string(args.size()) +
                    " arguments, expects " + std::to_string(def.params.size()));
  }
  return eval_expr(env, *def.body, def.params, args).boolean;
}

}  // namespace mapverify
