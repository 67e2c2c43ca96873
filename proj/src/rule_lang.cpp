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

#include "mapverify/rule_lang.hpp"

#include <algorithm>
#include <cctype>

#include "mapverify/util.hpp"

namespace mapverify {

Term Term::num(double v) {
  Term t;
  t.kind = TermKind::kNum;
  t.value = v;
  return t;
}

Term Term::var(std::string name) {
  Term t;
  t.kind = TermKind::kVar;
  t.name = std::move(name);
  return t;
}

Term Term::call(std::string name, std::vector<Term> args) {
  Term t;
  t.kind = TermKind::kCall;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case TermKind::kNum:
      return value == other.value;
    case TermKind::kVar:
      return name == other.name;
    case TermKind::kCall:
      return name == other.name && args == other.args;
  }
  return false;
}

FormulaPtr Formula::quantifier(QuantKind kind, Binding binding, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::kQuant;
  f->quant = kind;
  f->binding = std::move(binding);
  f->body = std::move(body);
  return f;
}

FormulaPtr Formula::negation(FormulaPtr child) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::kNot;
  f->child = std::move(child);
  return f;
}

FormulaPtr Formula::binary(BinOpKind op, FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::kBinOp;
  f->bin_op = op;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

FormulaPtr Formula::predicate(std::string name, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::kPred;
  f->pred_name = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr Formula::comparison(CmpOpKind op, Term lhs, Term rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::kCmp;
  f->cmp_op = op;
  f->cmp_lhs = std::move(lhs);
  f->cmp_rhs = std::move(rhs);
  return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::kQuant:
      return a.quant == b.quant && a.binding == b.binding && formula_equal(*a.body, *b.body);
    case Formula::Kind::kNot:
      return formula_equal(*a.child, *b.child);
    case Formula::Kind::kBinOp:
      return a.bin_op == b.bin_op && formula_equal(*a.lhs, *b.lhs) &&
             formula_equal(*a.rhs, *b.rhs);
    case Formula::Kind::kPred:
      return a.pred_name == b.pred_name && a.args == b.args;
    case Formula::Kind::kCmp:
      return a.cmp_op == b.cmp_op && a.cmp_lhs == b.cmp_lhs && a.cmp_rhs == b.cmp_rhs;
  }
  return false;
}

const char* domain_name(DomainKind domain) {
  switch (domain) {
    case DomainKind::kAllLanelets:
      return "L";
    case DomainKind::kUnorderedPairs:
      return "pairs(L)";
    case DomainKind::kSuccessorPairs:
      return "succ_pairs(L)";
  }
  return "?";
}

namespace {

enum class Tok {
  kEnd, kIdent, kNumber,
  kKwRule, kKwForall, kKwExists, kKwIn,
  kColon, kSemi, kDot, kComma, kLParen, kRParen,
  kBang, kAndAnd, kOrOr, kImplies, kIff,
  kLt, kLe, kGt, kGe, kEq, kNe,
};

const char* token_label(Tok t) {
  switch (t) {
    case Tok::kEnd: return "end of input";
    case Tok::kIdent: return "identifier";
    case Tok::kNumber: return "number";
    case Tok::kKwRule: return "'rule'";
    case Tok::kKwForall: return "'forall'";
    case Tok::kKwExists: return "'exists'";
    case Tok::kKwIn: return "'in'";
    case Tok::kColon: return "':'";
    case Tok::kSemi: return "';'";
    case Tok::kDot: return "'.'";
    case Tok::kComma: return "','";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kBang: return "'!'";
    case Tok::kAndAnd: return "'&&'";
    case Tok::kOrOr: return "'||'";
    case Tok::kImplies: return "'=>'";
    case Tok::kIff: return "'<=>'";
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
      if (text == "rule") kind = Tok::kKwRule;
      else if (text == "forall") kind = Tok::kKwForall;
      else if (text == "exists") kind = Tok::kKwExists;
      else if (text == "in") kind = Tok::kKwIn;
      push(kind, std::move(text), l, cl);
      continue;
    }

    if (src.compare(i, 3, "<=>") == 0) { bump(3); push(Tok::kIff, "<=>", l, cl); continue; }
    if (two('<', '=')) { bump(2); push(Tok::kLe, "<=", l, cl); continue; }
    if (two('>', '=')) { bump(2); push(Tok::kGe, ">=", l, cl); continue; }
    if (two('=', '=')) { bump(2); push(Tok::kEq, "==", l, cl); continue; }
    if (two('=', '>')) { bump(2); push(Tok::kImplies, "=>", l, cl); continue; }
    if (two('!', '=')) { bump(2); push(Tok::kNe, "!=", l, cl); continue; }
    if (two('&', '&')) { bump(2); push(Tok::kAndAnd, "&&", l, cl); continue; }
    if (two('|', '|')) { bump(2); push(Tok::kOrOr, "||", l, cl); continue; }

    switch (c) {
      case ':': bump(1); push(Tok::kColon, ":", l, cl); continue;
      case ';': bump(1); push(Tok::kSemi, ";", l, cl); continue;
      case '.': bump(1); push(Tok::kDot, ".", l, cl); continue;
      case ',': bump(1); push(Tok::kComma, ",", l, cl); continue;
      case '(': bump(1); push(Tok::kLParen, "(", l, cl); continue;
      case ')': bump(1); push(Tok::kRParen, ")", l, cl); continue;
      case '<': bump(1); push(Tok::kLt, "<", l, cl); continue;
      case '>': bump(1); push(Tok::kGt, ">", l, cl); continue;
      case '!': bump(1); push(Tok::kBang, "!", l, cl); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  push(Tok::kEnd, "", line, col);
  return out;
}

class RuleParser {
 public:
  explicit RuleParser(std::string_view src) : toks_(lex(src)) {}

  std::vector<RuleDecl> parse_ruleset() {
    std::vector<RuleDecl> rules;
    while (peek().kind != Tok::kEnd) {
      RuleDecl rule = parse_rule();
      for (const RuleDecl& r : rules) {
        if (r.name == rule.name) {
          throw ParseError("duplicate rule name '" + rule.name + "'", last_rule_line_,
                           last_rule_col_);
        }
      }
      rules.push_back(std::move(rule));
    }
    return rules;
  }

 private:
  struct DepthGuard {
    explicit DepthGuard(RuleParser& p) : parser(p) {
      if (++parser.depth_ > kMaxParseDepth) {
        const Token& t = parser.peek();
        throw ParseError("formula nesting exceeds the limit of " +
                             std::to_string(kMaxParseDepth),
                         t.line, t.col);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    RuleParser& parser;
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

  RuleDecl parse_rule() {
    expect(Tok::kKwRule, "rule declaration");
    const Token& name = expect(Tok::kIdent, "rule declaration");
    last_rule_line_ = name.line;
    last_rule_col_ = name.col;
    RuleDecl rule;
    rule.name = name.text;
    expect(Tok::kColon, "rule declaration");
    rule.body = parse_formula();
    expect(Tok::kSemi, "rule declaration");
    return rule;
  }

  FormulaPtr parse_formula() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::kKwForall || peek().kind == Tok::kKwExists) {
      return parse_quant();
    }
    return parse_iff();
  }

  FormulaPtr parse_quant() {
    const QuantKind kind =
        get().kind == Tok::kKwForall ? QuantKind::kForall : QuantKind::kExists;
    Binding binding = parse_binding();
    expect(Tok::kDot, "quantifier");
    const size_t pushed = binding.vars.size();
    FormulaPtr body = parse_formula();
    scope_.resize(scope_.size() - pushed);
    return Formula::quantifier(kind, std::move(binding), std::move(body));
  }

  void bind_var(const Token& t) {
    if (std::find(scope_.begin(), scope_.end(), t.text) != scope_.end()) {
      throw ParseError("variable '" + t.text + "' shadows an enclosing binding", t.line, t.col);
    }
    scope_.push_back(t.text);
  }

  Binding parse_binding() {
    Binding binding;
    if (accept(Tok::kLParen)) {
      const Token& a = expect(Tok::kIdent, "pair binding");
      expect(Tok::kComma, "pair binding");
      const Token& b = expect(Tok::kIdent, "pair binding");
      if (a.text == b.text) {
        throw ParseError("pair binding uses '" + a.text + "' twice", b.line, b.col);
      }
      expect(Tok::kRParen, "pair binding");
      expect(Tok::kKwIn, "pair binding");
      const Token& dom = expect(Tok::kIdent, "pair binding");
      if (dom.text == "pairs") {
        binding.domain = DomainKind::kUnorderedPairs;
      } else if (dom.text == "succ_pairs") {
        binding.domain = DomainKind::kSuccessorPairs;
      } else {
        throw ParseError("unknown pair domain '" + dom.text +
                             "' (expected pairs(L) or succ_pairs(L))",
                         dom.line, dom.col);
      }
      expect(Tok::kLParen, "pair binding");
      const Token& l = expect(Tok::kIdent, "pair binding");
      if (l.text != "L") {
        throw ParseError("expected 'L', got '" + l.text + "'", l.line, l.col);
      }
      expect(Tok::kRParen, "pair binding");
      bind_var(a);
      bind_var(b);
      binding.vars = {a.text, b.text};
    } else {
      const Token& v = expect(Tok::kIdent, "binding");
      expect(Tok::kKwIn, "binding");
      const Token& dom = expect(Tok::kIdent, "binding");
      if (dom.text != "L") {
        throw ParseError("unknown domain '" + dom.text + "' (expected L)", dom.line, dom.col);
      }
      bind_var(v);
      binding.domain = DomainKind::kAllLanelets;
      binding.vars = {v.text};
    }
    return binding;
  }

  FormulaPtr parse_iff() {
    FormulaPtr lhs = parse_impl();
    while (accept(Tok::kIff)) {
      lhs = Formula::binary(BinOpKind::kIff, std::move(lhs), parse_impl());
    }
    return lhs;
  }

  FormulaPtr parse_impl() {
    std::vector<FormulaPtr> operands;
    operands.push_back(parse_or());
    while (accept(Tok::kImplies)) operands.push_back(parse_or());
    FormulaPtr out = std::move(operands.back());
    for (size_t k = operands.size() - 1; k-- > 0;) {
      out = Formula::binary(BinOpKind::kImplies, std::move(operands[k]), std::move(out));
    }
    return out;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (accept(Tok::kOrOr)) {
      lhs = Formula::binary(BinOpKind::kOr, std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_unary();
    while (accept(Tok::kAndAnd)) {
      lhs = Formula::binary(BinOpKind::kAnd, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    DepthGuard guard(*this);
    if (accept(Tok::kBang)) return Formula::negation(parse_unary());
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    DepthGuard guard(*this);
    if (peek().kind == Tok::kKwForall || peek().kind == Tok::kKwExists) {
      const Token& t = peek();
      throw ParseError("quantifiers must be parenthesized here", t.line, t.col);
    }
    if (accept(Tok::kLParen)) {
      FormulaPtr inner = parse_formula();
      expect(Tok::kRParen, "parenthesized formula");
      return inner;
    }
    const Token& start = peek();
    Term first = parse_term();
    CmpOpKind op;
    if (try_cmp_op(op)) {
      Term second = parse_term();
      return Formula::comparison(op, std::move(first), std::move(second));
    }
    if (first.kind != TermKind::kCall) {
      throw ParseError("expected a comparison or a predicate application", start.line,
                       start.col);
    }
    return Formula::predicate(std::move(first.name), std::move(first.args));
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

  Term parse_term() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.kind == Tok::kNumber) {
      get();
      return Term::num(t.number);
    }
    if (t.kind != Tok::kIdent) {
      throw ParseError("syntax error in term: expected number, identifier, or '(', got " +
                           t.describe(),
                       t.line, t.col);
    }
    get();
    if (accept(Tok::kLParen)) {
      std::vector<Term> args;
      if (!accept(Tok::kRParen)) {
        args.push_back(parse_term());
        while (accept(Tok::kComma)) args.push_back(parse_term());
        expect(Tok::kRParen, "argument list");
      }
      return Term::call(t.text, std::move(args));
    }
    if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end()) {
      throw ParseError("unbound variable '" + t.text + "'", t.line, t.col);
    }
    return Term::var(t.text);
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
  int depth_ = 0;
  std::vector<std::string> scope_;
  int last_rule_line_ = 1;
  int last_rule_col_ = 1;
};

int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::kQuant: return 0;
    case Formula::Kind::kBinOp:
      switch (f.bin_op) {
        case BinOpKind::kIff: return 1;
        case BinOpKind::kImplies: return 2;
        case BinOpKind::kOr: return 3;
        case BinOpKind::kAnd: return 4;
      }
      return 0;
    case Formula::Kind::kNot: return 5;
    case Formula::Kind::kPred:
    case Formula::Kind::kCmp: return 6;
  }
  return 0;
}

const char* bin_op_text(BinOpKind op) {
  switch (op) {
    case BinOpKind::kAnd: return "&&";
    case BinOpKind::kOr: return "||";
    case BinOpKind::kImplies: return "=>";
    case BinOpKind::kIff: return "<=>";
  }
  return "?";
}

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

void print_term(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::kNum:
      out += format_double_fixed(t.value);
      return;
    case TermKind::kVar:
      out += t.name;
      return;
    case TermKind::kCall:
      out += t.name;
      out += '(';
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out += ", ";
        print_term(t.args[i], out);
      }
      out += ')';
      return;
  }
}

// min_prec: the lowest precedence printable in this position without parens.
void print_node(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind) {
    case Formula::Kind::kQuant: {
      out += f.quant == QuantKind::kForall ? "forall " : "exists ";
      if (f.binding.vars.size() == 2) {
        out += '(' + f.binding.vars[0] + ", " + f.binding.vars[1] + ')';
      } else {
        out += f.binding.vars[0];
      }
      out += " in ";
      out += domain_name(f.binding.domain);
      out += " . ";
      print_node(*f.body, 0, out);
      break;
    }
    case Formula::Kind::kNot:
      out += '!';
      print_node(*f.child, precedence(f), out);
      break;
    case Formula::Kind::kBinOp: {
      // Left-associative operators re-parse correctly when the right operand
      // binds strictly tighter; implication is the right-associative mirror.
      const bool right_assoc = f.bin_op == BinOpKind::kImplies;
      print_node(*f.lhs, right_assoc ? prec + 1 : prec, out);
      out += ' ';
      out += bin_op_text(f.bin_op);
      out += ' ';
      print_node(*f.rhs, right_assoc ? prec : prec + 1, out);
      break;
    }
    case Formula::Kind::kPred: {
      out += f.pred_name;
      out += '(';
      for (size_t i = 0; i < f.args.size(); ++i) {
        if (i > 0) out += ", ";
        print_term(f.args[i], out);
      }
      out += ')';
      break;
    }
    case Formula::Kind::kCmp:
      print_term(f.cmp_lhs, out);
      out += ' ';
      out += cmp_op_text(f.cmp_op);
      out += ' ';
      print_term(f.cmp_rhs, out);
      break;
  }
  if (parens) out += ')';
}

void collect_term_calls(const Term& t, std::set<std::pair<std::string, int>>& out) {
  if (t.kind == TermKind::kCall) {
    out.emplace(t.name, static_cast<int>(t.args.size()));
    for (const Term& a : t.args) collect_term_calls(a, out);
  }
}

void collect_functions(const Formula& f, std::set<std::pair<std::string, int>>& out) {
  switch (f.kind) {
    case Formula::Kind::kQuant:
      collect_functions(*f.body, out);
      return;
    case Formula::Kind::kNot:
      collect_functions(*f.child, out);
      return;
    case Formula::Kind::kBinOp:
      collect_functions(*f.lhs, out);
      collect_functions(*f.rhs, out);
      return;
    case Formula::Kind::kPred:
      out.emplace(f.pred_name, static_cast<int>(f.args.size()));
      for (const Term& a : f.args) collect_term_calls(a, out);
      return;
    case Formula::Kind::kCmp:
      collect_term_calls(f.cmp_lhs, out);
      collect_term_calls(f.cmp_rhs, out);
      return;
  }
}

}  // namespace

std::vector<RuleDecl> parse_ruleset(std::string_view source) {
  return RuleParser(source).parse_ruleset();
}

std::string print_formula(const Formula& formula) {
  std::string out;
  print_node(formula, 0, out);
  return out;
}

std::string print_rule(const RuleDecl& rule) {
  return "rule " + rule.name + ": " + print_formula(*rule.body) + ";";
}

std::set<std::pair<std::string, int>> free_functions(const Formula& formula) {
  std::set<std::pair<std::string, int>> out;
  collect_functions(formula, out);
  return out;
}

}  // namespace mapverify
