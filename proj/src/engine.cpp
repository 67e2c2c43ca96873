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

#include "mapverify/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "json.hpp"

namespace mapverify {

namespace {

size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 0; i < a.size(); ++i) {
    cur[0] = i + 1;
    for (size_t j = 0; j < b.size(); ++j) {
      const size_t subst = prev[j] + (a[i] == b[j] ? 0 : 1);
      cur[j + 1] = std::min({subst, prev[j + 1] + 1, cur[j] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::string nearest_name(const std::string& name, const std::vector<std::string>& candidates) {
  size_t best = 4;
  std::string out;
  for (const std::string& candidate : candidates) {
    const size_t d = edit_distance(name, candidate);
    if (d > 3) continue;
    if (out.empty() || d < best || (d == best && candidate < out)) {
      best = d;
      out = candidate;
    }
  }
  return out;
}

namespace {

struct Linker {
  const PredicateTable& table;
  std::vector<Diagnostic>& diags;
  const std::string& rule;
  const std::vector<std::string>& names;

  void report(std::string message) { diags.push_back({rule, std::move(message)}); }

  std::string suggestion(const std::string& name) const {
    const std::string near = nearest_name(name, names);
    return near.empty() ? std::string() : "; did you mean '" + near + "'?";
  }

  void visit_call_args(const std::vector<Term>& args) {
    for (const Term& arg : args) {
      if (arg.kind == TermKind::kCall) check_numeric_call(arg);
    }
  }

  void check_args(const std::string& name, const std::vector<PdlType>& want,
                  const std::vector<Term>& args) {
    if (args.size() != want.size()) {
      report("'" + name + "' expects " + std::to_string(want.size()) + " argument" +
             (want.size() == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
      visit_call_args(args);
      return;
    }
    for (size_t i = 0; i < want.size(); ++i) {
      const std::string what = "argument " + std::to_string(i + 1) + " of '" + name + "'";
      if (want[i] == PdlType::kLanelet) {
        if (args[i].kind != TermKind::kVar) {
          report(what + " must be a lanelet variable");
          if (args[i].kind == TermKind::kCall) check_numeric_call(args[i]);
        }
      } else {
        check_numeric_term(what, args[i]);
      }
    }
  }

  void check_numeric_term(const std::string& what, const Term& term) {
    switch (term.kind) {
      case TermKind::kNum:
        return;
      case TermKind::kVar:
        report(what + " must be a number, but '" + term.name + "' is a lanelet variable");
        return;
      case TermKind::kCall:
        check_numeric_call(term);
        return;
    }
  }

  void check_numeric_call(const Term& term) {
    if (const BuiltinSig* sig = BuiltinCatalog::standard().find(term.name)) {
      if (sig->result != PdlType::kNumber) {
        report("'" + term.name + "' is boolean and cannot be used as a number");
      }
      check_args(term.name, sig->params, term.args);
      return;
    }
    if (table.find(term.name) != nullptr) {
      report("predicate '" + term.name + "' cannot be used as a number");
      visit_call_args(term.args);
      return;
    }
    report("unknown function '" + term.name + "'" + suggestion(term.name));
    visit_call_args(term.args);
  }

  void check_pred(const Formula& f) {
    if (const BuiltinSig* sig = BuiltinCatalog::standard().find(f.pred_name)) {
      if (sig->result != PdlType::kBoolean) {
        report("'" + f.pred_name + "' is numeric; use it inside a comparison");
      }
      check_args(f.pred_name, sig->params, f.args);
      return;
    }
    if (const PredicateDef* def = table.find(f.pred_name)) {
      std::vector<PdlType> want;
      want.reserve(def->params.size());
      for (const PdlParam& p : def->params) want.push_back(p.type);
      check_args(f.pred_name, want, f.args);
      return;
    }
    report("unknown predicate '" + f.pred_name + "'" + suggestion(f.pred_name));
    visit_call_args(f.args);
  }

  void walk(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::kQuant:
        walk(*f.body);
        return;
      case Formula::Kind::kNot:
        walk(*f.child);
        return;
      case Formula::Kind::kBinOp:
        walk(*f.lhs);
        walk(*f.rhs);
        return;
      case Formula::Kind::kPred:
        check_pred(f);
        return;
      case Formula::Kind::kCmp:
        check_numeric_term("comparison operand", f.cmp_lhs);
        check_numeric_term("comparison operand", f.cmp_rhs);
        return;
    }
  }
};

}  // namespace

LinkResult link_ruleset(std::vector<RuleDecl> rules, PredicateTable predicates) {
  LinkResult result;
  std::vector<std::string> names;
  for (const BuiltinSig& sig : BuiltinCatalog::standard().all()) names.push_back(sig.name);
  for (std::string& name : predicates.names()) names.push_back(std::move(name));
  for (const RuleDecl& rule : rules) {
    Linker linker{predicates, result.diagnostics, rule.name, names};
    linker.walk(*rule.body);
  }
  result.ruleset.rules = std::move(rules);
  result.ruleset.predicates = std::move(predicates);
  return result;
}

LinkedRuleset link_or_throw(std::vector<RuleDecl> rules, PredicateTable predicates) {
  LinkResult result = link_ruleset(std::move(rules), std::move(predicates));
  if (!result.diagnostics.empty()) {
    throw ValidationError(render_diagnostics(result.diagnostics));
  }
  return std::move(result.ruleset);
}

LinkedRuleset load_ruleset(std::string_view rules_text, std::string_view predicates_text) {
  std::vector<RuleDecl> rules = parse_ruleset(rules_text);
  PredicateTable table;
  std::vector<Diagnostic> diags = typecheck_predicates(parse_predicates(predicates_text), table);
  if (!diags.empty()) throw ValidationError(render_diagnostics(diags));
  return link_or_throw(std::move(rules), std::move(table));
}

const char* rule_status_name(RuleStatus status) {
  return status == RuleStatus::kSatisfied ? "satisfied" : "violated";
}

namespace {

using Env = std::vector<std::pair<std::string, int64_t>>;

std::vector<std::vector<int64_t>> enumerate_domain(const LaneletNetwork& net,
                                                   const Binding& binding) {
  std::vector<std::vector<int64_t>> out;
  const std::vector<int64_t> ids = net.ids();  // ascending
  switch (binding.domain) {
    case DomainKind::kAllLanelets:
      for (int64_t id : ids) out.push_back({id});
      break;
    case DomainKind::kUnorderedPairs:
      for (size_t i = 0; i < ids.size(); ++i) {
        for (size_t j = i + 1; j < ids.size(); ++j) out.push_back({ids[i], ids[j]});
      }
      break;
    case DomainKind::kSuccessorPairs:
      for (int64_t id : ids) {
        std::vector<int64_t> succ = net.at(id).successors;
        std::sort(succ.begin(), succ.end());
        for (int64_t s : succ) out.push_back({id, s});
      }
      break;
  }
  return out;
}

struct Evaluator {
  const GeometryContext& geometry;
  const PredicateTable& table;
  WitnessRecorder* recorder = nullptr;

  int64_t lookup(const Env& env, const std::string& name) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw EvalError("unbound variable '" + name + "'");
  }

  Value eval_term(const Term& term, const Env& env) const {
    switch (term.kind) {
      case TermKind::kNum:
        return Value::of_number(term.value);
      case TermKind::kVar:
        return Value::of_lanelet(lookup(env, term.name));
      case TermKind::kCall: {
        std::vector<Value> args;
        args.reserve(term.args.size());
        for (const Term& t : term.args) args.push_back(eval_term(t, env));
        return eval_builtin(geometry, term.name, args, recorder);
      }
    }
    throw EvalError("malformed term");
  }

  bool eval_formula(const Formula& f, Env& env) const {
    switch (f.kind) {
      case Formula::Kind::kQuant: {
        const auto options = enumerate_domain(geometry.network(), f.binding);
        for (const auto& values : options) {
          for (size_t j = 0; j < f.binding.vars.size(); ++j) {
            env.emplace_back(f.binding.vars[j], values[j]);
          }
          const bool ok = eval_formula(*f.body, env);
          env.resize(env.size() - f.binding.vars.size());
          if (f.quant == QuantKind::kForall && !ok) return false;
          if (f.quant == QuantKind::kExists && ok) return true;
        }
        return f.quant == QuantKind::kForall;
      }
      case Formula::Kind::kNot:
        return !eval_formula(*f.child, env);
      case Formula::Kind::kBinOp:
        switch (f.bin_op) {
          case BinOpKind::kAnd:
            if (!eval_formula(*f.lhs, env)) return false;
            return eval_formula(*f.rhs, env);
          case BinOpKind::kOr:
            if (eval_formula(*f.lhs, env)) return true;
            return eval_formula(*f.rhs, env);
          case BinOpKind::kImplies:
            if (!eval_formula(*f.lhs, env)) return true;
            return eval_formula(*f.rhs, env);
          case BinOpKind::kIff: {
            // Both sides always run so their observations reach the recorder.
            const bool lhs = eval_formula(*f.lhs, env);
            const bool rhs = eval_formula(*f.rhs, env);
            return lhs == rhs;
          }
        }
        throw EvalError("malformed connective");
      case Formula::Kind::kPred: {
        std::vector<Value> args;
        args.reserve(f.args.size());
        for (const Term& t : f.args) args.push_back(eval_term(t, env));
        if (BuiltinCatalog::standard().find(f.pred_name) != nullptr) {
          return eval_builtin(geometry, f.pred_name, args, recorder).boolean;
        }
        const PredicateDef* def = table.find(f.pred_name);
        if (def == nullptr) throw EvalError("unknown predicate '" + f.pred_name + "'");
        PdlEnv penv{geometry, table, recorder};
        return eval_predicate(penv, *def, args);
      }
      case Formula::Kind::kCmp: {
        const Value lhs = eval_term(f.cmp_lhs, env);
        const Value rhs = eval_term(f.cmp_rhs, env);
        return eval_cmp(f.cmp_op, lhs.number, rhs.number);
      }
    }
    throw EvalError("malformed formula");
  }
};

}  // namespace

RuleResult evaluate_rule(const RuleDecl& rule, const PredicateTable& predicates,
                         const GeometryContext& geometry) {
  RuleResult result;
  result.rule = rule.name;

  // The reported unit is one assignment of the leading universal chain; the
  // remainder of the formula only contributes its truth value.
  std::vector<Binding> prefix;
  const Formula* inner = rule.body.get();
  while (inner->kind == Formula::Kind::kQuant && inner->quant == QuantKind::kForall) {
    prefix.push_back(inner->binding);
    inner = inner->body.get();
  }

  const Evaluator plain{geometry, predicates, nullptr};

  if (prefix.empty()) {
    result.domain_size = 1;
    Env env;
    if (plain.eval_formula(*rule.body, env)) return result;
    result.status = RuleStatus::kViolated;
    if (rule.body->kind != Formula::Kind::kQuant) {
      WitnessRecorder recorder;
      const Evaluator recording{geometry, predicates, &recorder};
      Env env2;
      recording.eval_formula(*rule.body, env2);
      result.violations.push_back({{}, recorder.entries()});
    }
    return result;
  }

  std::vector<std::vector<std::vector<int64_t>>> options;
  options.reserve(prefix.size());
  size_t total = 1;
  for (const Binding& binding : prefix) {
    options.push_back(enumerate_domain(geometry.network(), binding));
    total *= options.back().size();
  }
  result.domain_size = total;
  if (total == 0) return result;  // an empty domain satisfies the chain vacuously

  // Mixed-radix decode; ascending flat index is lexicographic binding order.
  auto decode = [&](size_t index) {
    std::vector<size_t> pick(prefix.size(), 0);
    for (size_t k = prefix.size(); k-- > 0;) {
      pick[k] = index % options[k].size();
      index /= options[k].size();
    }
    Env env;
    for (size_t k = 0; k < prefix.size(); ++k) {
      const auto& values = options[k][pick[k]];
      for (size_t j = 0; j < prefix[k].vars.size(); ++j) {
        env.emplace_back(prefix[k].vars[j], values[j]);
      }
    }
    return env;
  };

  std::vector<char> failed(total, 0);
  if (geometry.config().parallel && total > 1) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(total); ++i) {
      try {
        Env env = decode(static_cast<size_t>(i));
        failed[static_cast<size_t>(i)] = plain.eval_formula(*inner, env) ? 0 : 1;
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (size_t i = 0; i < total; ++i) {
      Env env = decode(i);
      failed[i] = plain.eval_formula(*inner, env) ? 0 : 1;
    }
  }

  for (size_t i = 0; i < total; ++i) {
    if (!failed[i]) continue;
    Env env = decode(i);
    WitnessRecorder recorder;
    const Evaluator recording{geometry, predicates, &recorder};
    recording.eval_formula(*inner, env);  // pure, so it retraces the same path
    result.violations.push_back({std::move(env), recorder.entries()});
  }
  if (!result.violations.empty()) result.status = RuleStatus::kViolated;
  return result;
}

VerificationReport evaluate_ruleset(const LinkedRuleset& ruleset,
                                    const GeometryContext& geometry, RunInfo run) {
  VerificationReport report;
  report.run = std::move(run);
  report.config = geometry.config();
  report.results.reserve(ruleset.rules.size());
  for (const RuleDecl& rule : ruleset.rules) {
    report.results.push_back(evaluate_rule(rule, ruleset.predicates, geometry));
  }
  std::sort(report.results.begin(), report.results.end(),
            [](const RuleResult& a, const RuleResult& b) { return a.rule < b.rule; });
  return report;
}

size_t count_violated(const VerificationReport& report) {
  size_t n = 0;
  for (const RuleResult& r : report.results) {
    if (r.status == RuleStatus::kViolated) ++n;
  }
  return n;
}

namespace {

nlohmann::ordered_json witness_value(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

std::string count_noun(size_t n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string witness_text(const WitnessEntry& w) {
  if (!std::isfinite(w.value)) return w.call + " = " + (w.value > 0 ? "inf" : "-inf");
  return w.call + " = " + format_double(w.value);
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["inputs"]["map"] = report.run.map_path;
  doc["inputs"]["rules"] = report.run.rules_path;
  doc["inputs"]["predicates"] = report.run.predicates_path;
  doc["config"] = nlohmann::ordered_json::parse(save_config(report.config));
  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const RuleResult& result : report.results) {
    nlohmann::ordered_json r;
    r["name"] = result.rule;
    r["status"] = rule_status_name(result.status);
    r["domain_size"] = result.domain_size;
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (const Violation& v : result.violations) {
      nlohmann::ordered_json item;
      item["binding"] = nlohmann::ordered_json::object();
      for (const auto& [var, id] : v.binding) item["binding"][var] = id;
      item["witnesses"] = nlohmann::ordered_json::array();
      for (const WitnessEntry& w : v.witnesses) {
        item["witnesses"].push_back({{"call", w.call}, {"value", witness_value(w.value)}});
      }
      violations.push_back(std::move(item));
    }
    r["violations"] = std::move(violations);
    rules.push_back(std::move(r));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

std::string report_summary(const VerificationReport& report) {
  std::string out;
  for (const RuleResult& result : report.results) {
    out += "rule " + result.rule + ": " + rule_status_name(result.status);
    if (result.status == RuleStatus::kViolated) {
      out += result.violations.empty()
                 ? " (no witness)"
                 : " (" + count_noun(result.violations.size(), "binding") + ")";
    }
    out += '\n';
    for (const Violation& v : result.violations) {
      out += "  ";
      if (!v.binding.empty()) {
        out += '[';
        for (size_t i = 0; i < v.binding.size(); ++i) {
          if (i > 0) out += ", ";
          out += v.binding[i].first + "=" + std::to_string(v.binding[i].second);
        }
        out += "] ";
      }
      for (size_t i = 0; i < v.witnesses.size(); ++i) {
        if (i > 0) out += "; ";
        out += witness_text(v.witnesses[i]);
      }
      out += '\n';
    }
  }
  const size_t violated = count_violated(report);
  const size_t satisfied = report.results.size() - violated;
  out += count_noun(satisfied, "rule") + " satisfied, " + count_noun(violated, "rule") +
         " violated\n";
  return out;
}

}  // namespace mapverify
