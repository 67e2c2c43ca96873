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

#include "mapverify/synthesis.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <ctime>

#include "json.hpp"
#include "mapverify/engine.hpp"
#include "mapverify/map_io.hpp"
#include "mapverify/xml.hpp"

namespace mapverify {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view text) {
  size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

/// Drops '#' comments and the lines they leave empty; keeps everything else.
std::string strip_comment_lines(std::string_view text) {
  std::string out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, (nl == std::string_view::npos ? text.size() : nl) - start);
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() &&
           (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      out.append(line);
      out += '\n';
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

std::string ensure_trailing_newline(std::string text) {
  if (!text.empty() && text.back() != '\n') text += '\n';
  return text;
}

constexpr const char* kConstraints =
    "Do not modify the ANTLR grammar. Output must comply with the existing "
    "syntax and directly integrate with the verification pipeline.\n"
    "\n"
    "New predicates use the predicate definition language:\n"
    "\n"
    "  file      = { pred_def } ;\n"
    "  pred_def  = \"pred\" IDENT \"(\" [ param { \",\" param } ] \")\" \":=\" expr \";\" ;\n"
    "  param     = IDENT \":\" ( \"lanelet\" | \"number\" ) ;\n"
    "  expr      = or_expr ;\n"
    "  or_expr   = and_expr { \"||\" and_expr } ;\n"
    "  and_expr  = unary { \"&&\" unary } ;\n"
    "  unary     = \"!\" unary | atom ;\n"
    "  atom      = \"(\" expr \")\" | term [ cmp_op term ] ;\n"
    "  term      = NUMBER | IDENT | IDENT \"(\" [ term { \",\" term } ] \")\" ;\n"
    "  cmp_op    = \"<\" | \"<=\" | \">\" | \">=\" | \"==\" | \"!=\" ;\n"
    "\n"
    "Predicate bodies may call builtin functions and previously defined\n"
    "predicates; there is no implication, quantification, or recursion at the\n"
    "predicate layer. Numeric literals are plain decimals without exponents.\n"
    "\n"
    "Reply with exactly three fenced blocks and nothing outside them:\n"
    "\n"
    "---BEGIN RULE---\n"
    "one rule declaration in the rule language\n"
    "---END RULE---\n"
    "---BEGIN PREDICATE---\n"
    "zero or more predicate definitions used by the rule\n"
    "---END PREDICATE---\n"
    "---BEGIN EXPLANATION---\n"
    "one short paragraph explaining what the rule checks\n"
    "---END EXPLANATION---\n"
    "\n"
    "Each fence must appear exactly once. The rule name must not collide with\n"
    "an existing rule, and predicate names must not collide with builtins or\n"
    "existing predicates.\n";

}  // namespace

ContextBundle ContextBundle::load(const fs::path& dir) {
  ContextBundle bundle;
  bundle.dir = dir;
  bundle.grammar_text = read_file(dir / "grammar.ebnf");
  bundle.ruleset_text = read_file(dir / "ruleset.rules");
  bundle.predicates_text = read_file(dir / "predicates.pdl");
  bundle.map_schema_text = read_file(dir / "map_schema.xml");
  return bundle;
}

const std::vector<SmokePair>& smoke_pairs() {
  static const std::vector<SmokePair> pairs = {
      {"slope", "slope_clean", "slope_defect"},
      {"step", "step_clean", "step_defect"},
      {"clearance", "clearance_clean", "clearance_defect"},
  };
  return pairs;
}

std::string build_prompt(const ContextBundle& context, const std::string& spec_text) {
  std::string out;
  out += "=== GRAMMAR ===\n";
  out += strip_comment_lines(context.grammar_text);
  out += "\n=== RULESET ===\n";
  out += strip_comment_lines(context.ruleset_text);
  out += "\n=== PREDICATES ===\n";
  out += BuiltinCatalog::standard().render();
  out += strip_comment_lines(context.predicates_text);
  out += "\n=== MAP SCHEMA ===\n";
  out += ensure_trailing_newline(xml_strip_comments(context.map_schema_text));
  out += "\n=== CONSTRAINTS ===\n";
  out += kConstraints;
  out += "\n=== RULE SPECIFICATION ===\n";
  out += ensure_trailing_newline(spec_text);
  return out;
}

bool parse_contract(const std::string& reply, Candidate& out, std::string& error) {
  struct Fence {
    const char* begin;
    const char* end;
    std::string Candidate::* field;
  };
  static const Fence fences[] = {
      {"---BEGIN RULE---", "---END RULE---", &Candidate::rule_text},
      {"---BEGIN PREDICATE---", "---END PREDICATE---", &Candidate::predicate_text},
      {"---BEGIN EXPLANATION---", "---END EXPLANATION---", &Candidate::explanation},
  };
  auto find_once = [&](const char* marker, size_t& pos) {
    pos = reply.find(marker);
    if (pos == std::string::npos) {
      error = std::string("missing fence '") + marker + "'";
      return false;
    }
    if (reply.find(marker, pos + 1) != std::string::npos) {
      error = std::string("fence '") + marker + "' appears more than once";
      return false;
    }
    return true;
  };
  size_t cursor = 0;
  for (const Fence& fence : fences) {
    size_t begin = 0, end = 0;
    if (!find_once(fence.begin, begin)) return false;
    if (!find_once(fence.end, end)) return false;
    const size_t content_start = begin + std::strlen(fence.begin);
    if (end < content_start || begin < cursor) {
      error = std::string("fence '") + fence.begin + "' is out of order";
      return false;
    }
    cursor = end + std::strlen(fence.end);
    out.*fence.field = trim(std::string_view(reply).substr(content_start, end - content_start));
  }
  return true;
}

const char* stage_name(ValidationStage stage) {
  switch (stage) {
    case ValidationStage::kContractParse: return "contract-parse";
    case ValidationStage::kRuleSyntax: return "rule-syntax";
    case ValidationStage::kPdlSyntax: return "pdl-syntax";
    case ValidationStage::kTypecheck: return "typecheck";
    case ValidationStage::kReferenceClosure: return "reference-closure";
    case ValidationStage::kSmokeTest: return "smoke-test";
    case ValidationStage::kAccepted: return "accepted";
  }
  return "?";
}

namespace {

const SmokePair* find_smoke_pair(const std::string& category) {
  for (const SmokePair& pair : smoke_pairs()) {
    if (category == pair.category) return &pair;
  }
  return nullptr;
}

}  // namespace

ValidationOutcome validate_reply(const ContextBundle& context, const std::string& category,
                                 const std::string& reply) {
  if (!category.empty() && find_smoke_pair(category) == nullptr) {
    throw ValidationError("unknown smoke category '" + category +
                          "' (expected slope, step, or clearance)");
  }

  ValidationOutcome out;
  std::string error;
  if (!parse_contract(reply, out.candidate, error)) {
    out.stage = ValidationStage::kContractParse;
    out.detail = std::move(error);
    return out;
  }

  std::vector<RuleDecl> rules;
  try {
    rules = parse_ruleset(out.candidate.rule_text);
  } catch (const ParseError& e) {
    out.stage = ValidationStage::kRuleSyntax;
    out.detail = e.what();
    return out;
  }
  if (rules.size() != 1) {
    out.stage = ValidationStage::kRuleSyntax;
    out.detail = "the RULE block must contain exactly one rule, got " +
                 std::to_string(rules.size());
    return out;
  }
  out.rule_name = rules[0].name;

  std::vector<PredicateDef> defs;
  try {
    defs = parse_predicates(out.candidate.predicate_text);
  } catch (const ParseError& e) {
    out.stage = ValidationStage::kPdlSyntax;
    out.detail = e.what();
    return out;
  }

  PredicateTable table;
  {
    std::vector<Diagnostic> base =
        typecheck_predicates(parse_predicates(context.predicates_text), table);
    if (!base.empty()) {
      throw ValidationError("registry predicates are unsound:\n" + render_diagnostics(base));
    }
  }
  std::vector<Diagnostic> diags = typecheck_predicates(std::move(defs), table);
  if (!diags.empty()) {
    out.stage = ValidationStage::kTypecheck;
    out.detail = render_diagnostics(diags);
    return out;
  }

  LinkResult linked = link_ruleset({rules[0]}, std::move(table));
  if (!linked.diagnostics.empty()) {
    out.stage = ValidationStage::kReferenceClosure;
    out.detail = render_diagnostics(linked.diagnostics);
    return out;
  }

  // The smoke stage exercises exactly the state an approval would commit, so
  // anything that would break the registry (a duplicate rule name included)
  // surfaces here before any file is touched.
  const std::string merged_rules = append_block(context.ruleset_text, out.candidate.rule_text);
  const std::string merged_pdl =
      append_block(context.predicates_text, out.candidate.predicate_text);
  LinkedRuleset merged;
  try {
    merged = load_ruleset(merged_rules, merged_pdl);
  } catch (const std::exception& e) {
    out.stage = ValidationStage::kSmokeTest;
    out.detail = std::string("the merged registry would not load: ") + e.what();
    return out;
  }
  const RuleDecl* rule = nullptr;
  for (const RuleDecl& r : merged.rules) {
    if (r.name == out.rule_name) rule = &r;
  }
  if (rule == nullptr) {
    throw ValidationError("rule '" + out.rule_name + "' vanished from the merged ruleset");
  }

  auto status_on = [&](const char* stem) {
    const LaneletNetwork network =
        read_map(read_file(context.smoke_dir() / (std::string(stem) + ".xml")));
    const GeometryContext geometry(network, EvalConfig{});
    return evaluate_rule(*rule, merged.predicates, geometry).status;
  };
  auto fail_smoke = [&](std::string detail) {
    out.stage = ValidationStage::kSmokeTest;
    out.detail = std::move(detail);
    return out;
  };

  if (!category.empty()) {
    const SmokePair& pair = *find_smoke_pair(category);
    if (status_on(pair.clean) != RuleStatus::kSatisfied) {
      return fail_smoke("rule '" + out.rule_name + "' flags clean smoke map '" +
                        pair.clean + "'");
    }
    if (status_on(pair.defect) != RuleStatus::kViolated) {
      return fail_smoke("rule '" + out.rule_name + "' does not flag defect smoke map '" +
                        std::string(pair.defect) + "'");
    }
  } else {
    bool any_defect_flagged = false;
    for (const SmokePair& pair : smoke_pairs()) {
      if (status_on(pair.clean) != RuleStatus::kSatisfied) {
        return fail_smoke("rule '" + out.rule_name + "' flags clean smoke map '" +
                          pair.clean + "'");
      }
      if (status_on(pair.defect) == RuleStatus::kViolated) any_defect_flagged = true;
    }
    if (!any_defect_flagged) {
      return fail_smoke("rule '" + out.rule_name + "' does not flag any defect smoke map");
    }
  }

  out.accepted = true;
  out.stage = ValidationStage::kAccepted;
  return out;
}

std::string pending_to_json(const PendingRequest& request) {
  nlohmann::ordered_json doc;
  doc["request_id"] = request.request_id;
  doc["category"] = request.category;
  doc["spec"] = request.spec_text;
  doc["rule"] = request.rule_text;
  doc["predicates"] = request.predicate_text;
  doc["explanation"] = request.explanation;
  doc["rule_name"] = request.rule_name;
  doc["verdict"] = request.verdict;
  return doc.dump(2) + "\n";
}

PendingRequest pending_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pending request: ") + e.what());
  }
  PendingRequest request;
  auto take = [&](const char* key, std::string& field) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      throw ValidationError(std::string("pending request: missing string field '") + key +
                            "'");
    }
    field = doc[key].get<std::string>();
  };
  take("request_id", request.request_id);
  take("category", request.category);
  take("spec", request.spec_text);
  take("rule", request.rule_text);
  take("predicates", request.predicate_text);
  take("explanation", request.explanation);
  take("rule_name", request.rule_name);
  take("verdict", request.verdict);
  if (request.verdict != "pending" && request.verdict != "rejected") {
    throw ValidationError("pending request: verdict must be 'pending' or 'rejected', got '" +
                          request.verdict + "'");
  }
  return request;
}

void save_pending(const ContextBundle& context, const PendingRequest& request) {
  atomic_write_file(context.pending_dir() / (request.request_id + ".json"),
                    pending_to_json(request));
}

PendingRequest load_pending(const fs::path& pending_dir, const std::string& request_id) {
  return pending_from_json(read_file(pending_dir / (request_id + ".json")));
}

std::vector<std::string> list_pending(const fs::path& pending_dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(pending_dir)) return out;
  for (const auto& entry : fs::directory_iterator(pending_dir)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SynthesisResult run_synthesis(const ContextBundle& context, const std::string& request_id,
                              const std::string& category, const std::string& spec_text,
                              CompletionClient& client) {
  SynthesisResult result;
  result.prompt = build_prompt(context, spec_text);
  result.reply = client.complete(result.prompt);
  result.outcome = validate_reply(context, category, result.reply);
  result.request.request_id = request_id;
  result.request.category = category;
  result.request.spec_text = spec_text;
  result.request.rule_text = result.outcome.candidate.rule_text;
  result.request.predicate_text = result.outcome.candidate.predicate_text;
  result.request.explanation = result.outcome.candidate.explanation;
  result.request.rule_name = result.outcome.rule_name;
  return result;
}

const char* registry_step_name(RegistryStep step) {
  switch (step) {
    case RegistryStep::kAfterLock: return "after_lock";
    case RegistryStep::kAfterBakRules: return "after_bak_rules";
    case RegistryStep::kAfterBakPdl: return "after_bak_pdl";
    case RegistryStep::kAfterBegin: return "after_begin";
    case RegistryStep::kAfterWriteRules: return "after_write_rules";
    case RegistryStep::kAfterWritePdl: return "after_write_pdl";
    case RegistryStep::kAfterCommit: return "after_commit";
    case RegistryStep::kAfterCleanup: return "after_cleanup";
  }
  return "?";
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

/// Durable single-line append; the line is on disk when this returns.
void append_line(const fs::path& path, const std::string& line) {
  const int fd = ::open(path.c_str(), O_CREAT | O_WRONLY | O_APPEND, 0644);
  if (fd < 0) {
    throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  }
  const std::string data = line + "\n";
  const bool ok = ::write(fd, data.data(), data.size()) ==
                      static_cast<ssize_t>(data.size()) &&
                  ::fsync(fd) == 0;
  ::close(fd);
  if (!ok) throw IoError("cannot append to " + path.string());
}

std::vector<std::vector<std::string>> journal_lines(const fs::path& path) {
  std::vector<std::vector<std::string>> out;
  if (!fs::exists(path)) return out;
  const std::string text = read_file(path);
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::vector<std::string> tokens;
    size_t field = start;
    while (field < nl) {
      size_t space = text.find(' ', field);
      if (space == std::string::npos || space > nl) space = nl;
      if (space > field) tokens.emplace_back(text.substr(field, space - field));
      field = space + 1;
    }
    if (!tokens.empty()) out.push_back(std::move(tokens));
    start = nl + 1;
  }
  return out;
}

/// Transaction id of a BEGIN with no later COMMIT or ROLLBACK, else empty.
std::string dangling_txid(const std::vector<std::vector<std::string>>& lines) {
  std::string dangling;
  for (const auto& tokens : lines) {
    if (tokens[0] == "BEGIN" && tokens.size() >= 2) {
      dangling = tokens[1];
    } else if ((tokens[0] == "COMMIT" || tokens[0] == "ROLLBACK") && tokens.size() >= 2 &&
               tokens[1] == dangling) {
      dangling.clear();
    }
  }
  return dangling;
}

}  // namespace

std::string append_block(const std::string& existing, const std::string& block) {
  const std::string body = trim(block);
  if (body.empty()) return existing;
  std::string out = existing;
  if (!out.empty() && out.back() != '\n') out += '\n';
  out += body;
  out += '\n';
  return out;
}

Registry::Registry(fs::path context_dir) : dir_(std::move(context_dir)) {}

void Registry::approve(const PendingRequest& request) {
  if (request.verdict == "rejected") {
    throw ValidationError("request '" + request.request_id +
                          "' was rejected; approval refused");
  }

  const std::string old_rules = read_file(rules_path());
  const std::string old_pdl = read_file(predicates_path());
  const std::string new_rules = append_block(old_rules, request.rule_text);
  const std::string new_pdl = append_block(old_pdl, request.predicate_text);
  // The registry invariant: its files always parse and link cleanly. Check
  // on the merged content before touching anything.
  load_ruleset(new_rules, new_pdl);

  const int fd = ::open(lock_path().c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw ValidationError("registry is locked; if no writer is running, recover it");
    }
    throw IoError("cannot create " + lock_path().string() + ": " + std::strerror(errno));
  }
  // Lock content identifies the writer; the file itself is the mutex and is
  // deliberately not released on error paths, exactly like a crashed writer.
  const std::string tag = request.request_id + "\n";
  (void)!::write(fd, tag.data(), tag.size());
  ::close(fd);
  step(RegistryStep::kAfterLock);

  atomic_write_file(rules_bak_path(), old_rules);
  step(RegistryStep::kAfterBakRules);
  atomic_write_file(predicates_bak_path(), old_pdl);
  step(RegistryStep::kAfterBakPdl);

  size_t begins = 0;
  for (const auto& tokens : journal_lines(journal_path())) {
    if (tokens[0] == "BEGIN") ++begins;
  }
  const std::string txid = "tx" + std::to_string(begins + 1);
  append_line(journal_path(), "BEGIN " + txid + " " + request.request_id);
  step(RegistryStep::kAfterBegin);

  atomic_write_file(rules_path(), new_rules);
  step(RegistryStep::kAfterWriteRules);
  atomic_write_file(predicates_path(), new_pdl);
  step(RegistryStep::kAfterWritePdl);

  append_line(journal_path(), "COMMIT " + txid + " " + utc_timestamp() + " " +
                                  request.request_id + " approve " + request.rule_name);
  step(RegistryStep::kAfterCommit);

  fs::remove(rules_bak_path());
  fs::remove(predicates_bak_path());
  fs::remove(lock_path());
  step(RegistryStep::kAfterCleanup);
}

void Registry::record_rejection(const std::string& request_id) {
  append_line(journal_path(), "DECISION " + utc_timestamp() + " " + request_id + " reject");
}

void Registry::recover(bool force) {
  const std::string dangling = dangling_txid(journal_lines(journal_path()));
  if (!dangling.empty()) {
    // The transaction never committed: the backups hold the authoritative
    // content (writes happen only after both backups exist).
    if (fs::exists(rules_bak_path())) fs::rename(rules_bak_path(), rules_path());
    if (fs::exists(predicates_bak_path())) {
      fs::rename(predicates_bak_path(), predicates_path());
    }
    append_line(journal_path(), "ROLLBACK " + dangling);
    fs::remove(lock_path());
    return;
  }
  const bool strays = fs::exists(lock_path()) || fs::exists(rules_bak_path()) ||
                      fs::exists(predicates_bak_path());
  if (!strays) return;
  if (!force) {
    throw ValidationError(
        "journal is clean but lock or backup files remain; they may belong to a live "
        "writer, pass force to clear them");
  }
  // Every journaled transaction completed, so the live files are
  // authoritative and the leftovers are safe to drop.
  fs::remove(rules_bak_path());
  fs::remove(predicates_bak_path());
  fs::remove(lock_path());
}

}  // namespace mapverify
