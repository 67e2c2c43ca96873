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

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mapverify/completion.hpp"

namespace mapverify {

// Rule synthesis: a natural-language requirement goes out as a prompt built
// from the live registry, and the reply comes back through a fixed output
// contract and a staged validation pipeline. Nothing reaches the registry
// files except through the journaled transaction in Registry::approve.

/// Fixed-name files of a synthesis context directory:
///   grammar.ebnf     rule language grammar, shown verbatim in prompts
///   ruleset.rules    live ruleset (the registry)
///   predicates.pdl   live predicate definitions (the registry)
///   map_schema.xml   annotated example of the map dialect
///   smoke/           six micro maps: {slope,step,clearance}_{clean,defect}.xml
///   replies/         canned completion replies for replay mode
///   pending/         synthesis requests awaiting review
struct ContextBundle {
  std::filesystem::path dir;
  std::string grammar_text;
  std::string ruleset_text;
  std::string predicates_text;
  std::string map_schema_text;

  static ContextBundle load(const std::filesystem::path& dir);

  std::filesystem::path smoke_dir() const { return dir / "smoke"; }
  std::filesystem::path replies_dir() const { return dir / "replies"; }
  std::filesystem::path pending_dir() const { return dir / "pending"; }
};

/// The smoke categories and their per-category micro map file stems.
struct SmokePair {
  const char* category;
  const char* clean;
  const char* defect;
};
const std::vector<SmokePair>& smoke_pairs();

/// Assembles the full prompt: grammar, live ruleset, builtin catalog plus
/// live predicates, map schema, the fixed constraints block, and the
/// requirement text. Comment lines are stripped from the embedded files.
std::string build_prompt(const ContextBundle& context, const std::string& spec_text);

/// The three fenced blocks a reply must contain, each exactly once.
struct Candidate {
  std::string rule_text;       // one rule declaration
  std::string predicate_text;  // zero or more predicate definitions
  std::string explanation;
};

/// Extracts the fenced blocks. Returns false with a message when a fence is
/// missing, duplicated, or out of order.
bool parse_contract(const std::string& reply, Candidate& out, std::string& error);

/// Validation stages, in the order they run; the first failure stops the
/// pipeline.
enum class ValidationStage {
  kContractParse,
  kRuleSyntax,
  kPdlSyntax,
  kTypecheck,
  kReferenceClosure,
  kSmokeTest,
  kAccepted,
};

const char* stage_name(ValidationStage stage);

struct ValidationOutcome {
  bool accepted = false;
  ValidationStage stage = ValidationStage::kContractParse;  // first failed stage
  std::string detail;
  Candidate candidate;    // filled once the contract parses
  std::string rule_name;  // filled once the rule parses
};

/// Runs the staged pipeline against the live registry state in `context`.
/// `category` selects one smoke pair ("slope", "step", "clearance"); empty
/// means the rule must hold on every clean smoke map and flag at least one
/// defect map. Throws only on broken context, never on a bad candidate.
ValidationOutcome validate_reply(const ContextBundle& context, const std::string& category,
                                 const std::string& reply);

/// One synthesis request as persisted under pending/ for review.
struct PendingRequest {
  std::string request_id;
  std::string category;  // may be empty
  std::string spec_text;
  std::string rule_text;
  std::string predicate_text;
  std::string explanation;
  std::string rule_name;
  std::string verdict = "pending";  // "pending" or "rejected"
};

std::string pending_to_json(const PendingRequest& request);
PendingRequest pending_from_json(std::string_view json_text);

void save_pending(const ContextBundle& context, const PendingRequest& request);
PendingRequest load_pending(const std::filesystem::path& pending_dir,
                            const std::string& request_id);
/// Request ids of every file in pending/, sorted.
std::vector<std::string> list_pending(const std::filesystem::path& pending_dir);

struct SynthesisResult {
  ValidationOutcome outcome;
  PendingRequest request;  // ready to save or approve when outcome.accepted
  std::string prompt;
  std::string reply;
};

/// Prompt, completion, validation; never touches the registry files.
SynthesisResult run_synthesis(const ContextBundle& context, const std::string& request_id,
                              const std::string& category, const std::string& spec_text,
                              CompletionClient& client);

/// Step boundaries of the approve transaction, in execution order. The test
/// hook fires after each one, so a throwing hook simulates a crash between
/// any two steps.
enum class RegistryStep {
  kAfterLock,
  kAfterBakRules,
  kAfterBakPdl,
  kAfterBegin,
  kAfterWriteRules,
  kAfterWritePdl,
  kAfterCommit,
  kAfterCleanup,
};

inline constexpr int kRegistryStepCount = 8;

const char* registry_step_name(RegistryStep step);

/// The registry files plus the journal and recovery protocol. An approve is
/// a transaction: lock, back up both files, journal BEGIN, write both files,
/// journal COMMIT, clean up. A crash at any boundary leaves either the old
/// content (before COMMIT) or the new content (after), and recover() returns
/// the directory to a clean state in both cases.
class Registry {
 public:
  explicit Registry(std::filesystem::path context_dir);

  std::filesystem::path rules_path() const { return dir_ / "ruleset.rules"; }
  std::filesystem::path predicates_path() const { return dir_ / "predicates.pdl"; }
  std::filesystem::path journal_path() const { return dir_ / "journal.log"; }
  std::filesystem::path lock_path() const { return dir_ / "registry.lock"; }
  std::filesystem::path rules_bak_path() const { return dir_ / "ruleset.rules.bak"; }
  std::filesystem::path predicates_bak_path() const { return dir_ / "predicates.pdl.bak"; }

  bool locked() const { return std::filesystem::exists(lock_path()); }

  using StepHook = std::function<void(RegistryStep)>;
  /// Test seam; fires after each completed transaction step.
  void set_step_hook(StepHook hook) { hook_ = std::move(hook); }

  /// Appends the request's rule and predicates to the registry files under
  /// the journaled transaction. Refuses rejected requests, a held lock, and
  /// candidates whose merged result does not parse and link cleanly.
  void approve(const PendingRequest& request);

  /// Journals a DECISION line recording a rejection.
  void record_rejection(const std::string& request_id);

  /// Rolls back a transaction that journaled BEGIN but never COMMIT,
  /// restoring both backups, journaling ROLLBACK, and releasing the lock.
  /// With a clean journal, leftover lock or backup files cannot be told
  /// apart from a live writer, so they are removed only with force.
  void recover(bool force = false);

 private:
  void step(RegistryStep s) {
    if (hook_) hook_(s);
  }

  std::filesystem::path dir_;
  StepHook hook_;
};

/// Exact merge the registry applies on approval: existing text, a newline
/// separator when needed, the new block, a trailing newline. Empty blocks
/// leave the text unchanged.
std::string append_block(const std::string& existing, const std::string& block);

}  // namespace mapverify
