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

#include <ctime>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "mapverify/engine.hpp"
#include "mapverify/eval_harness.hpp"
#include "mapverify/map_io.hpp"
#include "mapverify/scenario_gen.hpp"
#include "mapverify/synthesis.hpp"

// Exit codes across all subcommands: 0 success, 1 negative verdict
// (violations found, metrics below target), 2 usage or processing error.

namespace {

namespace fs = std::filesystem;
using namespace mapverify;

EvalConfig make_config(const std::string& config_path, bool serial) {
  EvalConfig config;
  if (!config_path.empty()) config = load_config(read_file(config_path));
  if (serial) config.parallel = false;
  return config;
}

LinkedRuleset load_rules(const std::string& rules_path, const std::string& predicates_path) {
  return load_ruleset(read_file(rules_path), read_file(predicates_path));
}

struct VerifyOpts {
  std::string map, rules, predicates, config, report;
  bool serial = false;
};

int run_verify(const VerifyOpts& o) {
  const EvalConfig config = make_config(o.config, o.serial);
  const LinkedRuleset ruleset = load_rules(o.rules, o.predicates);
  const LaneletNetwork network = read_map(read_file(o.map));
  const GeometryContext geometry(network, config);
  const VerificationReport report =
      evaluate_ruleset(ruleset, geometry, RunInfo{o.map, o.rules, o.predicates});
  if (!o.report.empty()) atomic_write_file(o.report, report_to_json(report));
  std::cout << report_summary(report);
  return count_violated(report) == 0 ? 0 : 1;
}

struct ConvertOpts {
  std::string opendrive, out;
  double step = kDefaultSampleStep;
};

int run_convert(const ConvertOpts& o) {
  const LaneletNetwork network = convert_document(read_opendrive(read_file(o.opendrive)), o.step);
  atomic_write_file(o.out, write_map(network));
  std::cout << "wrote " << network.size() << " lanelets to " << o.out << "\n";
  return 0;
}

struct GenOpts {
  std::string out;
  uint64_t seed = 0;
  int clean = 0;
  int defective = 0;
  bool serial = false;
};

int run_gen(const GenOpts& o) {
  const Manifest manifest = build_corpus(o.out, o.seed, o.clean, o.defective, !o.serial);
  std::cout << "wrote " << manifest.entries.size() << " maps and a manifest to " << o.out
            << "\n";
  return 0;
}

struct EvalOpts {
  std::string corpus, rules, predicates, config, report;
  bool serial = false;
};

int run_eval_cmd(const EvalOpts& o) {
  const EvalConfig config = make_config(o.config, o.serial);
  const LinkedRuleset ruleset = load_rules(o.rules, o.predicates);
  const MetricsReport metrics =
      run_eval(o.corpus, ruleset, CategoryMapping::standard(), config);
  if (!o.report.empty()) atomic_write_file(o.report, metrics_to_json(metrics));
  std::cout << metrics_table(metrics);
  return metrics_pass(metrics) ? 0 : 1;
}

struct LintOpts {
  std::string rules, predicates;
};

int run_lint(const LintOpts& o) {
  const LinkedRuleset ruleset = load_rules(o.rules, o.predicates);
  std::cout << "ok: " << ruleset.rules.size() << " rules, "
            << ruleset.predicates.defs().size() << " predicates\n";
  return 0;
}

struct SynthOpts {
  std::string spec, spec_file, context, replay, category;
  bool live = false;
  bool pending = false;
};

int run_synthesize(const SynthOpts& o) {
  const ContextBundle context = ContextBundle::load(o.context);
  const std::string spec_text = o.spec_file.empty() ? o.spec : read_file(o.spec_file);

  std::unique_ptr<CompletionClient> client;
  std::string request_id;
  if (!o.replay.empty()) {
    client = std::make_unique<ReplayClient>(context.replies_dir(), o.replay);
    request_id = o.replay;
  } else {
    client = std::make_unique<HttpClient>(HttpClient::from_env());
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    request_id = std::string("live-") + stamp;
  }

  const SynthesisResult result =
      run_synthesis(context, request_id, o.category, spec_text, *client);
  if (!result.outcome.accepted) {
    std::cout << "rejected at " << stage_name(result.outcome.stage) << ": "
              << result.outcome.detail << "\n";
    return 2;
  }
  if (o.pending) {
    save_pending(context, result.request);
    std::cout << "accepted: rule '" << result.request.rule_name
              << "' saved as pending request '" << request_id << "'\n";
  } else {
    Registry registry(context.dir);
    registry.approve(result.request);
    std::cout << "accepted: rule '" << result.request.rule_name
              << "' appended to the registry\n";
  }
  return 0;
}

struct ReviewOpts {
  std::string pending, approve, reject;
  bool recover = false;
  bool force = false;
};

fs::path context_of(const fs::path& pending_dir) {
  fs::path normal = fs::absolute(pending_dir).lexically_normal();
  if (normal.filename().empty()) normal = normal.parent_path();
  return normal.parent_path();
}

void print_request(const PendingRequest& request) {
  std::cout << "request '" << request.request_id << "' (" << request.verdict << ")";
  if (!request.category.empty()) std::cout << ", category " << request.category;
  std::cout << "\n  spec: " << request.spec_text << "\n  rule: " << request.rule_text
            << "\n  predicates: "
            << (request.predicate_text.empty() ? "(none)" : request.predicate_text)
            << "\n  explanation: " << request.explanation << "\n";
}

int run_review(const ReviewOpts& o) {
  const fs::path pending_dir = o.pending;
  Registry registry(context_of(pending_dir));

  if (o.recover) {
    registry.recover(o.force);
    std::cout << "registry recovered\n";
    return 0;
  }

  auto approve = [&](const std::string& id) {
    const PendingRequest request = load_pending(pending_dir, id);
    registry.approve(request);
    fs::remove(pending_dir / (id + ".json"));
    std::cout << "approved '" << id << "': rule '" << request.rule_name
              << "' appended to the registry\n";
  };
  auto reject = [&](const std::string& id) {
    PendingRequest request = load_pending(pending_dir, id);
    request.verdict = "rejected";
    atomic_write_file(pending_dir / (id + ".json"), pending_to_json(request));
    registry.record_rejection(id);
    std::cout << "rejected '" << id << "'\n";
  };

  if (!o.approve.empty()) {
    approve(o.approve);
    return 0;
  }
  if (!o.reject.empty()) {
    reject(o.reject);
    return 0;
  }

  const std::vector<std::string> ids = list_pending(pending_dir);
  if (ids.empty()) {
    std::cout << "no pending requests\n";
    return 0;
  }
  for (const std::string& id : ids) {
    print_request(load_pending(pending_dir, id));
    std::cout << "approve, reject, skip, or quit [a/r/s/q]? " << std::flush;
    std::string answer;
    if (!std::getline(std::cin, answer)) break;
    if (answer == "a") {
      approve(id);
    } else if (answer == "r") {
      reject(id);
    } else if (answer == "q") {
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolchain for lanelet maps with elevation"};
  app.require_subcommand(1);

  VerifyOpts verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a map against a ruleset");
  verify_cmd->add_option("--map", verify.map, "map file")->required();
  verify_cmd->add_option("--rules", verify.rules, "rule file")->required();
  verify_cmd->add_option("--predicates", verify.predicates, "predicate file")->required();
  verify_cmd->add_option("--config", verify.config, "threshold config JSON");
  verify_cmd->add_option("--report", verify.report, "write the JSON report here");
  verify_cmd->add_flag("--serial", verify.serial, "disable parallel evaluation");

  ConvertOpts convert;
  CLI::App* convert_cmd = app.add_subcommand("convert", "convert an OpenDRIVE file to a map");
  convert_cmd->add_option("--opendrive", convert.opendrive, "OpenDRIVE input")->required();
  convert_cmd->add_option("--out", convert.out, "map output path")->required();
  convert_cmd->add_option("--step", convert.step, "sampling step in meters")
      ->check(CLI::PositiveNumber);

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a labeled synthetic corpus");
  gen_cmd->add_option("--seed", gen.seed, "corpus seed")->required();
  gen_cmd->add_option("--clean", gen.clean, "defect-free map count")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--defective", gen.defective, "defective map count")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out", gen.out, "corpus directory")->required();
  gen_cmd->add_flag("--serial", gen.serial, "disable parallel generation");

  EvalOpts eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "score a ruleset against a corpus");
  eval_cmd->add_option("--corpus", eval.corpus, "corpus directory")->required();
  eval_cmd->add_option("--rules", eval.rules, "rule file")->required();
  eval_cmd->add_option("--predicates", eval.predicates, "predicate file")->required();
  eval_cmd->add_option("--config", eval.config, "threshold config JSON");
  eval_cmd->add_option("--report", eval.report, "write the metrics JSON here");
  eval_cmd->add_flag("--serial", eval.serial, "disable parallel evaluation");

  LintOpts lint;
  CLI::App* lint_cmd = app.add_subcommand("lint", "parse, typecheck, and link a ruleset");
  lint_cmd->add_option("--rules", lint.rules, "rule file")->required();
  lint_cmd->add_option("--predicates", lint.predicates, "predicate file")->required();

  SynthOpts synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synthesize", "turn a requirement into a validated rule");
  CLI::Option* spec_opt = synth_cmd->add_option("--spec", synth.spec, "requirement text");
  CLI::Option* spec_file_opt =
      synth_cmd->add_option("--spec-file", synth.spec_file, "requirement text file");
  spec_opt->excludes(spec_file_opt);
  spec_file_opt->excludes(spec_opt);
  synth_cmd->add_option("--context", synth.context, "synthesis context directory")
      ->required();
  CLI::Option* replay_opt =
      synth_cmd->add_option("--replay", synth.replay, "canned reply fixture name");
  CLI::Option* live_opt =
      synth_cmd->add_flag("--live", synth.live, "call the configured completion endpoint");
  replay_opt->excludes(live_opt);
  live_opt->excludes(replay_opt);
  synth_cmd->add_option("--category", synth.category,
                        "smoke category: slope, step, or clearance");
  synth_cmd->add_flag("--pending", synth.pending,
                      "save an accepted rule for review instead of approving it");

  ReviewOpts review;
  CLI::App* review_cmd = app.add_subcommand("review", "review pending synthesis requests");
  review_cmd->add_option("--pending", review.pending, "pending directory")->required();
  review_cmd->add_option("--approve", review.approve, "approve this request id");
  review_cmd->add_option("--reject", review.reject, "reject this request id");
  review_cmd->add_flag("--recover", review.recover, "recover the registry after a crash");
  review_cmd->add_flag("--force", review.force,
                       "with --recover, also clear leftovers of completed transactions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify_cmd->parsed()) return run_verify(verify);
    if (convert_cmd->parsed()) return run_convert(convert);
    if (gen_cmd->parsed()) return run_gen(gen);
    if (eval_cmd->parsed()) return run_eval_cmd(eval);
    if (lint_cmd->parsed()) return run_lint(lint);
    if (synth_cmd->parsed()) {
      if (synth.spec.empty() && synth.spec_file.empty()) {
        std::cerr << "error: one of --spec or --spec-file is required\n";
        return 2;
      }
      if (synth.replay.empty() && !synth.live) {
        std::cerr << "error: choose --replay FIXTURE or --live\n";
        return 2;
      }
      return run_synthesize(synth);
    }
    if (review_cmd->parsed()) return run_review(review);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
