// Copyright 2026 The qaaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaaug/cli.h"

#include <fcntl.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "qaaug/cost.h"
#include "qaaug/dataset.h"
#include "qaaug/generation.h"
#include "qaaug/io.h"
#include "qaaug/llm_client.h"
#include "qaaug/metrics.h"
#include "qaaug/openai_provider.h"
#include "qaaug/prompt.h"
#include "qaaug/quality.h"
#include "qaaug/random.h"
#include "qaaug/scripted_mock.h"

namespace qaaug::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr char const* kVersion = "0.1.0";

/// GPT-4 (8K context) list price per 1,000 tokens, used when no price file
/// is given.
PriceTable default_prices() {
  return PriceTable{30'000, 60'000, "USD"};
}

std::string utc_timestamp() {
  auto const now = std::chrono::system_clock::now();
  auto const t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Exclusive per-directory lock held for the lifetime of a run.
class DirectoryLock {
 public:
  explicit DirectoryLock(fs::path dir) : path_(std::move(dir) / ".qaaug.lock") {
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
      throw IoError("output directory is locked by another run (" +
                    path_.string() + " exists)");
    }
    auto const pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
  }
  ~DirectoryLock() {
    std::error_code ignored;
    fs::remove(path_, ignored);
  }
  DirectoryLock(DirectoryLock const&) = delete;
  DirectoryLock& operator=(DirectoryLock const&) = delete;

 private:
  fs::path path_;
};

fs::path with_suffix(fs::path const& base, std::string const& suffix) {
  auto p = base;
  p.replace_extension();
  p += suffix;
  return p;
}

ordered_json nullable(std::string const& s) {
  return s.empty() ? ordered_json() : ordered_json(s);
}

// --- augment ---------------------------------------------------------------

struct AugmentOptions {
  std::string train;
  std::string out;
  std::string merge;
  std::string stats;
  std::string manifest;
  std::string decisions;
  std::string exchange_log;
  std::string provider = "openai";
  std::string script;
  std::string templates;
  std::string prices;
  std::string api_base = std::string(kDefaultApiBase);
  std::string api_key_env = std::string(kDefaultApiKeyEnv);
  std::string match_rule = "exact";
  std::int64_t timeout_ms = 60'000;
  GenerationConfig gen;
  LlmConfig llm;
  bool json_output = false;
};

void add_augment(CLI::App& app, AugmentOptions& o) {
  auto* cmd = app.add_subcommand(
      "augment", "Generate a synthetic QA dataset from a training set");
  cmd->add_option("--train", o.train, "Training dataset (canonical JSON)")
      ->required();
  cmd->add_option("--out", o.out, "Synthetic dataset output path")->required();
  cmd->add_option("--merge", o.merge,
                  "Also write training + synthetic pairs to this path");
  cmd->add_option("--stats", o.stats, "Stats sidecar (default <out>.stats.json)");
  cmd->add_option("--manifest", o.manifest,
                  "Run manifest (default <out>.manifest.json)");
  cmd->add_option("--decisions", o.decisions,
                  "Filter audit JSON lines (default <out>.decisions.jsonl)");
  cmd->add_option("--exchange-log", o.exchange_log,
                  "Per-request usage log (default <out>.exchanges.jsonl)");
  cmd->add_option("--shots", o.gen.shots, "Exemplars per prompt (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cmd->add_option("--multiplier", o.gen.multiplier,
                  "Synthetic size as a multiple of the training set, in QA pairs")
      ->check(CLI::Range(1.0, 10.0))
      ->capture_default_str();
  cmd->add_option("--qa-per-context", o.gen.qa_per_context,
                  "QA pairs requested per synthetic context")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", o.gen.rng_seed, "Random seed")->capture_default_str();
  cmd->add_option("--parse-retry-limit", o.gen.parse_retry_limit,
                  "Retries for blank or nonconforming completions")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_flag("--filter", o.gen.apply_roundtrip_filter,
                "Apply round-trip filtration");
  cmd->add_option("--match-rule", o.match_rule,
                  "Round-trip match rule: exact or f1")
      ->check(CLI::IsMember({"exact", "f1", "normalized_exact", "token_f1"}))
      ->capture_default_str();
  cmd->add_option("--f1-threshold", o.gen.filter.f1_threshold,
                  "Minimum token F1 for the f1 match rule")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_flag("--dedupe-contexts", o.gen.dedupe_contexts,
                "Drop duplicate synthetic contexts before QA generation");
  cmd->add_option("--provider", o.provider, "openai or mock")
      ->check(CLI::IsMember({"openai", "mock"}))
      ->capture_default_str();
  cmd->add_option("--script", o.script, "Mock provider script (JSON)");
  cmd->add_option("--templates", o.templates, "Prompt template file (JSON)");
  cmd->add_option("--prices", o.prices, "Price table file (JSON)");
  cmd->add_option("--api-base", o.api_base, "Chat-completions base URL")
      ->capture_default_str();
  cmd->add_option("--api-key-env", o.api_key_env,
                  "Environment variable holding the API key")
      ->capture_default_str();
  cmd->add_option("--model", o.llm.model_name, "Model name")
      ->capture_default_str();
  cmd->add_option("--temperature", o.llm.temperature,
                  "Temperature for generation prompts")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--reanswer-temperature", o.llm.reanswer_temperature,
                  "Temperature for round-trip re-answers")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--max-tokens", o.llm.max_output_tokens,
                  "Completion token limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--timeout-ms", o.timeout_ms, "Per-request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-retries", o.llm.max_retries,
                  "Retries for transient provider failures")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--concurrency", o.llm.max_concurrent_requests,
                  "Maximum requests in flight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--json", o.json_output, "Print the run stats as JSON");
}

ordered_json generation_config_json(GenerationConfig const& g) {
  ordered_json j;
  j["shots"] = g.shots;
  j["multiplier"] = g.multiplier;
  j["qa_per_context"] = g.qa_per_context;
  j["rng_seed"] = g.rng_seed;
  j["parse_retry_limit"] = g.parse_retry_limit;
  j["apply_roundtrip_filter"] = g.apply_roundtrip_filter;
  j["match_rule"] = to_string(g.filter.rule);
  j["f1_threshold"] = g.filter.f1_threshold;
  j["dedupe_contexts"] = g.dedupe_contexts;
  return j;
}

ordered_json llm_config_json(LlmConfig const& l, AugmentOptions const& o) {
  ordered_json j;
  j["provider"] = o.provider;
  j["api_base"] = o.provider == "openai" ? ordered_json(o.api_base) : ordered_json();
  j["model_name"] = l.model_name;
  j["temperature"] = l.temperature;
  j["reanswer_temperature"] = l.reanswer_temperature;
  j["max_output_tokens"] = l.max_output_tokens;
  j["request_timeout_ms"] = l.request_timeout.count();
  j["max_retries"] = l.max_retries;
  j["max_concurrent_requests"] = l.max_concurrent_requests;
  return j;
}

std::string stats_to_text(GenerationRunStats const& s) {
  std::ostringstream os;
  auto row = [&](char const* name, std::int64_t v) {
    os << std::left << std::setw(30) << name << std::right << std::setw(10) << v
       << "\n";
  };
  row("contexts_requested", s.contexts_requested);
  row("contexts_generated", s.contexts_generated);
  if (s.contexts_discarded_duplicate > 0) {
    row("contexts_discarded_duplicate", s.contexts_discarded_duplicate);
  }
  row("qa_requested", s.qa_requested);
  row("qa_parsed", s.qa_parsed);
  row("qa_aligned", s.qa_aligned);
  row("qa_kept_after_filter", s.qa_kept_after_filter);
  row("qa_discarded_parse", s.qa_discarded_parse);
  row("qa_discarded_alignment", s.qa_discarded_alignment);
  row("qa_discarded_filter", s.qa_discarded_filter);
  if (s.shortfall) os << "WARNING: context generation fell short of target\n";
  os << "\n" << cost_to_text(s.cost);
  return os.str();
}

int cmd_augment(AugmentOptions o, std::ostream& out, std::ostream& err) {
  auto const started_at = utc_timestamp();
  o.gen.filter.rule = match_rule_from_string(o.match_rule);
  o.llm.request_timeout = std::chrono::milliseconds(o.timeout_ms);
  o.gen.validate();
  o.llm.validate();

  fs::path const out_path(o.out);
  if (o.stats.empty()) o.stats = with_suffix(out_path, ".stats.json").string();
  if (o.manifest.empty()) {
    o.manifest = with_suffix(out_path, ".manifest.json").string();
  }
  if (o.decisions.empty() && o.gen.apply_roundtrip_filter) {
    o.decisions = with_suffix(out_path, ".decisions.jsonl").string();
  }
  if (o.exchange_log.empty()) {
    o.exchange_log = with_suffix(out_path, ".exchanges.jsonl").string();
  }

  auto const train_text = read_file(o.train);
  auto const train = parse_dataset(train_text);
  auto const templates = o.templates.empty()
                             ? default_templates()
                             : parse_templates(read_file(o.templates));
  auto const prices = o.prices.empty() ? default_prices()
                                       : parse_price_table(read_file(o.prices));

  std::shared_ptr<ChatProvider> provider;
  std::string script_sha;
  if (o.provider == "mock") {
    if (o.script.empty()) {
      throw std::invalid_argument("--provider mock requires --script");
    }
    auto const script_text = read_file(o.script);
    script_sha = sha256_hex(script_text);
    provider = scripted_mock(ScriptedMock::parse_script(script_text));
  } else {
    provider = make_openai_provider(o.api_base, o.api_key_env);
  }

  auto const out_dir =
      out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  if (!fs::is_directory(out_dir)) {
    throw IoError("output directory '" + out_dir.string() + "' does not exist");
  }
  DirectoryLock lock(out_dir);

  LlmClient client(provider, o.llm);
  auto result = run_augmentation(train, o.gen, client, templates, prices);

  save_dataset(result.synthetic, o.out);
  if (!o.merge.empty()) {
    save_dataset(merge_datasets(train, result.synthetic), o.merge);
  }
  write_file_atomic(o.stats, stats_to_json(result.stats));
  if (!o.decisions.empty()) {
    std::string lines;
    for (auto const& d : result.decisions) lines += decision_to_json_line(d) + "\n";
    write_file_atomic(o.decisions, lines);
  }
  {
    std::string lines;
    for (auto const& ex : result.exchanges) lines += exchange_to_json_line(ex) + "\n";
    write_file_atomic(o.exchange_log, lines);
  }

  int const exit_code = result.stats.shortfall ? kExitShortfall : kExitOk;

  ordered_json manifest;
  manifest["tool"] = "qaaug";
  manifest["version"] = kVersion;
  manifest["command"] = "augment";
  manifest["started_at"] = started_at;
  manifest["finished_at"] = utc_timestamp();
  manifest["rng_seed"] = o.gen.rng_seed;
  manifest["inputs"] = {{"train", o.train},
                        {"train_sha256", sha256_hex(train_text)},
                        {"templates", nullable(o.templates)},
                        {"prices", nullable(o.prices)},
                        {"script", nullable(o.script)},
                        {"script_sha256", nullable(script_sha)}};
  manifest["outputs"] = {{"synthetic", o.out},
                         {"merged", nullable(o.merge)},
                         {"stats", o.stats},
                         {"decisions", nullable(o.decisions)},
                         {"exchange_log", o.exchange_log}};
  ordered_json config;
  config["generation"] = generation_config_json(o.gen);
  config["llm"] = llm_config_json(o.llm, o);
  config["prices"] = ordered_json::parse(serialize_price_table(prices));
  config["template_sha256"] = sha256_hex(serialize_templates(templates));
  manifest["config"] = std::move(config);
  manifest["stats"] = ordered_json::parse(stats_to_json(result.stats));
  manifest["exit_code"] = exit_code;
  write_file_atomic(o.manifest, manifest.dump(2) + "\n");

  if (o.json_output) {
    out << stats_to_json(result.stats);
  } else {
    out << "wrote " << result.synthetic.qa_pair_count() << " synthetic QA pairs to "
        << o.out << "\n\n"
        << stats_to_text(result.stats);
  }
  if (result.stats.shortfall) {
    err << "warning: generated " << result.stats.contexts_generated << " of "
        << result.stats.contexts_requested << " requested contexts\n";
  }
  return exit_code;
}

// --- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string gold;
  std::string predictions;
  std::string report;
  std::string baseline_report;
  std::string report_out;
  bool json_output = false;
};

void add_eval(CLI::App& app, EvalOptions& o) {
  auto* cmd = app.add_subcommand(
      "eval", "Score predictions with Exact Match and token F1");
  auto* gold = cmd->add_option("--gold", o.gold, "Gold dataset (canonical JSON)");
  auto* preds = cmd->add_option("--predictions", o.predictions,
                                "Predictions JSON {qa_id: answer}");
  auto* report = cmd->add_option(
      "--report", o.report, "Use a saved report instead of --gold/--predictions");
  gold->needs(preds);
  preds->needs(gold);
  report->excludes(gold)->excludes(preds);
  cmd->add_option("--baseline-report", o.baseline_report,
                  "Report to compare against (prints relative improvement)");
  cmd->add_option("--report-out", o.report_out, "Write the report JSON here");
  cmd->add_flag("--json", o.json_output, "Print JSON instead of a table");
}

std::string signed_percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f%%", v);
  return buf;
}

int cmd_eval(EvalOptions const& o, std::ostream& out, std::ostream&) {
  EvalReport report;
  if (!o.report.empty()) {
    report = report_from_json(read_file(o.report));
  } else if (!o.gold.empty()) {
    auto const gold = load_dataset(o.gold);
    auto const preds = parse_predictions(read_file(o.predictions));
    report = evaluate(gold, preds);
  } else {
    throw std::invalid_argument("eval needs --gold and --predictions, or --report");
  }
  if (!o.report_out.empty()) write_file_atomic(o.report_out, report_to_json(report));

  std::optional<EvalReport> baseline;
  if (!o.baseline_report.empty()) {
    baseline = report_from_json(read_file(o.baseline_report));
  }

  if (o.json_output) {
    auto j = ordered_json::parse(report_to_json(report));
    if (baseline) {
      j["relative_improvement"] = {
          {"exact_match", relative_improvement(baseline->exact_match, report.exact_match)},
          {"f1", relative_improvement(baseline->f1, report.f1)}};
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << report_to_text(report);
  if (baseline) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-20s %10.2f -> %.2f  (%s)\n",
                  "EM vs baseline", baseline->exact_match, report.exact_match,
                  signed_percent(relative_improvement(baseline->exact_match,
                                                      report.exact_match))
                      .c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-20s %10.2f -> %.2f  (%s)\n",
                  "F1 vs baseline", baseline->f1, report.f1,
                  signed_percent(relative_improvement(baseline->f1, report.f1))
                      .c_str());
    out << buf;
  }
  return kExitOk;
}

// --- cost ------------------------------------------------------------------

struct CostOptions {
  std::string manifest;
  std::string log;
  std::string prices;
  std::int64_t kept = -1;
  bool per_pair = false;
  bool json_output = false;
};

void add_cost(CLI::App& app, CostOptions& o) {
  auto* cmd = app.add_subcommand("cost", "Report token usage and annotation cost");
  auto* manifest = cmd->add_option("--manifest", o.manifest, "Run manifest");
  auto* log = cmd->add_option("--log", o.log, "Exchange log (JSON lines)");
  manifest->excludes(log);
  cmd->add_option("--prices", o.prices,
                  "Price table (default: the manifest's, else built-in)");
  cmd->add_flag("--per-pair", o.per_pair,
                "Also print cost per kept synthetic QA pair");
  cmd->add_option("--kept", o.kept,
                  "Kept pair count for --per-pair with --log")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--json", o.json_output, "Print JSON instead of a table");
}

int cmd_cost(CostOptions const& o, std::ostream& out, std::ostream&) {
  if (o.manifest.empty() && o.log.empty()) {
    throw std::invalid_argument("cost needs --manifest or --log");
  }
  std::optional<PriceTable> prices;
  if (!o.prices.empty()) prices = parse_price_table(read_file(o.prices));

  CostReport report;
  std::optional<std::int64_t> kept;
  if (o.kept >= 0) kept = o.kept;
  if (!o.manifest.empty()) {
    json m;
    try {
      m = json::parse(read_file(o.manifest));
      if (!prices) {
        prices = parse_price_table(m.at("config").at("prices").dump());
      }
      auto const stats = stats_from_json(m.at("stats").dump());
      report = price_usage(stats.cost.per_stage, *prices);
      if (!kept) kept = stats.qa_kept_after_filter;
    } catch (json::exception const& e) {
      throw std::invalid_argument("malformed manifest '" + o.manifest +
                                  "': " + e.what());
    }
  } else {
    if (!prices) prices = default_prices();
    std::istringstream lines(read_file(o.log));
    std::vector<LlmExchange> exchanges;
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      exchanges.push_back(exchange_from_json_line(line));
    }
    report = accumulate_cost(exchanges, *prices);
  }

  std::optional<std::string> per_pair;
  if (o.per_pair) {
    if (!kept) {
      throw std::invalid_argument("--per-pair with --log needs --kept");
    }
    if (*kept == 0) {
      per_pair = "undefined";
    } else {
      auto const nanos = report.total_cost.nanos();
      per_pair = Money::from_nanos((nanos + *kept / 2) / *kept).to_string();
    }
  }

  if (o.json_output) {
    auto j = ordered_json::parse(cost_to_json(report));
    if (per_pair) j["cost_per_kept_pair"] = *per_pair;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << cost_to_text(report);
  if (per_pair) {
    out << "cost per kept pair: " << *per_pair;
    if (*per_pair != "undefined") out << " " << report.currency_code;
    out << "\n";
  }
  return kExitOk;
}

// --- inspect ---------------------------------------------------------------

struct InspectOptions {
  std::string dataset;
  std::string decisions;
  std::size_t sample = 5;
  std::uint64_t seed = 0;
  bool json_output = false;
};

void add_inspect(CLI::App& app, InspectOptions& o) {
  auto* cmd = app.add_subcommand(
      "inspect", "Print a random sample of synthetic pairs with their filter decisions");
  cmd->add_option("--dataset", o.dataset, "Synthetic or merged dataset")
      ->required();
  cmd->add_option("--decisions", o.decisions, "Filter audit file (JSON lines)");
  cmd->add_option("--sample", o.sample, "Number of pairs to show")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  cmd->add_flag("--json", o.json_output, "Print JSON lines");
}

int cmd_inspect(InspectOptions const& o, std::ostream& out, std::ostream&) {
  auto const dataset = load_dataset(o.dataset);
  std::map<std::string, FilterDecision> decisions;
  std::size_t matched = 0;
  if (!o.decisions.empty()) {
    std::istringstream lines(read_file(o.decisions));
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto d = decision_from_json_line(line);
      if (d.matched) ++matched;
      auto id = d.qa_id;
      decisions.emplace(std::move(id), std::move(d));
    }
  }

  std::vector<ContextQa> pool;
  for (auto const& p : dataset.passages) {
    for (auto const& qa : p.qas) {
      if (qa.provenance == Provenance::kSynthetic) pool.push_back({p.context, qa});
    }
  }
  std::mt19937_64 rng(o.seed);
  auto const n = std::min(o.sample, pool.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
  }
  pool.resize(n);

  if (!o.json_output) {
    out << "synthetic pairs: " << dataset.qa_pair_count() << " total, showing "
        << n << "\n";
    if (!decisions.empty()) {
      out << "filter decisions: " << matched << " kept of " << decisions.size()
          << "\n";
    }
  }
  for (auto const& item : pool) {
    auto it = decisions.find(item.qa.id);
    if (o.json_output) {
      ordered_json j;
      j["id"] = item.qa.id;
      j["question"] = item.qa.question;
      j["answer"] = item.qa.answers.front().text;
      j["answer_start"] = item.qa.answers.front().answer_start;
      j["context"] = item.context;
      j["decision"] = it == decisions.end()
                          ? ordered_json()
                          : ordered_json::parse(decision_to_json_line(it->second));
      out << j.dump() << "\n";
      continue;
    }
    out << "\n[" << item.qa.id << "]\n";
    out << "  context:  " << item.context << "\n";
    out << "  question: " << item.qa.question << "\n";
    out << "  answer:   " << item.qa.answers.front().text << " (offset "
        << item.qa.answers.front().answer_start << ")\n";
    if (it != decisions.end()) {
      auto const& d = it->second;
      out << "  re-answer: " << d.reanswer << " -> "
          << (d.matched ? "kept" : "discarded") << " ("
          << to_string(d.match_rule);
      if (d.f1_value) out << ", f1=" << *d.f1_value;
      if (d.provider_error) out << ", provider error: " << *d.provider_error;
      out << ")\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Synthetic extractive-QA augmentation toolkit", "qaaug"};
  app.set_config("--config", "", "TOML/INI file supplying any option; flags override");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  AugmentOptions augment;
  EvalOptions eval;
  CostOptions cost;
  InspectOptions inspect;
  add_augment(app, augment);
  add_eval(app, eval);
  add_cost(app, cost);
  add_inspect(app, inspect);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::Success const& e) {
    return app.exit(e, out, err);
  } catch (CLI::ParseError const& e) {
    app.exit(e, out, err);
    return kExitFatal;
  }

  try {
    if (app.got_subcommand("augment")) return cmd_augment(augment, out, err);
    if (app.got_subcommand("eval")) return cmd_eval(eval, out, err);
    if (app.got_subcommand("cost")) return cmd_cost(cost, out, err);
    if (app.got_subcommand("inspect")) return cmd_inspect(inspect, out, err);
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace qaaug::cli
