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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sstream>

#include "qaaug/generation.h"
#include "qaaug/io.h"
#include "qaaug/metrics.h"
#include "test_support.h"

namespace qaaug {
namespace {

using json = nlohmann::json;
using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int const code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    save_dataset(testing::toy_dataset(5, "covidqa"), dir_ / "covidqa.json");
    write_file_atomic(dir_ / "script.json", testing::agreeable_script_json());
  }
  std::string path(std::string const& name) const { return (dir_ / name).string(); }

  std::vector<std::string> augment_args() const {
    return {"augment",    "--train",    path("covidqa.json"), "--shots",
            "1",          "--multiplier", "1",                "--filter",
            "--seed",     "7",          "--out",              path("syn.json"),
            "--provider", "mock",       "--script",           path("script.json")};
  }

  TempDir dir_;
};

TEST_F(CliTest, AugmentHappyPath) {
  auto const r = run_cli(augment_args());
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto const syn = load_dataset(path("syn.json"));
  EXPECT_EQ(syn.qa_pair_count(), 5u);
  auto const stats = stats_from_json(read_file(path("syn.stats.json")));
  EXPECT_EQ(stats.qa_kept_after_filter, 5);
  auto const manifest = json::parse(read_file(path("syn.manifest.json")));
  EXPECT_EQ(manifest["command"], "augment");
  EXPECT_EQ(manifest["rng_seed"], 7);
  EXPECT_EQ(manifest["exit_code"], 0);
  EXPECT_EQ(manifest["config"]["generation"]["shots"], 1);
  EXPECT_EQ(manifest["inputs"]["train_sha256"],
            sha256_hex(read_file(path("covidqa.json"))));
  EXPECT_TRUE(std::filesystem::exists(path("syn.decisions.jsonl")));
  EXPECT_TRUE(std::filesystem::exists(path("syn.exchanges.jsonl")));
  EXPECT_FALSE(std::filesystem::exists(path(".qaaug.lock")));
}

TEST_F(CliTest, AugmentMergeWritesCombinedDataset) {
  auto args = augment_args();
  args.insert(args.end(), {"--merge", path("merged.json")});
  ASSERT_EQ(run_cli(args).code, cli::kExitOk);
  EXPECT_EQ(load_dataset(path("merged.json")).qa_pair_count(), 10u);
}

TEST_F(CliTest, MissingTrainFileNamesPath) {
  auto args = augment_args();
  args[2] = path("absent.json");
  auto const r = run_cli(args);
  EXPECT_EQ(r.code, cli::kExitFatal);
  EXPECT_NE(r.err.find(path("absent.json")), std::string::npos) << r.err;
}

TEST_F(CliTest, ThreeShotsIsUsageError) {
  auto args = augment_args();
  args[4] = "3";
  auto const r = run_cli(args);
  EXPECT_EQ(r.code, cli::kExitFatal);
  EXPECT_NE(r.err.find("--shots"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(path("syn.json")));
}

TEST_F(CliTest, MultiplierOutOfRangeIsUsageError) {
  auto args = augment_args();
  args[6] = "11";
  EXPECT_EQ(run_cli(args).code, cli::kExitFatal);
}

TEST_F(CliTest, ShortfallExitsTwo) {
  write_file_atomic(dir_ / "blank.json",
                    R"([{"kind": "context_gen", "responses": [""]}])");
  auto args = augment_args();
  args.back() = path("blank.json");
  auto const r = run_cli(args);
  EXPECT_EQ(r.code, cli::kExitShortfall) << r.err;
  auto const stats = stats_from_json(read_file(path("syn.stats.json")));
  EXPECT_TRUE(stats.shortfall);
  EXPECT_EQ(stats.contexts_generated, 0);
  EXPECT_EQ(json::parse(read_file(path("syn.manifest.json")))["exit_code"], 2);
}

TEST_F(CliTest, LockedDirectoryRefused) {
  write_file_atomic(dir_ / ".qaaug.lock", "1\n");
  auto const r = run_cli(augment_args());
  EXPECT_EQ(r.code, cli::kExitFatal);
  EXPECT_NE(r.err.find("lock"), std::string::npos);
}

TEST_F(CliTest, ConfigFileSuppliesOptions) {
  write_file_atomic(dir_ / "run.toml",
                    "[augment]\nshots = 2\nmultiplier = 2\nseed = 3\n");
  std::vector<std::string> args = {"--config",   path("run.toml"),
                                   "augment",    "--train", path("covidqa.json"),
                                   "--out",      path("syn.json"),
                                   "--provider", "mock", "--script",
                                   path("script.json"), "--seed", "4"};
  auto const r = run_cli(args);
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto const manifest = json::parse(read_file(path("syn.manifest.json")));
  EXPECT_EQ(manifest["config"]["generation"]["shots"], 2);
  EXPECT_EQ(manifest["config"]["generation"]["multiplier"], 2.0);
  EXPECT_EQ(manifest["rng_seed"], 4);
}

TEST_F(CliTest, EvalSelfPredictions) {
  auto const gold = load_dataset(path("covidqa.json"));
  json preds = json::object();
  for (auto const& p : gold.passages) {
    for (auto const& qa : p.qas) preds[qa.id] = qa.answers[0].text;
  }
  write_file_atomic(dir_ / "preds.json", preds.dump());
  auto const r = run_cli({"eval", "--gold", path("covidqa.json"),
                          "--predictions", path("preds.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Exact Match"), std::string::npos);
  EXPECT_NE(r.out.find("100.00"), std::string::npos);
  auto const f1_line = r.out.substr(r.out.find("F1"));
  EXPECT_NE(f1_line.find("100.00"), std::string::npos);
}

TEST_F(CliTest, EvalListsMissing) {
  write_file_atomic(dir_ / "preds.json", R"({"orig-0": "100 days"})");
  auto const r = run_cli({"eval", "--gold", path("covidqa.json"), "--predictions",
                          path("preds.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = json::parse(r.out);
  EXPECT_EQ(j["missing_predictions"].size(), 4u);
  EXPECT_EQ(j["missing_predictions"][0], "orig-1");
}

TEST_F(CliTest, EvalBaselineReport) {
  EvalReport base{25.81, 40.0, 100, {}};
  EvalReport treated{31.90, 45.0, 100, {}};
  write_file_atomic(dir_ / "base.json", report_to_json(base));
  write_file_atomic(dir_ / "treated.json", report_to_json(treated));
  auto const r = run_cli({"eval", "--report", path("treated.json"),
                          "--baseline-report", path("base.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("+23.60%"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalMalformedInputs) {
  write_file_atomic(dir_ / "bad.json", "{");
  EXPECT_EQ(run_cli({"eval", "--gold", path("covidqa.json"), "--predictions",
                     path("bad.json")})
                .code,
            cli::kExitFatal);
  EXPECT_EQ(run_cli({"eval"}).code, cli::kExitFatal);
}

TEST_F(CliTest, CostFromLog) {
  write_file_atomic(dir_ / "log.jsonl",
                    R"({"kind": "context_gen", "request_key": "ctx-0-r0", "prompt_tokens": 1000, "completion_tokens": 500})"
                    "\n");
  write_file_atomic(dir_ / "prices.json",
                    R"({"prompt_rate": "0.03", "completion_rate": "0.06"})");
  auto const r = run_cli({"cost", "--log", path("log.jsonl"), "--prices",
                          path("prices.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = json::parse(r.out);
  EXPECT_EQ(j["total_cost"], "0.06");
  EXPECT_EQ(j["total_prompt_tokens"], 1000);
}

TEST_F(CliTest, CostEmptyLog) {
  write_file_atomic(dir_ / "log.jsonl", "");
  auto const r = run_cli({"cost", "--log", path("log.jsonl"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["total_cost_nanos"], 0);
}

TEST_F(CliTest, CostPerPairUndefinedWhenNothingKept) {
  write_file_atomic(dir_ / "log.jsonl", "");
  auto const r = run_cli({"cost", "--log", path("log.jsonl"), "--per-pair",
                          "--kept", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("undefined"), std::string::npos);
}

TEST_F(CliTest, CostFromManifest) {
  ASSERT_EQ(run_cli(augment_args()).code, 0);
  auto const r = run_cli({"cost", "--manifest", path("syn.manifest.json"),
                          "--per-pair", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto const j = json::parse(r.out);
  auto const stats = stats_from_json(read_file(path("syn.stats.json")));
  EXPECT_EQ(j["total_cost_nanos"], stats.cost.total_cost.nanos());
  EXPECT_TRUE(j.contains("cost_per_kept_pair"));
}

TEST_F(CliTest, CostMissingInputs) {
  EXPECT_EQ(run_cli({"cost"}).code, cli::kExitFatal);
  EXPECT_EQ(run_cli({"cost", "--log", path("nope.jsonl")}).code, cli::kExitFatal);
}

TEST_F(CliTest, InspectShowsDecisions) {
  ASSERT_EQ(run_cli(augment_args()).code, 0);
  auto const r = run_cli({"inspect", "--dataset", path("syn.json"), "--decisions",
                          path("syn.decisions.jsonl"), "--sample", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    auto const j = json::parse(line);
    EXPECT_TRUE(j["decision"]["matched"].get<bool>());
    ++n;
  }
  EXPECT_EQ(n, 2);
}

TEST_F(CliTest, HelpAndUnknownCommand) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitFatal);
  EXPECT_EQ(run_cli({}).code, cli::kExitFatal);
}

}  // namespace
}  // namespace qaaug
