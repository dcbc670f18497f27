// Copyright 2026 The metric-audit Authors.
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

#include "metric_audit/config.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "metric_audit/error.h"
#include "support/fixtures.h"

namespace metric_audit {
namespace {

namespace fs = std::filesystem;
using ::testing::Contains;
using ::testing::HasSubstr;
using ::testing::IsEmpty;

std::vector<std::string> ParseProblems(const Json &json) {
  try {
    ParseConfig(json, "/base");
  } catch (const AuditError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    return e.problems();
  }
  return {};
}

TEST(ParseConfig, DefaultsAndRelativePaths) {
  const RunConfig c = ParseConfig(
      Json::parse(R"j({"paths":{"prompts":"p.jsonl","stopwords":"/abs/s.txt"}})j"),
      "/base/dir");
  EXPECT_EQ(c.prompts, fs::path("/base/dir/p.jsonl"));
  EXPECT_EQ(c.stopwords, fs::path("/abs/s.txt"));
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_DOUBLE_EQ(c.alpha, 0.05);
  EXPECT_DOUBLE_EQ(c.tau, 0.4);
  EXPECT_DOUBLE_EQ(c.shortcuts.yes_pct, 90.0);
  EXPECT_DOUBLE_EQ(c.shortcuts.first_pct, 90.0);
  EXPECT_DOUBLE_EQ(c.shortcuts.rho, 0.4);
  EXPECT_EQ(c.missing_policy, MissingWordPolicy::kLowest);
  EXPECT_EQ(c.yngve, YngveAggregate::kMean);
  EXPECT_FALSE(c.exact_p);
  EXPECT_FALSE(c.derangement);
}

TEST(ParseConfig, ReadsEveryField) {
  const RunConfig c = ParseConfig(Json::parse(R"j({
    "paths": {"prompts": "p", "questions": "q", "answers": "a"},
    "ablations": {"retrieval_qa": {"similarities": "r.jsonl"},
                  "text_only_qa": {"answers": "t.jsonl"}},
    "seed": 7, "alpha": 0.01, "tau": 0.5,
    "shortcut_thresholds": {"yes_pct": 80, "first_pct": 85, "rho": 0.3},
    "missing_policy": "omit", "yngve_aggregate": "max",
    "chance_trials": 50, "exact_p": true, "derangement": true,
    "svg": false, "out": "results"})j"),
                                  "/b");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_DOUBLE_EQ(c.alpha, 0.01);
  EXPECT_DOUBLE_EQ(c.tau, 0.5);
  EXPECT_DOUBLE_EQ(c.shortcuts.yes_pct, 80);
  EXPECT_DOUBLE_EQ(c.shortcuts.first_pct, 85);
  EXPECT_DOUBLE_EQ(c.shortcuts.rho, 0.3);
  EXPECT_EQ(c.missing_policy, MissingWordPolicy::kOmit);
  EXPECT_EQ(c.yngve, YngveAggregate::kMax);
  EXPECT_EQ(c.chance_trials, 50);
  EXPECT_TRUE(c.exact_p);
  EXPECT_TRUE(c.derangement);
  EXPECT_FALSE(c.svg);
  EXPECT_EQ(c.out, fs::path("/b/results"));
  EXPECT_EQ(c.ablations.at("retrieval_qa").similarities, fs::path("/b/r.jsonl"));
  EXPECT_EQ(c.ablations.at("text_only_qa").answers, fs::path("/b/t.jsonl"));
}

TEST(ParseConfig, CollectsEveryProblem) {
  const auto problems = ParseProblems(Json::parse(R"j({
    "paths": {"prompts": 3, "pictures": "x"},
    "ablations": {"shuffled_everything": {}, "shuffled_text": {}},
    "seed": -1, "alpha": "low", "exact_p": "yes",
    "missing_policy": "guess", "yngve_aggregate": "median",
    "shortcut_thresholds": {"yes": 90}, "colour": "red"})j"));
  EXPECT_THAT(problems, Contains(HasSubstr("prompts")));
  EXPECT_THAT(problems, Contains(HasSubstr("pictures")));
  EXPECT_THAT(problems, Contains(HasSubstr("shuffled_everything")));
  EXPECT_THAT(problems, Contains(HasSubstr("needs 'answers' or 'similarities'")));
  EXPECT_THAT(problems, Contains(HasSubstr("seed")));
  EXPECT_THAT(problems, Contains(HasSubstr("alpha")));
  EXPECT_THAT(problems, Contains(HasSubstr("exact_p")));
  EXPECT_THAT(problems, Contains(HasSubstr("guess")));
  EXPECT_THAT(problems, Contains(HasSubstr("median")));
  EXPECT_THAT(problems, Contains(HasSubstr("'yes'")));
  EXPECT_THAT(problems, Contains(HasSubstr("colour")));
  EXPECT_GE(problems.size(), 11u);
}

TEST(LoadConfig, InvalidJsonIsConfigError) {
  const fs::path dir = testing::ScratchDir("config_bad");
  testing::WriteText(dir / "run.json", "{ not json");
  try {
    LoadConfig(dir / "run.json");
    FAIL();
  } catch (const AuditError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_EQ(ExitCodeFor(e.kind()), 2);
  }
}

TEST(ApplyOverrides, FlagsWinThenEnvironmentSeed) {
  RunConfig c;
  c.seed = 1;
  ConfigOverrides o;
  o.seed = 9;
  o.alpha = 0.1;
  o.tau = 0.2;
  o.missing_policy = "zero";
  o.derangement = true;
  o.exact_p = true;
  o.out = "elsewhere";
  ApplyOverrides(c, o, "5");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_DOUBLE_EQ(c.alpha, 0.1);
  EXPECT_DOUBLE_EQ(c.tau, 0.2);
  EXPECT_EQ(c.missing_policy, MissingWordPolicy::kZero);
  EXPECT_TRUE(c.derangement);
  EXPECT_TRUE(c.exact_p);
  EXPECT_EQ(c.out, fs::path("elsewhere"));

  RunConfig from_file;
  from_file.seed = 1;
  ApplyOverrides(from_file, {}, "5");
  EXPECT_EQ(from_file.seed, 1u);

  RunConfig from_env;
  ApplyOverrides(from_env, {}, "5");
  EXPECT_EQ(from_env.seed, 5u);

  RunConfig none;
  ApplyOverrides(none, {}, nullptr);
  EXPECT_FALSE(none.seed.has_value());

  RunConfig bad;
  EXPECT_THROW(ApplyOverrides(bad, {}, "minus-one"), AuditError);
  ConfigOverrides bad_policy;
  bad_policy.missing_policy = "guess";
  EXPECT_THROW(ApplyOverrides(bad, bad_policy, nullptr), AuditError);
}

TEST(ConfigProblems, RangesPathsAndSeed) {
  const fs::path dir = testing::ScratchDir("config_paths");
  testing::WriteText(dir / "prompts.jsonl", "");
  RunConfig c;
  c.prompts = dir / "prompts.jsonl";
  c.seed = 3;
  EXPECT_THAT(ConfigProblems(c, true), IsEmpty());

  RunConfig bad;
  bad.alpha = 1.0;
  bad.tau = 1.5;
  bad.shortcuts.yes_pct = 101;
  bad.shortcuts.first_pct = -1;
  bad.shortcuts.rho = 2;
  bad.chance_trials = 0;
  bad.answers = dir / "answers.jsonl";
  bad.ablations["text_only_qa"].answers = dir / "missing.jsonl";
  const auto problems = ConfigProblems(bad, true);
  EXPECT_THAT(problems, Contains(HasSubstr("alpha")));
  EXPECT_THAT(problems, Contains(HasSubstr("tau")));
  EXPECT_THAT(problems, Contains(HasSubstr("yes_pct")));
  EXPECT_THAT(problems, Contains(HasSubstr("first_pct")));
  EXPECT_THAT(problems, Contains(HasSubstr("shortcut_thresholds.rho")));
  EXPECT_THAT(problems, Contains(HasSubstr("chance_trials")));
  EXPECT_THAT(problems, Contains(HasSubstr("seed is required")));
  EXPECT_THAT(problems, Contains(HasSubstr("paths.prompts is required")));
  EXPECT_THAT(problems, Contains(HasSubstr("answers.jsonl")));
  EXPECT_THAT(problems, Contains(HasSubstr("missing.jsonl")));
  EXPECT_THAT(problems, Contains(HasSubstr("needs paths.questions")));
  EXPECT_THAT(ConfigProblems(c, false), IsEmpty());
  try {
    ValidateConfig(bad, true);
    FAIL();
  } catch (const AuditError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_EQ(e.problems(), problems);
  }
}

TEST(ConfigJson, RecordsThresholdsAndOmitsOutput) {
  RunConfig c;
  c.seed = 11;
  c.out = "/tmp/somewhere";
  const Json j = ConfigJson(c);
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["alpha"], 0.05);
  EXPECT_EQ(j["tau"], 0.4);
  EXPECT_EQ(j["shortcut_thresholds"]["yes_pct"], 90.0);
  EXPECT_EQ(j["missing_policy"], "lowest");
  EXPECT_FALSE(j.contains("out"));
}

}  // namespace
}  // namespace metric_audit
