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

#include "metric_audit/audit.h"

#include <chrono>
#include <cmath>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "metric_audit/error.h"
#include "support/fixtures.h"

namespace metric_audit {
namespace {

using ::testing::HasSubstr;
using testing::MultipleChoice;
using testing::YesNo;

TEST(QuestionStats, QaStatsFixtureReproducesTable) {
  const auto start = std::chrono::steady_clock::now();
  const auto fixture = testing::MakeQaStatsFixture();
  ASSERT_EQ(fixture.questions.size(), 125000u);
  const QuestionStats s =
      ComputeQuestionStats(Metric::kTifa, "coco", fixture.questions);
  EXPECT_EQ(s.total, 125000u);
  EXPECT_EQ(s.yes_no, 71000u);
  EXPECT_EQ(s.gold_yes, 70787u);
  EXPECT_EQ(s.multiple_choice, 54000u);
  EXPECT_EQ(s.gold_first, 50760u);
  // Integer counts chosen so each percentage is exact at one decimal.
  EXPECT_DOUBLE_EQ(s.pct_yes_no, 56.8);
  EXPECT_DOUBLE_EQ(*s.pct_gold_yes_given_yn, 99.7);
  EXPECT_DOUBLE_EQ(*s.pct_gold_no_given_yn, 0.3);
  EXPECT_DOUBLE_EQ(s.pct_multiple_choice, 43.2);
  EXPECT_DOUBLE_EQ(*s.pct_gold_first_given_mc, 94.0);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count(),
            1.0);
}

TEST(QuestionStats, OnlyOneTypeLeavesOtherPercentagesEmpty) {
  const auto s = ComputeQuestionStats(
      Metric::kDsg, "coco",
      {YesNo("q1", "p", Metric::kDsg), YesNo("q2", "p", Metric::kDsg, "no")});
  EXPECT_DOUBLE_EQ(s.pct_yes_no, 100.0);
  EXPECT_DOUBLE_EQ(*s.pct_gold_yes_given_yn, 50.0);
  EXPECT_FALSE(s.pct_gold_first_given_mc.has_value());
  EXPECT_THROW(ComputeQuestionStats(Metric::kDsg, "coco", {}), AuditError);
}

TEST(QuestionStats, GroupsByMetricAndDatasetWithPooledRows) {
  Corpus c = testing::MakeCorpus(
      {testing::Prompt("a", "a dog", "coco"),
       testing::Prompt("b", "a cat", "drawbench")},
      {YesNo("q1", "a", Metric::kTifa), YesNo("q2", "b", Metric::kTifa, "no"),
       MultipleChoice("q3", "b", Metric::kDsg, {"x", "y"}, "y")});
  const auto groups = QuestionStatsByGroup(c);
  ASSERT_EQ(groups.size(), 5u);
  EXPECT_EQ(groups[0].dataset, "coco");
  EXPECT_EQ(groups[1].dataset, "drawbench");
  EXPECT_EQ(groups[2].metric, Metric::kDsg);
  EXPECT_EQ(groups[3].dataset, "all");
  EXPECT_EQ(groups[3].metric, Metric::kTifa);
  EXPECT_EQ(groups[3].total, 2u);
  EXPECT_DOUBLE_EQ(*groups[3].pct_gold_yes_given_yn, 50.0);
}

TEST(ShortcutFlags, QaStatsFixtureRaisesAllThree) {
  const auto fixture = testing::MakeQaStatsFixture();
  Corpus c = testing::MakeCorpus(fixture.prompts, fixture.questions,
                                 testing::StubAnswers(fixture.questions));
  const auto scores = ScoreCorpus(c);
  const auto cells = QuestionCountCorrelation(scores);
  ASSERT_EQ(cells.size(), 1u);
  ASSERT_TRUE(cells[0].result.has_value());
  EXPECT_LT(cells[0].result->rho, -0.4);
  EXPECT_TRUE(cells[0].result->significant);
  const auto stats =
      ComputeQuestionStats(Metric::kTifa, "coco", fixture.questions);
  const ShortcutReport r = ShortcutFlags(stats, std::nullopt, cells);
  EXPECT_TRUE(r.yes_bias);
  EXPECT_TRUE(r.first_answer_bias);
  EXPECT_TRUE(r.question_count_dependence);
  EXPECT_TRUE(r.Any());
  EXPECT_EQ(r.evidence.size(), 3u);
  const Json j = ToJson(r);
  EXPECT_EQ(j["flags"]["yes_bias"], true);
  EXPECT_EQ(j["flags"]["first_answer_bias"], true);
  EXPECT_EQ(j["flags"]["question_count_dependence"], true);
  EXPECT_DOUBLE_EQ(j["pct_gold_yes_given_yn"].get<double>(), 99.7);
}

QuestionStats StatsWith(double yes_pct, double first_pct) {
  QuestionStats s;
  s.pct_gold_yes_given_yn = yes_pct;
  s.pct_gold_first_given_mc = first_pct;
  return s;
}

TEST(ShortcutFlags, ThresholdsAreStrict) {
  EXPECT_FALSE(ShortcutFlags(StatsWith(90.0, 90.0), std::nullopt, {}).Any());
  const auto above = ShortcutFlags(StatsWith(90.1, 90.1), std::nullopt, {});
  EXPECT_TRUE(above.yes_bias);
  EXPECT_TRUE(above.first_answer_bias);
  ShortcutThresholds custom;
  custom.yes_pct = 99.8;
  EXPECT_FALSE(ShortcutFlags(StatsWith(99.7, 0), std::nullopt, {}, custom).yes_bias);
}

CorrelationCell CountCell(double rho, bool significant,
                          Metric metric = Metric::kTifa) {
  CorrelationCell cell;
  cell.source = "m";
  cell.metric = metric;
  cell.property = "n_questions";
  CorrelationResult r;
  r.rho = rho;
  r.n = 50;
  r.p_value = significant ? 0.001 : 0.2;
  r.significant = significant;
  r.strong = std::fabs(rho) >= 0.4;
  cell.result = r;
  return cell;
}

TEST(ShortcutFlags, CountDependenceNeedsSignificanceAndMagnitude) {
  const QuestionStats s = StatsWith(50, 50);
  EXPECT_TRUE(ShortcutFlags(s, std::nullopt, {CountCell(-0.4, true)})
                  .question_count_dependence);
  EXPECT_FALSE(ShortcutFlags(s, std::nullopt, {CountCell(-0.39, true)})
                   .question_count_dependence);
  EXPECT_FALSE(ShortcutFlags(s, std::nullopt, {CountCell(-0.9, false)})
                   .question_count_dependence);
  EXPECT_FALSE(ShortcutFlags(s, std::nullopt,
                             {CountCell(-0.9, true, Metric::kDsg)})
                   .question_count_dependence);
  const auto r = ShortcutFlags(
      s, std::nullopt, {CountCell(0.2, true), CountCell(-0.6, true)});
  EXPECT_DOUBLE_EQ(*r.strongest_count_rho, -0.6);
}

TEST(ShortcutFlags, BaselinesCarriedThrough) {
  BaselineSummary b;
  b.majority = 0.97;
  b.random_chance = 0.41;
  const auto r = ShortcutFlags(StatsWith(50, 50), b, {});
  EXPECT_DOUBLE_EQ(*r.majority_baseline, 0.97);
  EXPECT_DOUBLE_EQ(*r.random_chance, 0.41);
}

TEST(QuestionCountCorrelation, SkipsClipScoreAndNotesSmallGroups) {
  std::vector<MetricScore> scores = {
      {"p1", "m", Metric::kClipScore, 0.3, 0},
      {"p1", "m", Metric::kTifa, 1.0, 2},
      {"p2", "m", Metric::kTifa, 0.5, 4}};
  const auto cells = QuestionCountCorrelation(scores);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].note, "insufficient-n");
  scores.push_back({"p3", "m", Metric::kTifa, 0.5, 4});
  scores.push_back({"p4", "m", Metric::kTifa, 0.5, 4});
  scores[1].value = 0.5;
  EXPECT_EQ(QuestionCountCorrelation(scores)[0].note, "constant-input");
}

CorrelationCell PropertyCell(const std::string &source,
                             const std::string &property, double rho,
                             bool significant) {
  CorrelationCell c = CountCell(rho, significant);
  c.source = source;
  c.property = property;
  return c;
}

TEST(Rubric, SensitivityRule) {
  EXPECT_EQ(SensitivityFromCells({}), RubricValue::kNo);
  EXPECT_EQ(SensitivityFromCells({PropertyCell("a", "fk", 0.8, false)}),
            RubricValue::kNo);
  EXPECT_EQ(SensitivityFromCells({PropertyCell("a", "fk", -0.5, true)}),
            RubricValue::kYes);
  EXPECT_EQ(SensitivityFromCells({PropertyCell("a", "fk", 0.2, true)}),
            RubricValue::kMixed);
  EXPECT_EQ(SensitivityFromCells({PropertyCell("a", "fk", -0.5, true),
                                  PropertyCell("b", "fk", 0.5, true)}),
            RubricValue::kMixed);
  // Opposite signs on different properties are not a disagreement.
  EXPECT_EQ(SensitivityFromCells({PropertyCell("a", "fk", -0.5, true),
                                  PropertyCell("b", "length", 0.5, true)}),
            RubricValue::kYes);
}

TEST(Rubric, RowsPerMetric) {
  ShortcutReport flagged;
  flagged.metric = Metric::kTifa;
  flagged.yes_bias = true;
  ShortcutReport clean;
  clean.metric = Metric::kDsg;
  auto text = PropertyCell("a", "fk", -0.5, true);
  text.metric = Metric::kTifa;
  const auto rows = BuildRubric(
      {Metric::kClipScore, Metric::kTifa, Metric::kDsg}, {text}, {},
      {flagged, clean});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].robust_to_shortcuts, RubricValue::kNotApplicable);
  EXPECT_EQ(rows[0].sensitive_to_text, RubricValue::kNotApplicable);
  EXPECT_EQ(rows[1].sensitive_to_text, RubricValue::kYes);
  EXPECT_EQ(rows[1].robust_to_shortcuts, RubricValue::kNo);
  EXPECT_EQ(rows[2].robust_to_shortcuts, RubricValue::kYes);
  EXPECT_THAT(rows[1].evidence,
              ::testing::Contains(HasSubstr("shortcut_report.json")));
  EXPECT_EQ(RubricValueName(RubricValue::kNotApplicable), "n/a");
}

}  // namespace
}  // namespace metric_audit
