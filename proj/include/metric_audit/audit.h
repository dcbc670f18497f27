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

// Shortcut audit: how skewed the generated questions are, whether scores
// track the number of questions, and the desiderata rubric.

#ifndef METRIC_AUDIT_AUDIT_H_
#define METRIC_AUDIT_AUDIT_H_

#include <optional>
#include <string>
#include <vector>

#include "metric_audit/corpus.h"
#include "metric_audit/metrics.h"
#include "metric_audit/stats.h"

namespace metric_audit {

// Distribution of question types and gold answers for one metric and
// dataset. Percentages are in [0, 100].
struct QuestionStats {
  Metric metric = Metric::kTifa;
  std::string dataset;
  size_t total = 0;
  size_t yes_no = 0;
  size_t gold_yes = 0;  // among yes/no questions
  size_t gold_no = 0;
  size_t multiple_choice = 0;
  size_t gold_first = 0;  // among multiple-choice questions

  double pct_yes_no = 0.0;
  double pct_multiple_choice = 0.0;
  std::optional<double> pct_gold_yes_given_yn;  // empty without yes/no
  std::optional<double> pct_gold_no_given_yn;
  std::optional<double> pct_gold_first_given_mc;  // empty without MC
};

// Throws AuditError(kData) for an empty question set.
QuestionStats ComputeQuestionStats(Metric metric, const std::string &dataset,
                                   const std::vector<QuestionRecord> &questions);

// Dataset name used for statistics pooled over every dataset.
inline constexpr std::string_view kAllDatasets = "all";

// One entry per (metric, dataset) in the corpus, ordered by metric then
// dataset, followed by per-metric pooled entries when more than one dataset
// exists.
std::vector<QuestionStats> QuestionStatsByGroup(const Corpus &corpus);

// Spearman between n_questions and value for every (source, question
// metric) cell.
std::vector<CorrelationCell> QuestionCountCorrelation(
    const std::vector<MetricScore> &scores, const StatsOptions &options = {});

struct ShortcutThresholds {
  double yes_pct = 90.0;    // yes-bias when pct_gold_yes_given_yn > this
  double first_pct = 90.0;  // first-answer bias when pct_gold_first > this
  double rho = 0.4;         // question-count dependence when |rho| >= this
                            // and the correlation is significant
};

struct ShortcutReport {
  Metric metric = Metric::kTifa;
  bool yes_bias = false;
  bool first_answer_bias = false;
  bool question_count_dependence = false;
  ShortcutThresholds thresholds;
  std::optional<double> pct_gold_yes_given_yn;
  std::optional<double> pct_gold_first_given_mc;
  std::optional<double> strongest_count_rho;  // significant cell, max |rho|
  std::optional<double> majority_baseline;
  std::optional<double> random_chance;
  std::vector<std::string> evidence;

  bool Any() const {
    return yes_bias || first_answer_bias || question_count_dependence;
  }
};

ShortcutReport ShortcutFlags(const QuestionStats &stats,
                             const std::optional<BaselineSummary> &baseline,
                             const std::vector<CorrelationCell> &count_cells,
                             const ShortcutThresholds &thresholds = {});

Json ToJson(const ShortcutReport &report);

enum class RubricValue { kYes, kNo, kMixed, kNotApplicable };

std::string_view RubricValueName(RubricValue value);

struct RubricRow {
  Metric metric = Metric::kTifa;
  RubricValue sensitive_to_text = RubricValue::kNotApplicable;
  RubricValue sensitive_to_image = RubricValue::kNotApplicable;
  RubricValue robust_to_shortcuts = RubricValue::kNotApplicable;
  std::vector<std::string> evidence;
};

// Sensitivity from property correlations of one metric:
//   no significant cell                          -> no
//   significant cells of one property disagree
//   in sign across sources                       -> mixed
//   some significant cell is also strong         -> yes
//   otherwise (significant but weak)             -> mixed
RubricValue SensitivityFromCells(const std::vector<CorrelationCell> &cells);

// Rows for every metric with scores. `text_cells` and `image_cells` hold
// linguistic and visual correlation cells; `shortcuts` may omit metrics
// without questions, which then read as not applicable.
std::vector<RubricRow> BuildRubric(
    const std::vector<Metric> &metrics,
    const std::vector<CorrelationCell> &text_cells,
    const std::vector<CorrelationCell> &image_cells,
    const std::vector<ShortcutReport> &shortcuts);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_AUDIT_H_
