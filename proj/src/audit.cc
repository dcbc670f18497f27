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

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "metric_audit/error.h"
#include "metric_audit/random.h"

namespace metric_audit {
namespace {

double Percent(size_t part, size_t whole) {
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Json OptionalNumber(const std::optional<double> &v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

namespace {

template <typename Range, typename Get>
QuestionStats StatsOf(Metric metric, const std::string &dataset,
                      const Range &questions, Get get) {
  if (questions.empty()) {
    ThrowData("question statistics for an empty group (" +
              std::string(MetricName(metric)) + ", " + dataset + ")");
  }
  QuestionStats s;
  s.metric = metric;
  s.dataset = dataset;
  s.total = questions.size();
  for (const auto &item : questions) {
    const QuestionRecord &q = get(item);
    if (q.qtype == QuestionType::kYesNo) {
      ++s.yes_no;
      if (AnswersMatch(q.gold, "yes")) ++s.gold_yes;
      if (AnswersMatch(q.gold, "no")) ++s.gold_no;
    } else {
      ++s.multiple_choice;
      if (!q.choices.empty() && q.gold == q.choices.front()) ++s.gold_first;
    }
  }
  s.pct_yes_no = Percent(s.yes_no, s.total);
  s.pct_multiple_choice = Percent(s.multiple_choice, s.total);
  if (s.yes_no > 0) {
    s.pct_gold_yes_given_yn = Percent(s.gold_yes, s.yes_no);
    s.pct_gold_no_given_yn = Percent(s.gold_no, s.yes_no);
  }
  if (s.multiple_choice > 0) {
    s.pct_gold_first_given_mc = Percent(s.gold_first, s.multiple_choice);
  }
  return s;
}

}  // namespace

QuestionStats ComputeQuestionStats(
    Metric metric, const std::string &dataset,
    const std::vector<QuestionRecord> &questions) {
  return StatsOf(metric, dataset, questions,
                 [](const QuestionRecord &q) -> const QuestionRecord & {
                   return q;
                 });
}

std::vector<QuestionStats> QuestionStatsByGroup(const Corpus &corpus) {
  using Group = std::vector<const QuestionRecord *>;
  std::map<std::pair<Metric, std::string>, Group> groups;
  std::map<Metric, Group> pooled;
  std::set<std::string> datasets;
  for (const QuestionRecord &q : corpus.questions()) {
    const PromptRecord *prompt = corpus.FindPrompt(q.prompt_id);
    const std::string dataset = prompt ? prompt->dataset : std::string();
    datasets.insert(dataset);
    groups[{q.metric, dataset}].push_back(&q);
    pooled[q.metric].push_back(&q);
  }
  auto deref = [](const QuestionRecord *q) -> const QuestionRecord & {
    return *q;
  };
  std::vector<QuestionStats> out;
  for (const auto &[key, questions] : groups) {
    out.push_back(StatsOf(key.first, key.second, questions, deref));
  }
  if (datasets.size() > 1) {
    for (const auto &[metric, questions] : pooled) {
      out.push_back(
          StatsOf(metric, std::string(kAllDatasets), questions, deref));
    }
  }
  return out;
}

std::vector<CorrelationCell> QuestionCountCorrelation(
    const std::vector<MetricScore> &scores, const StatsOptions &options) {
  std::map<std::pair<std::string, Metric>, std::map<std::string, const MetricScore *>>
      groups;
  for (const MetricScore &s : scores) {
    if (!IsQuestionMetric(s.metric)) continue;
    groups[{s.source, s.metric}][s.prompt_id] = &s;
  }
  std::vector<CorrelationCell> cells;
  for (const auto &[key, members] : groups) {
    CorrelationCell cell;
    cell.source = key.first;
    cell.metric = key.second;
    cell.property = "n_questions";
    std::vector<double> counts;
    std::vector<double> values;
    for (const auto &[prompt, s] : members) {
      counts.push_back(static_cast<double>(s->n_questions));
      values.push_back(s->value);
    }
    if (counts.size() < 3) {
      cell.note = "insufficient-n";
    } else {
      StatsOptions cell_options = options;
      cell_options.seed = DeriveSeed(
          options.seed,
          key.first + "/" + std::string(MetricName(key.second)) + "/n_questions");
      try {
        cell.result = Spearman(counts, values, cell_options);
      } catch (const AuditError &) {
        cell.note = "constant-input";
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

ShortcutReport ShortcutFlags(const QuestionStats &stats,
                             const std::optional<BaselineSummary> &baseline,
                             const std::vector<CorrelationCell> &count_cells,
                             const ShortcutThresholds &thresholds) {
  ShortcutReport r;
  r.metric = stats.metric;
  r.thresholds = thresholds;
  r.pct_gold_yes_given_yn = stats.pct_gold_yes_given_yn;
  r.pct_gold_first_given_mc = stats.pct_gold_first_given_mc;
  if (stats.pct_gold_yes_given_yn &&
      *stats.pct_gold_yes_given_yn > thresholds.yes_pct) {
    r.yes_bias = true;
    r.evidence.push_back("gold 'yes' on " + Num(*stats.pct_gold_yes_given_yn) +
                         "% of yes/no questions (> " + Num(thresholds.yes_pct) +
                         ")");
  }
  if (stats.pct_gold_first_given_mc &&
      *stats.pct_gold_first_given_mc > thresholds.first_pct) {
    r.first_answer_bias = true;
    r.evidence.push_back("first choice is gold on " +
                         Num(*stats.pct_gold_first_given_mc) +
                         "% of multiple-choice questions (> " +
                         Num(thresholds.first_pct) + ")");
  }
  for (const CorrelationCell &cell : count_cells) {
    if (cell.metric != stats.metric || !cell.result) continue;
    const CorrelationResult &c = *cell.result;
    if (!c.significant) continue;
    if (!r.strongest_count_rho ||
        std::fabs(c.rho) > std::fabs(*r.strongest_count_rho)) {
      r.strongest_count_rho = c.rho;
    }
    if (std::fabs(c.rho) >= thresholds.rho) {
      r.question_count_dependence = true;
      r.evidence.push_back("rho(n_questions, score) = " + Num(c.rho) +
                           " for source '" + cell.source + "' (|rho| >= " +
                           Num(thresholds.rho) + ", p = " + Num(c.p_value) +
                           ")");
    }
  }
  if (baseline) {
    r.majority_baseline = baseline->majority;
    r.random_chance = baseline->random_chance;
  }
  return r;
}

Json ToJson(const ShortcutReport &r) {
  Json j = Json::object();
  j["metric"] = std::string(MetricName(r.metric));
  j["flags"] = {{"yes_bias", r.yes_bias},
                {"first_answer_bias", r.first_answer_bias},
                {"question_count_dependence", r.question_count_dependence}};
  j["thresholds"] = {{"yes_pct", r.thresholds.yes_pct},
                     {"first_pct", r.thresholds.first_pct},
                     {"rho", r.thresholds.rho}};
  j["pct_gold_yes_given_yn"] = OptionalNumber(r.pct_gold_yes_given_yn);
  j["pct_gold_first_given_mc"] = OptionalNumber(r.pct_gold_first_given_mc);
  j["strongest_count_rho"] = OptionalNumber(r.strongest_count_rho);
  j["majority_baseline"] = OptionalNumber(r.majority_baseline);
  j["random_chance"] = OptionalNumber(r.random_chance);
  j["evidence"] = r.evidence;
  return j;
}

std::string_view RubricValueName(RubricValue value) {
  switch (value) {
    case RubricValue::kYes:
      return "yes";
    case RubricValue::kNo:
      return "no";
    case RubricValue::kMixed:
      return "mixed";
    case RubricValue::kNotApplicable:
      return "n/a";
  }
  return "n/a";
}

RubricValue SensitivityFromCells(const std::vector<CorrelationCell> &cells) {
  std::map<std::string, std::set<int>> signs;
  bool any_significant = false;
  bool any_strong = false;
  for (const CorrelationCell &cell : cells) {
    if (!cell.result || !cell.result->significant) continue;
    any_significant = true;
    any_strong = any_strong || cell.result->strong;
    if (cell.result->rho != 0.0) {
      signs[cell.property].insert(cell.result->rho > 0 ? 1 : -1);
    }
  }
  if (!any_significant) return RubricValue::kNo;
  for (const auto &[property, s] : signs) {
    if (s.size() > 1) return RubricValue::kMixed;
  }
  return any_strong ? RubricValue::kYes : RubricValue::kMixed;
}

std::vector<RubricRow> BuildRubric(
    const std::vector<Metric> &metrics,
    const std::vector<CorrelationCell> &text_cells,
    const std::vector<CorrelationCell> &image_cells,
    const std::vector<ShortcutReport> &shortcuts) {
  auto of_metric = [](const std::vector<CorrelationCell> &cells, Metric m) {
    std::vector<CorrelationCell> out;
    for (const CorrelationCell &c : cells) {
      if (c.metric == m) out.push_back(c);
    }
    return out;
  };
  std::vector<RubricRow> rows;
  for (Metric m : metrics) {
    RubricRow row;
    row.metric = m;
    const auto text = of_metric(text_cells, m);
    const auto image = of_metric(image_cells, m);
    if (!text.empty()) {
      row.sensitive_to_text = SensitivityFromCells(text);
      row.evidence.push_back("sensitive_to_text: tables/linguistic.csv");
    }
    if (!image.empty()) {
      row.sensitive_to_image = SensitivityFromCells(image);
      row.evidence.push_back("sensitive_to_image: tables/visual.csv");
    }
    for (const ShortcutReport &s : shortcuts) {
      if (s.metric != m) continue;
      row.robust_to_shortcuts = s.Any() ? RubricValue::kNo : RubricValue::kYes;
      row.evidence.push_back("robust_to_shortcuts: shortcut_report.json");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace metric_audit
