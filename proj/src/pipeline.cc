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

#include "metric_audit/pipeline.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "metric_audit/audit.h"
#include "metric_audit/error.h"
#include "metric_audit/metrics.h"
#include "metric_audit/random.h"
#include "metric_audit/stats.h"
#include "metric_audit/textprops.h"
#include "metric_audit/visprops.h"

namespace metric_audit {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kToolVersion = "0.1.0";

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::kValidate, "validate"}, {Command::kProps, "props"},
    {Command::kScore, "score"},       {Command::kCorrelate, "correlate"},
    {Command::kMatrix, "matrix"},     {Command::kAblate, "ablate"},
    {Command::kAudit, "audit"},       {Command::kReport, "report"},
    {Command::kAll, "all"},
};

constexpr std::string_view kLegend =
    "`*` marks p < alpha; bold marks significant cells with |rho| >= tau; "
    "— marks cells with too few prompts or constant input.";

enum class Section { kProps, kScore, kCorrelate, kMatrix, kAudit, kAblations };

std::set<Section> SectionsFor(Command command) {
  switch (command) {
    case Command::kProps:
      return {Section::kProps};
    case Command::kScore:
      return {Section::kScore};
    case Command::kCorrelate:
      return {Section::kCorrelate};
    case Command::kMatrix:
      return {Section::kMatrix};
    case Command::kAudit:
      return {Section::kAudit};
    case Command::kReport:
    case Command::kAll:
      return {Section::kProps,  Section::kScore, Section::kCorrelate,
              Section::kMatrix, Section::kAudit, Section::kAblations};
    case Command::kValidate:
    case Command::kAblate:
      break;
  }
  return {};
}

template <typename F>
void Collect(std::vector<std::string> &problems, F &&load) {
  try {
    load();
  } catch (const AuditError &e) {
    if (e.problems().empty()) {
      problems.push_back(e.what());
    } else {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  }
}

std::string Hex(uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

std::string FileDigest(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Hex(Fnv1a64(buf.str()));
}

Json InputDigests(const RunConfig &c) {
  Json j = Json::object();
  const Json config = ConfigJson(c);
  for (const auto &[key, value] : config["paths"].items()) {
    j[key] = {{"path", value}, {"fnv1a64", FileDigest(value.get<std::string>())}};
  }
  for (const auto &[variant, inputs] : c.ablations) {
    if (inputs.answers) {
      j["ablations." + variant + ".answers"] = {
          {"path", inputs.answers->generic_string()},
          {"fnv1a64", FileDigest(*inputs.answers)}};
    }
    if (inputs.similarities) {
      j["ablations." + variant + ".similarities"] = {
          {"path", inputs.similarities->generic_string()},
          {"fnv1a64", FileDigest(*inputs.similarities)}};
    }
  }
  return j;
}

StatsOptions OptionsFor(const RunConfig &c) {
  StatsOptions o;
  o.alpha = c.alpha;
  o.tau = c.tau;
  o.exact_p = c.exact_p;
  o.seed = c.seed.value_or(0);
  return o;
}

std::string PValueMethod(const RunConfig &c) {
  return c.exact_p ? "permutation test for n < 30, t approximation otherwise"
                   : "t approximation (df = n - 2)";
}

std::string Optional(const std::optional<double> &v) {
  return v ? FormatRaw(*v) : "";
}

struct Analysis {
  std::vector<LinguisticProfile> linguistic;
  std::vector<VisualProfile> visual;
  std::vector<MetricScore> scores;
  std::vector<CorrelationCell> linguistic_cells;
  std::vector<CorrelationCell> visual_cells;
};

void ComputeProfiles(const RunConfig &c, const Inputs &in, Analysis &a) {
  for (const PromptRecord &p : in.corpus.prompts()) {
    a.linguistic.push_back(
        ComputeLinguisticProfile(p.id, p.text, p.parse, in.stopwords, c.yngve));
    a.visual.push_back(ComputeVisualProfile(
        p.id, p.text, in.concreteness ? &*in.concreteness : nullptr,
        in.imageability ? &*in.imageability : nullptr,
        in.classes ? &*in.classes : nullptr, in.stopwords, c.missing_policy));
  }
}

void ComputeCorrelations(const RunConfig &c, const Inputs &in, Analysis &a) {
  const StatsOptions options = OptionsFor(c);
  PromptValues grade, yngve, length, concreteness, imageability, overlap;
  for (const LinguisticProfile &p : a.linguistic) {
    grade[p.prompt_id] = p.grade_level;
    if (p.yngve) yngve[p.prompt_id] = *p.yngve;
    length[p.prompt_id] = static_cast<double>(p.length);
  }
  for (const VisualProfile &p : a.visual) {
    if (p.concreteness) concreteness[p.prompt_id] = *p.concreteness;
    if (p.imageability) imageability[p.prompt_id] = *p.imageability;
    if (p.class_overlap) overlap[p.prompt_id] = *p.class_overlap;
  }
  auto add = [&](std::vector<CorrelationCell> &out, const PromptValues &values,
                 const std::string &property) {
    auto cells = CorrelateProfiles(a.scores, values, property, options);
    out.insert(out.end(), cells.begin(), cells.end());
  };
  add(a.linguistic_cells, grade, "grade_level");
  add(a.linguistic_cells, yngve, "yngve");
  add(a.linguistic_cells, length, "length");
  if (in.concreteness) add(a.visual_cells, concreteness, "concreteness");
  if (in.imageability) add(a.visual_cells, imageability, "imageability");
  if (in.classes) add(a.visual_cells, overlap, "class_overlap");
}

CsvTable LinguisticTable(const Inputs &in,
                         const std::vector<LinguisticProfile> &profiles) {
  CsvTable t;
  t.header = {"prompt_id", "dataset", "grade_level", "yngve", "length",
              "grade_level_raw", "yngve_raw"};
  for (const LinguisticProfile &p : profiles) {
    const PromptRecord *prompt = in.corpus.FindPrompt(p.prompt_id);
    t.rows.push_back({p.prompt_id, prompt->dataset,
                      FormatFixed(p.grade_level, 2),
                      p.yngve ? FormatFixed(*p.yngve, 2) : "",
                      std::to_string(p.length), FormatRaw(p.grade_level),
                      Optional(p.yngve)});
  }
  return t;
}

CsvTable VisualTable(const Inputs &in,
                     const std::vector<VisualProfile> &profiles) {
  CsvTable t;
  t.header = {"prompt_id", "dataset", "concreteness", "imageability",
              "class_overlap", "missing_word_policy"};
  for (const VisualProfile &p : profiles) {
    const PromptRecord *prompt = in.corpus.FindPrompt(p.prompt_id);
    t.rows.push_back({p.prompt_id, prompt->dataset, Optional(p.concreteness),
                      Optional(p.imageability), Optional(p.class_overlap),
                      std::string(MissingWordPolicyName(
                          p.missing_word_policy))});
  }
  return t;
}

CsvTable ScoresTable(const std::vector<MetricScore> &scores) {
  CsvTable t;
  t.header = {"prompt_id", "source", "metric", "value", "n_questions"};
  for (const MetricScore &s : scores) {
    t.rows.push_back({s.prompt_id, s.source, std::string(MetricName(s.metric)),
                      FormatRaw(s.value), std::to_string(s.n_questions)});
  }
  return t;
}

double MeanValue(const std::vector<MetricScore> &scores, const std::string &source,
                 Metric metric, size_t &count) {
  double sum = 0.0;
  count = 0;
  for (const MetricScore &s : scores) {
    if (s.source == source && s.metric == metric) {
      sum += s.value;
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

void AddMeans(std::vector<BarPoint> &points,
              const std::vector<MetricScore> &scores,
              const std::string &variant) {
  std::set<std::pair<std::string, Metric>> keys;
  for (const MetricScore &s : scores) keys.insert({s.source, s.metric});
  for (const auto &[source, metric] : keys) {
    size_t count = 0;
    const double mean = MeanValue(scores, source, metric, count);
    points.push_back({source, metric, variant, mean});
  }
}

std::vector<BarPoint> AblationBars(const Inputs &in,
                                   const std::vector<MetricScore> &original) {
  std::vector<BarPoint> points;
  AddMeans(points, original, "original");
  for (const auto &[variant, records] : in.ablations) {
    std::vector<MetricScore> scores;
    if (variant == "retrieval_qa") {
      std::set<std::string> sources;
      for (const SimilarityRecord &s : records.similarities) {
        sources.insert(s.source);
      }
      for (const std::string &source : sources) {
        auto s = ScoreRetrievalQa(in.corpus.questions(), records.similarities,
                                  source);
        scores.insert(scores.end(), s.begin(), s.end());
      }
    } else {
      Corpus ablated;
      ablated.SetPrompts(in.corpus.prompts());
      ablated.SetQuestions(in.corpus.questions());
      ablated.SetAnswers(records.answers);
      ablated.SetSimilarities(records.similarities);
      scores = ScoreCorpus(ablated);
    }
    AddMeans(points, scores, variant);
  }
  return points;
}

std::vector<ShortcutReport> Shortcuts(
    const RunConfig &c, const std::vector<QuestionStats> &stats,
    const std::vector<BaselineSummary> &baselines,
    const std::vector<CorrelationCell> &count_cells) {
  std::set<std::string> datasets;
  for (const QuestionStats &s : stats) datasets.insert(s.dataset);
  const bool pooled = datasets.count(std::string(kAllDatasets)) > 0;
  std::vector<ShortcutReport> out;
  for (Metric metric : kQuestionMetrics) {
    const QuestionStats *chosen = nullptr;
    for (const QuestionStats &s : stats) {
      if (s.metric == metric &&
          (!pooled || s.dataset == kAllDatasets)) {
        chosen = &s;
      }
    }
    if (chosen == nullptr) continue;
    std::optional<BaselineSummary> baseline;
    for (const BaselineSummary &b : baselines) {
      if (b.metric != metric) continue;
      if (!baseline) {
        baseline = BaselineSummary{metric, chosen->dataset, 0, 0.0, 0.0};
      }
      const double w = static_cast<double>(b.prompts);
      baseline->random_chance += w * b.random_chance;
      baseline->majority += w * b.majority;
      baseline->prompts += b.prompts;
    }
    if (baseline && baseline->prompts > 0) {
      const double n = static_cast<double>(baseline->prompts);
      baseline->random_chance /= n;
      baseline->majority /= n;
    }
    out.push_back(ShortcutFlags(*chosen, baseline, count_cells, c.shortcuts));
  }
  return out;
}

std::string SettingsMarkdown(const RunConfig &c) {
  std::ostringstream md;
  md << "- seed: " << (c.seed ? std::to_string(*c.seed) : "none") << "\n";
  md << "- alpha: " << FormatRaw(c.alpha) << "\n";
  md << "- tau: " << FormatRaw(c.tau) << "\n";
  md << "- p-values: " << PValueMethod(c) << "\n";
  md << "- missing-word policy: " << MissingWordPolicyName(c.missing_policy)
     << "\n";
  md << "- Yngve aggregate: "
     << (c.yngve == YngveAggregate::kMean ? "mean" : "max") << "\n";
  md << "- shortcut thresholds: yes > " << FormatRaw(c.shortcuts.yes_pct)
     << "%, first choice > " << FormatRaw(c.shortcuts.first_pct)
     << "%, |rho| >= " << FormatRaw(c.shortcuts.rho) << " and significant\n";
  md << "- readability: Flesch-Kincaid grade with stopwords included\n";
  md << "- class overlap: multi-word labels match through their single "
        "tokens\n";
  md << "- shuffled text: original token case is kept\n";
  md << "- random-chance trials: " << c.chance_trials << "\n";
  md << "- retrieval QA: ties at the maximum similarity count as incorrect\n";
  return md.str();
}

constexpr std::string_view kRubricRule =
    "sensitivity is no without a significant cell, mixed when significant "
    "cells of one property disagree in sign across sources or none reaches "
    "tau, yes otherwise; robustness is no when any shortcut flag is set";

}  // namespace

std::string_view CommandName(Command command) {
  for (const auto &[c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "";
}

std::optional<Command> ParseCommand(std::string_view name) {
  for (const auto &[c, n] : kCommandNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool NeedsSeed(Command command, const RunConfig &config) {
  switch (command) {
    case Command::kValidate:
    case Command::kProps:
    case Command::kMatrix:
      return false;
    case Command::kCorrelate:
      return config.exact_p;
    case Command::kScore:
    case Command::kAblate:
    case Command::kAudit:
    case Command::kReport:
    case Command::kAll:
      return true;
  }
  return true;
}

Inputs LoadInputs(const RunConfig &c) {
  Inputs in;
  std::vector<std::string> problems;
  Collect(problems, [&] {
    in.stopwords = c.stopwords ? StopwordSet::Load(*c.stopwords)
                               : StopwordSet::English();
  });
  Collect(problems, [&] {
    if (c.concreteness) in.concreteness = Lexicon::Load(*c.concreteness);
  });
  Collect(problems, [&] {
    if (c.imageability) in.imageability = Lexicon::Load(*c.imageability);
  });
  Collect(problems, [&] {
    if (c.classes) in.classes = ClassList::Load(*c.classes, in.stopwords);
  });
  bool prompts_ok = false;
  Collect(problems, [&] {
    in.corpus.SetPrompts(LoadPrompts(*c.prompts));
    prompts_ok = true;
  });
  if (prompts_ok) {
    Collect(problems, [&] {
      if (c.images) in.corpus.SetImages(LoadImages(*c.images, in.corpus));
    });
    bool questions_ok = !c.questions.has_value();
    Collect(problems, [&] {
      if (c.questions) {
        in.corpus.SetQuestions(LoadQuestions(*c.questions, in.corpus));
        questions_ok = true;
      }
    });
    if (questions_ok) {
      Collect(problems, [&] {
        if (c.answers) in.corpus.SetAnswers(LoadAnswers(*c.answers, in.corpus));
      });
    }
    Collect(problems, [&] {
      if (c.similarities) {
        in.corpus.SetSimilarities(LoadSimilarities(*c.similarities, in.corpus));
      }
    });
    for (const auto &[variant, paths] : c.ablations) {
      AblationRecords &records = in.ablations[variant];
      if (paths.answers && questions_ok) {
        Collect(problems,
                [&] { records.answers = LoadAnswers(*paths.answers, in.corpus); });
      }
      if (paths.similarities) {
        Collect(problems, [&] {
          records.similarities = LoadSimilarities(*paths.similarities, in.corpus);
        });
      }
    }
  }
  if (!problems.empty()) {
    throw AuditError(ErrorKind::kData,
                     "input validation failed (" +
                         std::to_string(problems.size()) + " problem" +
                         (problems.size() == 1 ? "" : "s") + ")",
                     problems);
  }
  return in;
}

Json InputSummary(const Inputs &in) {
  Json j = Json::object();
  j["prompts"] = in.corpus.prompts().size();
  j["images"] = in.corpus.images().size();
  j["questions"] = in.corpus.questions().size();
  j["answers"] = in.corpus.answers().size();
  j["similarities"] = in.corpus.similarities().size();
  j["answer_sources"] = in.corpus.AnswerSources();
  j["similarity_sources"] = in.corpus.SimilaritySources();
  j["stopwords"] = in.stopwords.size();
  if (in.concreteness) j["concreteness_entries"] = in.concreteness->size();
  if (in.imageability) j["imageability_entries"] = in.imageability->size();
  if (in.classes) j["classes"] = in.classes->labels().size();
  Json ablations = Json::object();
  for (const auto &[variant, records] : in.ablations) {
    ablations[variant] = {{"answers", records.answers.size()},
                          {"similarities", records.similarities.size()}};
  }
  j["ablations"] = ablations;
  return j;
}

ReportBundle BuildBundle(const RunConfig &c, const Inputs &in, Command command,
                         const std::string &generated_at) {
  const std::set<Section> sections = SectionsFor(command);
  auto has = [&sections](Section s) { return sections.count(s) > 0; };
  const bool need_profiles =
      has(Section::kProps) || has(Section::kCorrelate) || has(Section::kAudit);
  const bool need_scores = has(Section::kScore) || has(Section::kCorrelate) ||
                           has(Section::kMatrix) || has(Section::kAudit) ||
                           has(Section::kAblations);
  const StatsOptions options = OptionsFor(c);

  Analysis a;
  if (need_profiles) ComputeProfiles(c, in, a);
  if (need_scores) a.scores = ScoreCorpus(in.corpus);
  if (has(Section::kCorrelate) || has(Section::kAudit)) {
    ComputeCorrelations(c, in, a);
  }

  ReportBundle b;
  b.meta["tool"] = "metric-audit";
  b.meta["version"] = std::string(kToolVersion);
  b.meta["command"] = std::string(CommandName(command));
  b.meta["generated_at"] = generated_at;
  b.meta["config"] = ConfigJson(c);
  b.meta["p_value_method"] = PValueMethod(c);
  b.meta["retrieval_tie_rule"] = "ties at the maximum count as incorrect";
  b.meta["rubric_rule"] = std::string(kRubricRule);
  b.meta["inputs"] = InputDigests(c);
  b.meta["counts"] = InputSummary(in);

  std::ostringstream md;
  md << "# Metric audit report\n\n" << SettingsMarkdown(c);

  if (has(Section::kProps)) {
    CsvTable ling = LinguisticTable(in, a.linguistic);
    CsvTable vis = VisualTable(in, a.visual);
    md << "\n## Prompt properties\n\n"
       << "Per-prompt values are in tables/linguistic_profiles.csv and "
          "tables/visual_profiles.csv ("
       << a.linguistic.size() << " prompts).\n";
    b.tables["linguistic_profiles"] = std::move(ling);
    b.tables["visual_profiles"] = std::move(vis);
  }

  std::vector<BaselineSummary> baselines;
  if (has(Section::kScore) || has(Section::kAudit)) {
    baselines = CorpusBaselines(in.corpus, c.chance_trials, c.seed.value_or(0));
  }
  if (has(Section::kScore)) {
    CsvTable summary = RenderScoreSummary(a.scores);
    CsvTable base = RenderBaselines(baselines);
    md << "\n## Scores\n\nMean score per source and metric, x100.\n\n"
       << summary.ToMarkdown() << "\n## Baselines\n\n"
       << "Random chance and majority answer per metric and dataset, x100.\n\n"
       << base.ToMarkdown();
    b.tables["scores"] = ScoresTable(a.scores);
    b.tables["score_summary"] = std::move(summary);
    b.tables["baselines"] = std::move(base);
  }

  if (has(Section::kCorrelate)) {
    CsvTable ling = RenderCorrelationTable(a.linguistic_cells);
    CsvTable ling_pivot = PivotCorrelationTable(ling);
    md << "\n## Linguistic properties vs scores\n\n"
       << ling_pivot.ToMarkdown() << "\n" << kLegend << "\n";
    b.tables["linguistic"] = std::move(ling);
    b.tables["linguistic_pivot"] = std::move(ling_pivot);
    if (!a.visual_cells.empty()) {
      CsvTable vis = RenderCorrelationTable(a.visual_cells);
      CsvTable vis_pivot = PivotCorrelationTable(vis);
      md << "\n## Visual properties vs scores\n\n"
         << vis_pivot.ToMarkdown() << "\n" << kLegend << "\n";
      b.tables["visual"] = std::move(vis);
      b.tables["visual_pivot"] = std::move(vis_pivot);
    }
  }

  if (has(Section::kMatrix)) {
    std::set<std::string> sources;
    for (const MetricScore &s : a.scores) sources.insert(s.source);
    md << "\n## Metric agreement\n";
    size_t written = 0;
    for (const std::string &source : sources) {
      std::set<Metric> metrics;
      for (const MetricScore &s : a.scores) {
        if (s.source == source) metrics.insert(s.metric);
      }
      if (metrics.size() < 2) continue;
      const CorrelationMatrix m = MetricMatrix(a.scores, source, options);
      const std::string name = "metrics_" + source;
      CsvTable rounded = RenderHeatmap(m);
      for (size_t i = 0; i < rounded.rows.size(); ++i) {
        for (size_t j = 0; j < m.labels.size(); ++j) {
          const double rho = m.rho[i][j];
          rounded.rows[i][j + 1] = std::isnan(rho) ? std::string(kMissingCell)
                                                   : FormatFixed(rho, 2);
        }
      }
      md << "\n### " << source << "\n\n" << rounded.ToMarkdown();
      b.tables["matrix_" + source] = std::move(rounded);
      b.matrices[name] = RenderHeatmap(m);
      b.matrix_json[name] = HeatmapJson(m);
      if (c.svg) {
        b.figures[name] =
            RenderHeatmapSvg(m, "Spearman correlation between metrics: " + source);
      }
      ++written;
    }
    if (written == 0) {
      if (command == Command::kMatrix) {
        ThrowStatistical(
            "metric matrix needs a source scored by at least two metrics");
      }
      md << "\nNo source is scored by two or more metrics.\n";
    }
  }

  if (has(Section::kAudit)) {
    const std::vector<QuestionStats> stats = QuestionStatsByGroup(in.corpus);
    const std::vector<CorrelationCell> count_cells =
        QuestionCountCorrelation(a.scores, options);
    const std::vector<ShortcutReport> shortcuts =
        Shortcuts(c, stats, baselines, count_cells);
    std::set<Metric> scored;
    for (const MetricScore &s : a.scores) scored.insert(s.metric);
    for (const QuestionStats &s : stats) scored.insert(s.metric);
    const std::vector<RubricRow> rubric =
        BuildRubric({scored.begin(), scored.end()}, a.linguistic_cells,
                    a.visual_cells, shortcuts);

    CsvTable stats_table = RenderQuestionStats(stats);
    CsvTable count_table = RenderCorrelationTable(count_cells);
    CsvTable shortcut_table = RenderShortcuts(shortcuts);
    CsvTable rubric_table = RenderRubric(rubric);
    md << "\n## Question statistics\n\n"
       << RenderQuestionStatsMarkdown(stats)
       << "\n## Question count vs score\n\n";
    if (count_cells.empty()) {
      md << "No question-based scores.\n";
    } else {
      md << PivotCorrelationTable(count_table).ToMarkdown() << "\n"
         << kLegend << "\n";
    }
    md << "\n## Shortcut flags\n\n" << shortcut_table.ToMarkdown();
    for (const ShortcutReport &r : shortcuts) {
      for (const std::string &e : r.evidence) {
        md << "\n- " << MetricName(r.metric) << ": " << e;
      }
    }
    if (!shortcuts.empty()) md << "\n";
    md << "\n## Rubric\n\n" << rubric_table.ToMarkdown() << "\nRule: "
       << kRubricRule << ".\n";

    Json shortcut_json = Json::array();
    for (const ShortcutReport &r : shortcuts) shortcut_json.push_back(ToJson(r));
    b.json_files["shortcut_report"] = std::move(shortcut_json);
    b.tables["question_stats"] = std::move(stats_table);
    b.tables["question_count"] = std::move(count_table);
    b.tables["shortcuts"] = std::move(shortcut_table);
    b.tables["rubric"] = std::move(rubric_table);
  }

  if (has(Section::kAblations) && !in.ablations.empty()) {
    CsvTable bars = RenderBars(AblationBars(in, a.scores));
    md << "\n## Ablations\n\nMean score x100 per variant.\n\n"
       << bars.ToMarkdown();
    b.tables["ablation"] = std::move(bars);
  }

  b.markdown = md.str();
  return b;
}

void RunCommand(Command command, const RunConfig &config,
                std::optional<AblationKind> kind, std::ostream &log) {
  ValidateConfig(config, NeedsSeed(command, config));
  const Inputs inputs = LoadInputs(config);

  if (command == Command::kValidate) {
    Json summary = {{"status", "ok"}, {"counts", InputSummary(inputs)}};
    log << summary.dump(2) << '\n';
    return;
  }

  if (command == Command::kAblate) {
    if (!kind) ThrowConfig("ablate needs a kind");
    AblationPlan plan;
    plan.kind = *kind;
    plan.seed = *config.seed;
    plan.derangement = config.derangement;
    const std::string text = EmitAblation(inputs.corpus, plan);
    const fs::path path =
        config.out / "ablations" /
        (std::string(AblationKindName(*kind)) + ".jsonl");
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) ThrowData("cannot write " + path.string());
    out << text;
    log << path.generic_string() << '\n';
    return;
  }

  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream stamp;
  stamp << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");

  const ReportBundle bundle =
      BuildBundle(config, inputs, command, stamp.str());
  WriteBundle(bundle, config.out);
  log << "wrote " << config.out.generic_string() << '\n';
}

}  // namespace metric_audit
