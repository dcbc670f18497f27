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

#include "metric_audit/metrics.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>

#include "metric_audit/error.h"
#include "metric_audit/lexicon.h"
#include "metric_audit/random.h"

namespace metric_audit {
namespace {

std::string_view TrimView(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

size_t GoldIndex(const QuestionRecord &q) {
  auto it = std::find(q.choices.begin(), q.choices.end(), q.gold);
  if (it == q.choices.end()) {
    ThrowData("question " + q.question_id + ": gold not among choices");
  }
  return static_cast<size_t>(it - q.choices.begin());
}

void RequireQuestions(const std::vector<QuestionRecord> &questions) {
  if (questions.empty()) ThrowData("cannot score an empty question group");
}

double Fraction(const std::vector<bool> &credited) {
  size_t hits = 0;
  for (bool c : credited) hits += c ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(credited.size());
}

// Parents of each question (by position) and a topological order, so that
// gating is one linear pass per answer pattern.
class DependencyPlan {
 public:
  explicit DependencyPlan(const std::vector<QuestionRecord> &questions)
      : parents_(questions.size()) {
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < questions.size(); ++i) {
      index.emplace(questions[i].question_id, i);
    }
    for (size_t i = 0; i < questions.size(); ++i) {
      for (const std::string &dep : questions[i].depends_on) {
        auto it = index.find(dep);
        if (it != index.end()) parents_[i].push_back(it->second);
      }
    }
    std::vector<int> state(questions.size(), 0);  // 0 new, 1 active, 2 done
    std::function<void(size_t)> visit = [&](size_t i) {
      if (state[i] == 2) return;
      if (state[i] == 1) {
        ThrowData("dependency cycle through question " +
                  questions[i].question_id);
      }
      state[i] = 1;
      for (size_t p : parents_[i]) visit(p);
      state[i] = 2;
      order_.push_back(i);
    };
    for (size_t i = 0; i < questions.size(); ++i) visit(i);
  }

  std::vector<bool> Gate(const std::vector<bool> &raw) const {
    std::vector<bool> credited(raw.size(), false);
    for (size_t i : order_) {
      bool ok = raw[i];
      for (size_t p : parents_[i]) ok = ok && credited[p];
      credited[i] = ok;
    }
    return credited;
  }

  double CreditedFraction(const std::vector<bool> &raw) const {
    return Fraction(Gate(raw));
  }

 private:
  std::vector<std::vector<size_t>> parents_;
  std::vector<size_t> order_;
};

}  // namespace

Json ToJson(const MetricScore &score) {
  Json out = Json::object();
  out["prompt_id"] = score.prompt_id;
  out["source"] = score.source;
  out["metric"] = std::string(MetricName(score.metric));
  out["value"] = score.value;
  out["n_questions"] = score.n_questions;
  return out;
}

std::vector<MetricScore> ReadScores(std::istream &in, const std::string &name) {
  std::vector<MetricScore> scores;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (TrimView(line).empty()) continue;
    const std::string where = name + ":" + std::to_string(number);
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      ThrowData(where + ": malformed score line");
    }
    try {
      MetricScore s;
      s.prompt_id = j.at("prompt_id").get<std::string>();
      s.source = j.at("source").get<std::string>();
      auto metric = ParseMetric(j.at("metric").get<std::string>());
      if (!metric) ThrowData(where + ": unknown metric");
      s.metric = *metric;
      s.value = j.at("value").get<double>();
      s.n_questions = j.at("n_questions").get<int>();
      scores.push_back(std::move(s));
    } catch (const Json::exception &e) {
      ThrowData(where + ": " + e.what());
    }
  }
  return scores;
}

bool AnswersMatch(std::string_view predicted, std::string_view gold) {
  predicted = TrimView(predicted);
  gold = TrimView(gold);
  if (predicted.size() != gold.size()) return false;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(predicted[i])) !=
        std::tolower(static_cast<unsigned char>(gold[i]))) {
      return false;
    }
  }
  return true;
}

AnswerIndex::AnswerIndex(const std::vector<AnswerRecord> &answers) {
  for (const AnswerRecord &a : answers) {
    answers_.emplace(std::make_pair(a.question_id, a.source), a.predicted);
    ++source_counts_[a.source];
  }
}

const std::string *AnswerIndex::Find(std::string_view question_id,
                                     std::string_view source) const {
  auto it = answers_.find(
      std::make_pair(std::string(question_id), std::string(source)));
  return it == answers_.end() ? nullptr : &it->second;
}

bool AnswerIndex::HasSource(std::string_view source) const {
  return source_counts_.find(source) != source_counts_.end();
}

std::vector<bool> GateByDependencies(
    const std::vector<QuestionRecord> &questions,
    const std::vector<bool> &raw) {
  return DependencyPlan(questions).Gate(raw);
}

double AggregateCorrectness(Metric metric,
                            const std::vector<QuestionRecord> &questions,
                            const std::vector<bool> &raw) {
  RequireQuestions(questions);
  if (metric == Metric::kDsg) {
    return DependencyPlan(questions).CreditedFraction(raw);
  }
  return Fraction(raw);
}

VerdictSet CollectVerdicts(const std::vector<QuestionRecord> &questions,
                           const AnswerIndex &answers,
                           std::string_view source) {
  VerdictSet verdicts;
  std::vector<std::string> missing;
  for (const QuestionRecord &q : questions) {
    const std::string *predicted = answers.Find(q.question_id, source);
    if (predicted == nullptr) {
      missing.push_back(q.question_id);
      continue;
    }
    verdicts.predicted[q.question_id] = *predicted;
    verdicts.correct[q.question_id] = AnswersMatch(*predicted, q.gold);
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string &id : missing) list += (list.empty() ? "" : ", ") + id;
    throw AuditError(ErrorKind::kData,
                     "missing answers from source '" + std::string(source) +
                         "' for questions: " + list,
                     missing);
  }
  return verdicts;
}

MetricScore ScoreQuestionMetric(Metric metric,
                                const std::vector<QuestionRecord> &questions,
                                const AnswerIndex &answers,
                                std::string_view source) {
  if (!IsQuestionMetric(metric)) {
    ThrowData("clipscore is not a question metric");
  }
  RequireQuestions(questions);
  const VerdictSet verdicts = CollectVerdicts(questions, answers, source);
  std::vector<bool> raw;
  raw.reserve(questions.size());
  for (const QuestionRecord &q : questions) {
    raw.push_back(verdicts.correct.at(q.question_id));
  }
  MetricScore score;
  score.prompt_id = questions.front().prompt_id;
  score.source = std::string(source);
  score.metric = metric;
  score.value = AggregateCorrectness(metric, questions, raw);
  score.n_questions = static_cast<int>(questions.size());
  return score;
}

MetricScore ScoreTifa(const std::vector<QuestionRecord> &questions,
                      const AnswerIndex &answers, std::string_view source) {
  return ScoreQuestionMetric(Metric::kTifa, questions, answers, source);
}

MetricScore ScoreVpeval(const std::vector<QuestionRecord> &questions,
                        const AnswerIndex &answers, std::string_view source) {
  return ScoreQuestionMetric(Metric::kVpeval, questions, answers, source);
}

MetricScore ScoreDsg(const std::vector<QuestionRecord> &questions,
                     const AnswerIndex &answers, std::string_view source) {
  return ScoreQuestionMetric(Metric::kDsg, questions, answers, source);
}

MetricScore ScoreClipScore(const std::vector<SimilarityRecord> &similarities,
                           std::string_view prompt_id,
                           std::string_view source) {
  const SimilarityRecord *match = nullptr;
  size_t count = 0;
  for (const SimilarityRecord &s : similarities) {
    if (s.prompt_id == prompt_id && s.source == source &&
        s.caption_variant == kFullPromptVariant) {
      match = &s;
      ++count;
    }
  }
  const std::string key =
      "(" + std::string(prompt_id) + ", " + std::string(source) + ")";
  if (count == 0) ThrowData("no full_prompt similarity for " + key);
  if (count > 1) ThrowData("multiple full_prompt similarities for " + key);
  MetricScore score;
  score.prompt_id = std::string(prompt_id);
  score.source = std::string(source);
  score.metric = Metric::kClipScore;
  score.value = match->score;
  score.n_questions = 0;
  return score;
}

std::vector<MetricScore> ScoreCorpus(const Corpus &corpus) {
  std::vector<MetricScore> scores;
  const AnswerIndex answers(corpus.answers());
  const std::vector<std::string> sources = corpus.AnswerSources();
  for (const auto &[key, questions] : corpus.QuestionGroups()) {
    for (const std::string &source : sources) {
      const bool any = std::any_of(
          questions.begin(), questions.end(), [&](const QuestionRecord &q) {
            return answers.Find(q.question_id, source) != nullptr;
          });
      if (!any) continue;
      scores.push_back(
          ScoreQuestionMetric(key.second, questions, answers, source));
    }
  }
  for (const SimilarityRecord &s : corpus.similarities()) {
    if (s.caption_variant != kFullPromptVariant) continue;
    MetricScore score;
    score.prompt_id = s.prompt_id;
    score.source = s.source;
    score.metric = Metric::kClipScore;
    score.value = s.score;
    scores.push_back(std::move(score));
  }
  std::sort(scores.begin(), scores.end(),
            [](const MetricScore &a, const MetricScore &b) {
              return std::tie(a.source, a.metric, a.prompt_id) <
                     std::tie(b.source, b.metric, b.prompt_id);
            });
  return scores;
}

std::string MajorityAnswer(const QuestionRecord &question) {
  if (question.qtype == QuestionType::kYesNo) return "yes";
  if (question.choices.empty()) {
    ThrowData("question " + question.question_id + " has no choices");
  }
  return question.choices.front();
}

double RandomChance(const std::vector<QuestionRecord> &questions,
                    Metric metric, int trials, uint64_t seed) {
  RequireQuestions(questions);
  if (trials < 1) ThrowStatistical("random chance needs at least one trial");
  std::vector<size_t> gold;
  std::vector<size_t> arity;
  for (const QuestionRecord &q : questions) {
    gold.push_back(GoldIndex(q));
    arity.push_back(q.choices.size());
  }
  const DependencyPlan plan(questions);
  Rng rng(seed);
  std::vector<bool> raw(questions.size());
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (size_t i = 0; i < questions.size(); ++i) {
      raw[i] = rng.Below(arity[i]) == gold[i];
    }
    total += metric == Metric::kDsg ? plan.CreditedFraction(raw)
                                    : Fraction(raw);
  }
  return total / static_cast<double>(trials);
}

double MajorityBaseline(const std::vector<QuestionRecord> &questions,
                        Metric metric) {
  RequireQuestions(questions);
  std::vector<bool> raw;
  raw.reserve(questions.size());
  for (const QuestionRecord &q : questions) {
    raw.push_back(AnswersMatch(MajorityAnswer(q), q.gold));
  }
  return AggregateCorrectness(metric, questions, raw);
}

std::vector<BaselineSummary> CorpusBaselines(const Corpus &corpus, int trials,
                                             uint64_t seed) {
  std::map<std::pair<Metric, std::string>, BaselineSummary> sums;
  for (const auto &[key, questions] : corpus.QuestionGroups()) {
    const PromptRecord *prompt = corpus.FindPrompt(key.first);
    const std::string dataset = prompt ? prompt->dataset : std::string();
    BaselineSummary &s = sums[{key.second, dataset}];
    s.metric = key.second;
    s.dataset = dataset;
    ++s.prompts;
    const uint64_t prompt_seed = DeriveSeed(
        seed, key.first + "/" + std::string(MetricName(key.second)));
    s.random_chance += RandomChance(questions, key.second, trials, prompt_seed);
    s.majority += MajorityBaseline(questions, key.second);
  }
  std::vector<BaselineSummary> out;
  for (auto &[key, s] : sums) {
    s.random_chance /= static_cast<double>(s.prompts);
    s.majority /= static_cast<double>(s.prompts);
    out.push_back(s);
  }
  return out;
}

}  // namespace metric_audit
