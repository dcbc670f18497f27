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

// Per-(prompt, source, metric) consistency scores and answer baselines.
//
// TIFA and VPEval score the fraction of questions answered correctly. DSG
// additionally credits a question only when every question it transitively
// depends on is credited. CLIPScore is read from similarity records.

#ifndef METRIC_AUDIT_METRICS_H_
#define METRIC_AUDIT_METRICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "metric_audit/corpus.h"
#include "metric_audit/records.h"

namespace metric_audit {

struct MetricScore {
  std::string prompt_id;
  std::string source;
  Metric metric = Metric::kTifa;
  double value = 0.0;
  int n_questions = 0;

  friend bool operator==(const MetricScore &, const MetricScore &) = default;
};

Json ToJson(const MetricScore &score);
std::vector<MetricScore> ReadScores(std::istream &in, const std::string &name);

// Raw and credited correctness for one question group.
struct VerdictSet {
  std::map<std::string, bool> correct;
  std::map<std::string, std::string> predicted;
};

// Case-insensitive equality after trimming surrounding whitespace.
bool AnswersMatch(std::string_view predicted, std::string_view gold);

// (question_id, source) -> predicted answer.
class AnswerIndex {
 public:
  explicit AnswerIndex(const std::vector<AnswerRecord> &answers);
  const std::string *Find(std::string_view question_id,
                          std::string_view source) const;
  bool HasSource(std::string_view source) const;

 private:
  std::map<std::pair<std::string, std::string>, std::string, std::less<>>
      answers_;
  std::map<std::string, size_t, std::less<>> source_counts_;
};

// Applies dependency gating: entry i stays true only if raw[i] holds and
// every ancestor of question i is also true. Ids outside `questions` are
// ignored; a dependency cycle throws AuditError(kData).
std::vector<bool> GateByDependencies(const std::vector<QuestionRecord> &questions,
                                     const std::vector<bool> &raw);

// Fraction of credited questions under the metric's rule (gated for DSG).
double AggregateCorrectness(Metric metric,
                            const std::vector<QuestionRecord> &questions,
                            const std::vector<bool> &raw);

VerdictSet CollectVerdicts(const std::vector<QuestionRecord> &questions,
                           const AnswerIndex &answers,
                           std::string_view source);

// All three require a non-empty group with an answer from `source` for
// every question; missing answers are reported together.
MetricScore ScoreTifa(const std::vector<QuestionRecord> &questions,
                      const AnswerIndex &answers, std::string_view source);
MetricScore ScoreVpeval(const std::vector<QuestionRecord> &questions,
                        const AnswerIndex &answers, std::string_view source);
MetricScore ScoreDsg(const std::vector<QuestionRecord> &questions,
                     const AnswerIndex &answers, std::string_view source);
MetricScore ScoreQuestionMetric(Metric metric,
                                const std::vector<QuestionRecord> &questions,
                                const AnswerIndex &answers,
                                std::string_view source);

MetricScore ScoreClipScore(const std::vector<SimilarityRecord> &similarities,
                           std::string_view prompt_id, std::string_view source);

// Every score derivable from the corpus: one per question group and answer
// source that answered the group, plus one CLIPScore per full-prompt
// similarity record. Sorted by (source, metric, prompt_id).
std::vector<MetricScore> ScoreCorpus(const Corpus &corpus);

// Answer a yes/no question "yes" and a multiple-choice question with its
// first choice.
std::string MajorityAnswer(const QuestionRecord &question);

inline constexpr int kDefaultChanceTrials = 100000;

// Monte Carlo expectation of the metric when every question is answered
// uniformly at random over its choices.
double RandomChance(const std::vector<QuestionRecord> &questions,
                    Metric metric, int trials, uint64_t seed);

double MajorityBaseline(const std::vector<QuestionRecord> &questions,
                        Metric metric);

struct BaselineSummary {
  Metric metric = Metric::kTifa;
  std::string dataset;
  size_t prompts = 0;
  double random_chance = 0.0;  // mean over prompts, in [0, 1]
  double majority = 0.0;
};

// Per (metric, dataset) means over prompt groups. Each prompt's Monte Carlo
// stream is seeded from DeriveSeed(seed, prompt_id + "/" + metric).
std::vector<BaselineSummary> CorpusBaselines(const Corpus &corpus,
                                             int trials, uint64_t seed);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_METRICS_H_
