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

// Line-delimited record ingestion and the in-memory corpus.
//
// Every record file holds one JSON object per line. Blank lines are skipped.
// A line whose only key is "_provenance" is a header written by the ablation
// emitters and is ignored by the readers.

#ifndef METRIC_AUDIT_CORPUS_H_
#define METRIC_AUDIT_CORPUS_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "metric_audit/records.h"

namespace metric_audit {

inline constexpr std::string_view kProvenanceKey = "_provenance";

template <typename T>
struct ReadResult {
  std::vector<T> records;
  std::vector<std::string> problems;  // "<file>:<line>: message"
  std::optional<Json> provenance;
};

class Corpus;

ReadResult<PromptRecord> ReadPrompts(std::istream &in, const std::string &name);
ReadResult<ImageRef> ReadImages(std::istream &in, const std::string &name,
                                const Corpus &corpus);
ReadResult<QuestionRecord> ReadQuestions(std::istream &in,
                                         const std::string &name,
                                         const Corpus &corpus);
ReadResult<AnswerRecord> ReadAnswers(std::istream &in, const std::string &name,
                                     const Corpus &corpus);
ReadResult<SimilarityRecord> ReadSimilarities(std::istream &in,
                                              const std::string &name,
                                              const Corpus &corpus);

// File variants throw AuditError(kData) listing every problem found.
std::vector<PromptRecord> LoadPrompts(const std::filesystem::path &path);
std::vector<ImageRef> LoadImages(const std::filesystem::path &path,
                                 const Corpus &corpus);
std::vector<QuestionRecord> LoadQuestions(const std::filesystem::path &path,
                                          const Corpus &corpus);
std::vector<AnswerRecord> LoadAnswers(const std::filesystem::path &path,
                                      const Corpus &corpus);
std::vector<SimilarityRecord> LoadSimilarities(
    const std::filesystem::path &path, const Corpus &corpus);

// Returns one dependency cycle (question ids, first id repeated at the end)
// if the depends_on edges of `questions` are not acyclic.
std::optional<std::vector<std::string>> FindDependencyCycle(
    const std::vector<QuestionRecord> &questions);

// Checks record invariants that do not need other files.
std::vector<std::string> CheckQuestion(const QuestionRecord &q);

Json ToJson(const PromptRecord &r);
Json ToJson(const ImageRef &r);
Json ToJson(const QuestionRecord &r);
Json ToJson(const AnswerRecord &r);
Json ToJson(const SimilarityRecord &r);

template <typename T>
void WriteRecords(std::ostream &out, const std::vector<T> &records,
                  const Json *provenance = nullptr) {
  if (provenance != nullptr) {
    Json header = Json::object();
    header[std::string(kProvenanceKey)] = *provenance;
    out << header.dump() << '\n';
  }
  for (const T &r : records) out << ToJson(r).dump() << '\n';
}

// Key for grouping questions: one prompt scored by one metric.
using QuestionGroupKey = std::pair<std::string, Metric>;

// Immutable-after-load view of all record files. Setters check references
// against the parts already present, so they must be called in declaration
// order: prompts, images, questions, answers, similarities.
class Corpus {
 public:
  void SetPrompts(std::vector<PromptRecord> prompts);
  void SetImages(std::vector<ImageRef> images);
  void SetQuestions(std::vector<QuestionRecord> questions);
  void SetAnswers(std::vector<AnswerRecord> answers);
  void SetSimilarities(std::vector<SimilarityRecord> similarities);

  const std::vector<PromptRecord> &prompts() const { return prompts_; }
  const std::vector<ImageRef> &images() const { return images_; }
  const std::vector<QuestionRecord> &questions() const { return questions_; }
  const std::vector<AnswerRecord> &answers() const { return answers_; }
  const std::vector<SimilarityRecord> &similarities() const {
    return similarities_;
  }

  const PromptRecord *FindPrompt(std::string_view id) const;
  const QuestionRecord *FindQuestion(std::string_view id) const;

  // Questions grouped by (prompt_id, metric), ordered by key; within a group
  // the file order is kept.
  const std::map<QuestionGroupKey, std::vector<QuestionRecord>> &
  QuestionGroups() const {
    return question_groups_;
  }

  // Answer sources in sorted order.
  std::vector<std::string> AnswerSources() const;
  std::vector<std::string> SimilaritySources() const;

 private:
  std::vector<PromptRecord> prompts_;
  std::vector<ImageRef> images_;
  std::vector<QuestionRecord> questions_;
  std::vector<AnswerRecord> answers_;
  std::vector<SimilarityRecord> similarities_;
  std::unordered_map<std::string, size_t> prompt_index_;
  std::unordered_map<std::string, size_t> question_index_;
  std::map<QuestionGroupKey, std::vector<QuestionRecord>> question_groups_;
};

}  // namespace metric_audit

#endif  // METRIC_AUDIT_CORPUS_H_
