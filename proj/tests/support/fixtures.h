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

// Record builders and scratch files shared by the test binaries.

#ifndef METRIC_AUDIT_TESTS_SUPPORT_FIXTURES_H_
#define METRIC_AUDIT_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "metric_audit/corpus.h"
#include "metric_audit/records.h"

namespace metric_audit::testing {

inline constexpr const char *kStubSource = "stub";

PromptRecord Prompt(const std::string &id, const std::string &text,
                    const std::string &dataset = "coco",
                    std::optional<std::string> parse = std::nullopt);

QuestionRecord YesNo(const std::string &qid, const std::string &pid,
                     Metric metric, const std::string &gold = "yes",
                     std::vector<std::string> depends_on = {});

QuestionRecord MultipleChoice(const std::string &qid, const std::string &pid,
                              Metric metric, std::vector<std::string> choices,
                              const std::string &gold,
                              std::vector<std::string> depends_on = {});

AnswerRecord Answer(const std::string &qid, const std::string &source,
                    const std::string &predicted);

// What the stub backend answers: "yes" or the first listed choice.
std::vector<AnswerRecord> StubAnswers(
    const std::vector<QuestionRecord> &questions,
    const std::string &source = kStubSource);

Corpus MakeCorpus(std::vector<PromptRecord> prompts,
                  std::vector<QuestionRecord> questions = {},
                  std::vector<AnswerRecord> answers = {},
                  std::vector<SimilarityRecord> similarities = {});

// TIFA questions over COCO-style prompts with 125,000 questions: 71,000
// yes/no (70,787 gold "yes", 213 gold "no") and 54,000 multiple choice
// (50,760 with the gold listed first). Every question the stub backend gets
// wrong sits alone in an 8-question prompt; all other prompts hold 4
// questions, so score falls as question count rises.
struct QaStatsFixture {
  std::vector<PromptRecord> prompts;
  std::vector<QuestionRecord> questions;
};
QaStatsFixture MakeQaStatsFixture();

// Random DAG over `n` questions of one prompt; answers for `source` are
// right with probability 1/2.
struct DagFixture {
  std::vector<QuestionRecord> questions;
  std::vector<AnswerRecord> answers;
};
DagFixture RandomDagFixture(size_t n, uint64_t seed,
                            const std::string &source = "model");

// Fresh empty directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string &name);

void WriteText(const std::filesystem::path &path, const std::string &text);
std::string ReadText(const std::filesystem::path &path);

template <typename T>
void WriteJsonl(const std::filesystem::path &path,
                const std::vector<T> &records) {
  std::string text;
  for (const T &r : records) text += ToJson(r).dump() + "\n";
  WriteText(path, text);
}

// Runs a shell command; returns its exit status.
int RunShell(const std::string &command);

}  // namespace metric_audit::testing

#endif  // METRIC_AUDIT_TESTS_SUPPORT_FIXTURES_H_
