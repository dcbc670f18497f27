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

// Ablation transforms: shuffled images, within-question shuffled text,
// retrieval-style QA over similarity scores, and text-only QA prompts.

#ifndef METRIC_AUDIT_ABLATE_H_
#define METRIC_AUDIT_ABLATE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "metric_audit/corpus.h"
#include "metric_audit/metrics.h"

namespace metric_audit {

enum class AblationKind {
  kShuffleImages,
  kShuffleText,
  kRetrievalQa,
  kTextOnlyQa,
};

std::string_view AblationKindName(AblationKind kind);
std::optional<AblationKind> ParseAblationKind(std::string_view name);

struct AblationPlan {
  AblationKind kind = AblationKind::kShuffleImages;
  uint64_t seed = 0;
  bool derangement = false;

  // Header recorded in every emitted ablation file.
  Json Provenance() const;
};

// Reassigns image keys within each (dataset, source) group by a seeded
// permutation. With `derangement`, no prompt keeps its own image; a group of
// one then throws AuditError(kData). Output keeps the input order.
std::vector<ImageRef> ShuffleImages(const Corpus &corpus, uint64_t seed,
                                    bool derangement);

// Permutes the tokens of `text`, keeping a final punctuation token in place,
// and joins them with single spaces.
std::string ShuffleText(std::string_view text, uint64_t seed);

// Questions with shuffled text; each question uses
// DeriveSeed(seed, question_id).
std::vector<QuestionRecord> ShuffleQuestionTexts(
    const std::vector<QuestionRecord> &questions, uint64_t seed);

struct RetrievalCaptionSet {
  std::string question_id;
  std::string prompt_id;
  std::vector<std::pair<std::string, std::string>> captions;  // choice, text
  size_t correct_index = 0;
};

// One caption "{question}? {choice}" per choice, in choice order. A single
// trailing "?" on the question is dropped first.
RetrievalCaptionSet BuildRetrievalCaptions(const QuestionRecord &question);

// caption_variant under which the similarity of caption `index` is stored.
std::string RetrievalVariantName(std::string_view question_id, size_t index);

Json RetrievalCaptionJson(const RetrievalCaptionSet &set, size_t index);

// Scores every question group of `questions` for `source`: a question is
// correct iff its gold caption has the strictly largest similarity. Missing
// similarities are reported together.
std::vector<MetricScore> ScoreRetrievalQa(
    const std::vector<QuestionRecord> &questions,
    const std::vector<SimilarityRecord> &similarities,
    std::string_view source);

// "Question: {text} Choices: {c1, c2, ...} Answer:"
std::string FormatTextOnlyQa(const QuestionRecord &question);

// Ablated corpus for `plan.kind` as record lines, preceded by the
// provenance header.
std::string EmitAblation(const Corpus &corpus, const AblationPlan &plan);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_ABLATE_H_
