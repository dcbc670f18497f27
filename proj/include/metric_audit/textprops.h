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

// Linguistic prompt properties: readability, syntactic complexity, length.

#ifndef METRIC_AUDIT_TEXTPROPS_H_
#define METRIC_AUDIT_TEXTPROPS_H_

#include <optional>
#include <string>
#include <string_view>

#include "metric_audit/lexicon.h"
#include "metric_audit/parse_tree.h"

namespace metric_audit {

// Vowel-group heuristic: maximal runs of a/e/i/o/u/y, minus a silent final
// "e" (kept for consonant + "le" endings), never less than 1.
int CountSyllables(std::string_view word);

struct ReadabilityCounts {
  size_t words = 0;
  size_t sentences = 0;
  size_t syllables = 0;
};

ReadabilityCounts CountReadability(std::string_view text);

// Kincaid grade level coefficients.
inline constexpr double kFkWordsPerSentence = 0.39;
inline constexpr double kFkSyllablesPerWord = 11.8;
inline constexpr double kFkIntercept = 15.59;

double FleschKincaidGrade(const ReadabilityCounts &counts);
// Stopwords are counted. Throws AuditError(kData) when `text` has no words.
double FleschKincaidGrade(std::string_view text);

enum class YngveAggregate { kMean, kMax };

// Per-leaf Yngve depths in left-to-right order. Each node on the path from
// the root contributes the number of siblings to its right.
std::vector<int> YngveDepths(const ParseTree &tree);
double YngveScore(const ParseTree &tree,
                  YngveAggregate aggregate = YngveAggregate::kMean);

// Number of word tokens that are not stopwords.
size_t PromptLength(std::string_view text, const StopwordSet &stopwords);

struct LinguisticProfile {
  std::string prompt_id;
  double grade_level = 0.0;
  std::optional<double> yngve;  // absent when the prompt has no parse
  size_t length = 0;
};

LinguisticProfile ComputeLinguisticProfile(
    std::string_view prompt_id, std::string_view text,
    const std::optional<std::string> &parse, const StopwordSet &stopwords,
    YngveAggregate aggregate = YngveAggregate::kMean);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_TEXTPROPS_H_
