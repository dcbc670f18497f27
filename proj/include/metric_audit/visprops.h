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

// Visual-prior prompt properties: concreteness, imageability and overlap with
// an object class vocabulary, all computed from the prompt text.

#ifndef METRIC_AUDIT_VISPROPS_H_
#define METRIC_AUDIT_VISPROPS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metric_audit/lexicon.h"

namespace metric_audit {

// How words absent from a lexicon are scored.
enum class MissingWordPolicy {
  kLowest,  // lexicon minimum
  kZero,
  kOmit,
};

std::string_view MissingWordPolicyName(MissingWordPolicy policy);
std::optional<MissingWordPolicy> ParseMissingWordPolicy(std::string_view name);

// Lowercased non-stopword word tokens, with hyphenated words split into
// their parts.
std::vector<std::string> ContentTokens(std::string_view text,
                                       const StopwordSet &stopwords);

double LexicalMean(std::string_view text, const Lexicon &lexicon,
                   const StopwordSet &stopwords, MissingWordPolicy policy);

// Fraction of content tokens found among the class label tokens, counted
// per occurrence.
double ClassOverlap(std::string_view text, const ClassList &classes,
                    const StopwordSet &stopwords);

struct VisualProfile {
  std::string prompt_id;
  std::optional<double> concreteness;
  std::optional<double> imageability;
  std::optional<double> class_overlap;
  MissingWordPolicy missing_word_policy = MissingWordPolicy::kLowest;
};

VisualProfile ComputeVisualProfile(std::string_view prompt_id,
                                   std::string_view text,
                                   const Lexicon *concreteness,
                                   const Lexicon *imageability,
                                   const ClassList *classes,
                                   const StopwordSet &stopwords,
                                   MissingWordPolicy policy);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_VISPROPS_H_
