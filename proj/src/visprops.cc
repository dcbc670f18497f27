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

#include "metric_audit/visprops.h"

#include "metric_audit/error.h"
#include "metric_audit/tokenizer.h"

namespace metric_audit {

std::string_view MissingWordPolicyName(MissingWordPolicy policy) {
  switch (policy) {
    case MissingWordPolicy::kLowest:
      return "lowest";
    case MissingWordPolicy::kZero:
      return "zero";
    case MissingWordPolicy::kOmit:
      return "omit";
  }
  return "unknown";
}

std::optional<MissingWordPolicy> ParseMissingWordPolicy(std::string_view name) {
  if (name == "lowest") return MissingWordPolicy::kLowest;
  if (name == "zero") return MissingWordPolicy::kZero;
  if (name == "omit") return MissingWordPolicy::kOmit;
  return std::nullopt;
}

std::vector<std::string> ContentTokens(std::string_view text,
                                       const StopwordSet &stopwords) {
  std::vector<std::string> out;
  const TokenSequence seq = Tokenize(text);
  for (size_t i = 0; i < seq.size(); ++i) {
    if (!seq.is_word[i]) continue;
    const std::string lowered = ToLower(seq.tokens[i]);
    size_t start = 0;
    while (start <= lowered.size()) {
      size_t dash = lowered.find('-', start);
      if (dash == std::string::npos) dash = lowered.size();
      std::string part = lowered.substr(start, dash - start);
      if (IsWordToken(part) && !stopwords.Contains(part)) {
        out.push_back(std::move(part));
      }
      start = dash + 1;
    }
  }
  return out;
}

double LexicalMean(std::string_view text, const Lexicon &lexicon,
                   const StopwordSet &stopwords, MissingWordPolicy policy) {
  const std::vector<std::string> tokens = ContentTokens(text, stopwords);
  if (tokens.empty()) {
    ThrowData("no scorable tokens: every word is a stopword");
  }
  double total = 0.0;
  size_t count = 0;
  for (const std::string &token : tokens) {
    if (auto rating = lexicon.Lookup(token)) {
      total += *rating;
      ++count;
      continue;
    }
    switch (policy) {
      case MissingWordPolicy::kLowest:
        total += lexicon.min_rating();
        ++count;
        break;
      case MissingWordPolicy::kZero:
        ++count;
        break;
      case MissingWordPolicy::kOmit:
        break;
    }
  }
  if (count == 0) {
    ThrowData("no scorable tokens: every content word is missing from the "
              "lexicon under the omit policy");
  }
  return total / static_cast<double>(count);
}

double ClassOverlap(std::string_view text, const ClassList &classes,
                    const StopwordSet &stopwords) {
  const std::vector<std::string> tokens = ContentTokens(text, stopwords);
  if (tokens.empty()) {
    ThrowData("class overlap of text without non-stopword tokens");
  }
  size_t hits = 0;
  for (const std::string &token : tokens) {
    if (classes.ContainsToken(token)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

// A property that cannot be computed for this prompt (for example, a prompt
// made only of stopwords) is left empty and later dropped pairwise.
VisualProfile ComputeVisualProfile(std::string_view prompt_id,
                                   std::string_view text,
                                   const Lexicon *concreteness,
                                   const Lexicon *imageability,
                                   const ClassList *classes,
                                   const StopwordSet &stopwords,
                                   MissingWordPolicy policy) {
  VisualProfile profile;
  profile.prompt_id = std::string(prompt_id);
  profile.missing_word_policy = policy;
  auto attempt = [](auto fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const AuditError &) {
      return std::nullopt;
    }
  };
  if (concreteness) {
    profile.concreteness = attempt(
        [&] { return LexicalMean(text, *concreteness, stopwords, policy); });
  }
  if (imageability) {
    profile.imageability = attempt(
        [&] { return LexicalMean(text, *imageability, stopwords, policy); });
  }
  if (classes) {
    profile.class_overlap =
        attempt([&] { return ClassOverlap(text, *classes, stopwords); });
  }
  return profile;
}

}  // namespace metric_audit
