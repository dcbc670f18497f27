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

#include "metric_audit/textprops.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "metric_audit/error.h"
#include "metric_audit/tokenizer.h"

namespace metric_audit {
namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

void AccumulateDepths(const ParseTree &node, int depth,
                      std::vector<int> &out) {
  if (node.leaf) {
    out.push_back(depth);
    return;
  }
  const int n = static_cast<int>(node.children.size());
  for (int i = 0; i < n; ++i) {
    AccumulateDepths(node.children[i], depth + (n - 1 - i), out);
  }
}

}  // namespace

int CountSyllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) letters.push_back(static_cast<char>(std::tolower(u)));
  }
  if (letters.empty()) return 1;

  int groups = 0;
  bool in_group = false;
  for (char c : letters) {
    const bool vowel = IsVowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }

  // Silent final "e": only when it stands alone as the last vowel group, and
  // not in a consonant + "le" ending (ta-ble).
  const size_t n = letters.size();
  if (n >= 2 && letters[n - 1] == 'e' && !IsVowel(letters[n - 2])) {
    const bool consonant_le =
        n >= 3 && letters[n - 2] == 'l' && !IsVowel(letters[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

ReadabilityCounts CountReadability(std::string_view text) {
  ReadabilityCounts counts;
  const TokenSequence seq = Tokenize(text);
  for (size_t i = 0; i < seq.size(); ++i) {
    if (!seq.is_word[i]) continue;
    ++counts.words;
    counts.syllables += static_cast<size_t>(CountSyllables(seq.tokens[i]));
  }
  counts.sentences = std::max<size_t>(1, SplitSentences(text).size());
  return counts;
}

double FleschKincaidGrade(const ReadabilityCounts &counts) {
  if (counts.words == 0) ThrowData("readability of text with no words");
  const double words = static_cast<double>(counts.words);
  const double sentences =
      static_cast<double>(std::max<size_t>(1, counts.sentences));
  const double syllables = static_cast<double>(counts.syllables);
  return kFkWordsPerSentence * (words / sentences) +
         kFkSyllablesPerWord * (syllables / words) - kFkIntercept;
}

double FleschKincaidGrade(std::string_view text) {
  return FleschKincaidGrade(CountReadability(text));
}

std::vector<int> YngveDepths(const ParseTree &tree) {
  std::vector<int> depths;
  AccumulateDepths(tree, 0, depths);
  return depths;
}

double YngveScore(const ParseTree &tree, YngveAggregate aggregate) {
  const std::vector<int> depths = YngveDepths(tree);
  if (depths.empty()) ThrowData("Yngve score of a tree without leaves");
  if (aggregate == YngveAggregate::kMax) {
    return *std::max_element(depths.begin(), depths.end());
  }
  const double total = std::accumulate(depths.begin(), depths.end(), 0.0);
  return total / static_cast<double>(depths.size());
}

size_t PromptLength(std::string_view text, const StopwordSet &stopwords) {
  const TokenSequence seq = Tokenize(text);
  size_t n = 0;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (seq.is_word[i] && !stopwords.Contains(seq.tokens[i])) ++n;
  }
  return n;
}

LinguisticProfile ComputeLinguisticProfile(
    std::string_view prompt_id, std::string_view text,
    const std::optional<std::string> &parse, const StopwordSet &stopwords,
    YngveAggregate aggregate) {
  LinguisticProfile profile;
  profile.prompt_id = std::string(prompt_id);
  profile.grade_level = FleschKincaidGrade(text);
  profile.length = PromptLength(text, stopwords);
  if (parse) profile.yngve = YngveScore(ParseBracketed(*parse), aggregate);
  return profile;
}

}  // namespace metric_audit
