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

// Treebank-style word tokenization.
//
// Text is first split into sentences on ". ! ?" followed by whitespace or the
// end of input, then each sentence goes through the improved Treebank
// substitution rules: quotes become `` and '', punctuation is padded, and
// clitics (n't 's 're 've 'll 'd 'm) are split off.

#ifndef METRIC_AUDIT_TOKENIZER_H_
#define METRIC_AUDIT_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace metric_audit {

struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<bool> is_word;  // false for punctuation-only tokens

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  size_t WordCount() const;
  std::vector<std::string> Words() const;
  std::string Joined() const;  // tokens separated by single spaces
};

std::vector<std::string> SplitSentences(std::string_view text);

// Treebank rules on one sentence, without sentence splitting.
std::vector<std::string> TokenizeSentence(std::string_view sentence);

TokenSequence Tokenize(std::string_view text);

// A token is a word when it holds at least one letter, digit, or non-ASCII
// byte.
bool IsWordToken(std::string_view token);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_TOKENIZER_H_
