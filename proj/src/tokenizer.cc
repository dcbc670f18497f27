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

#include "metric_audit/tokenizer.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <utility>

namespace metric_audit {
namespace {

// A rule can only match when `any_of` (if set) shares a character with the
// text and `needle` (if set) occurs in the lowercased text; other rules are
// skipped without running the regex.
struct Rule {
  std::regex pattern;
  std::string replacement;
  std::string any_of;
  std::string needle;
};

Rule R(const char *pattern, const char *replacement, const char *any_of) {
  return Rule{std::regex(pattern, std::regex::ECMAScript), replacement, any_of,
              ""};
}

Rule Word(const char *pattern, const char *replacement, const char *needle) {
  return Rule{std::regex(pattern, std::regex::ECMAScript | std::regex::icase),
              replacement, "", needle};
}

std::string Lower(std::string_view text) {
  std::string out(text);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void Apply(const std::vector<Rule> &rules, std::string &text) {
  std::string lower;
  bool lowered = false;
  for (const Rule &rule : rules) {
    if (!rule.any_of.empty() &&
        text.find_first_of(rule.any_of) == std::string::npos) {
      continue;
    }
    if (!rule.needle.empty()) {
      if (!lowered) {
        lower = Lower(text);
        lowered = true;
      }
      if (lower.find(rule.needle) == std::string::npos) continue;
    }
    text = std::regex_replace(text, rule.pattern, rule.replacement);
    lowered = false;
  }
}

bool IsWordChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool StartsWithClitic(std::string_view rest) {
  static const char *kClitics[] = {"re", "ve", "ll", "m", "t", "s", "d", "n"};
  for (const char *clitic : kClitics) {
    const std::string_view c(clitic);
    if (rest.size() < c.size()) continue;
    bool same = true;
    for (size_t i = 0; i < c.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(rest[i])) != c[i]) {
        same = false;
        break;
      }
    }
    if (same && (rest.size() == c.size() || !IsWordChar(rest[c.size()]))) {
      return true;
    }
  }
  return false;
}

// An opening single quote glued to a word ('Hello) is split off unless what
// follows is a clitic.
std::string SplitOpeningSingleQuotes(const std::string &text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (size_t i = 0; i < text.size(); ++i) {
    out.push_back(text[i]);
    if (text[i] != '\'') continue;
    const bool after_word = i > 0 && IsWordChar(text[i - 1]);
    const bool before_word = i + 1 < text.size() && IsWordChar(text[i + 1]);
    if (!after_word && before_word &&
        !StartsWithClitic(std::string_view(text).substr(i + 1))) {
      out.push_back(' ');
    }
  }
  return out;
}

const std::vector<Rule> &StartingQuotes() {
  static const std::vector<Rule> rules = {
      R("(\xC2\xAB|\xE2\x80\x9C|\xE2\x80\x98|\xE2\x80\x9E|`+)", " $1 ",
        "\xC2\xE2`"),
      R("^\"", "``", "\""),
      R("(``)", " $1 ", "`"),
      // A bare '' is left alone so emitted closing quotes survive re-tokenizing.
      R("([ \\(\\[{<])(\")", "$1 `` ", "\""),
  };
  return rules;
}

const std::vector<Rule> &Punctuation() {
  static const std::vector<Rule> rules = {
      R("([^\\.])(\\.)((?:[\\]\\)}>\"' ]|\xC2\xBB|\xE2\x80\x9D|\xE2\x80\x99)*)"
        "\\s*$",
        "$1 $2 $3 ", "."),
      R("([:,])([^\\d])", " $1 $2", ":,"),
      R("([:,])$", " $1 ", ":,"),
      R("\\.{2,}", " $& ", "."),
      R("[;@#$%&]", " $& ", ";@#$%&"),
      R("\xE2\x80\x92|\xE2\x80\x93|\xE2\x80\x94|\xE2\x80\x95", " $& ",
        "\xE2"),
      R("([^\\.])(\\.)([\\]\\)}>\"']*)\\s*$", "$1 $2$3 ", "."),
      R("[?!]", " $& ", "?!"),
      R("([^'])' ", "$1 ' ", "'"),
      R("[*]", " $& ", "*"),
      R("[\\]\\[\\(\\)\\{\\}<>]", " $& ", "[](){}<>"),
      R("--", " -- ", "-"),
  };
  return rules;
}

const std::vector<Rule> &EndingQuotes() {
  static const std::vector<Rule> rules = {
      R("(\xC2\xBB|\xE2\x80\x9D|\xE2\x80\x99)", " $1 ", "\xC2\xE2"),
      R("''", " '' ", "'"),
      R("\"", " '' ", "\""),
  };
  return rules;
}

const std::vector<Rule> &Clitics() {
  static const std::vector<Rule> rules = {
      R("([^' ])('[sS]|'[mM]|'[dD]|') ", "$1 $2 ", "'"),
      R("([^' ])('ll|'LL|'re|'RE|'ve|'VE|n't|N'T) ", "$1 $2 ", "'"),
  };
  return rules;
}

const std::vector<Rule> &Contractions() {
  static const std::vector<Rule> rules = {
      Word("\\b(can)(not)\\b", " $1 $2 ", "cannot"),
      Word("\\b(d)('ye)\\b", " $1 $2 ", "d'ye"),
      Word("\\b(gim)(me)\\b", " $1 $2 ", "gimme"),
      Word("\\b(gon)(na)\\b", " $1 $2 ", "gonna"),
      Word("\\b(got)(ta)\\b", " $1 $2 ", "gotta"),
      Word("\\b(lem)(me)\\b", " $1 $2 ", "lemme"),
      Word("\\b(more)('n)\\b", " $1 $2 ", "more'n"),
      Word("\\b(wan)(na)(?=\\s)", " $1 $2 ", "wanna"),
      Word(" ('t)(is)\\b", " $1 $2 ", " 'tis"),
      Word(" ('t)(was)\\b", " $1 $2 ", " 'twas"),
  };
  return rules;
}

}  // namespace

size_t TokenSequence::WordCount() const {
  size_t n = 0;
  for (bool w : is_word) n += w ? 1 : 0;
  return n;
}

std::vector<std::string> TokenSequence::Words() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (is_word[i]) out.push_back(tokens[i]);
  }
  return out;
}

std::string TokenSequence::Joined() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool IsWordToken(std::string_view token) {
  for (char c : token) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) return true;
  }
  return false;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  size_t start = 0;
  while (start < text.size() && is_space(text[start])) ++start;
  for (size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 < text.size() && !is_space(text[i + 1])) continue;
    sentences.emplace_back(text.substr(start, i + 1 - start));
    start = i + 1;
    while (start < text.size() && is_space(text[start])) ++start;
    i = start - 1;
  }
  size_t end = text.size();
  while (end > start && is_space(text[end - 1])) --end;
  if (end > start) sentences.emplace_back(text.substr(start, end - start));
  return sentences;
}

namespace {

// Each whitespace run becomes one space.
std::string CollapseSpaces(const std::string &text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> TokenizeSentence(std::string_view sentence) {
  std::string text(sentence);
  Apply(StartingQuotes(), text);
  text = SplitOpeningSingleQuotes(text);
  Apply(Punctuation(), text);
  text = " " + text + " ";
  Apply(EndingQuotes(), text);
  text = CollapseSpaces(text);
  Apply(Clitics(), text);
  Apply(Contractions(), text);

  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

namespace {

std::vector<std::string> TokenizeOnce(std::string_view text) {
  std::vector<std::string> tokens;
  for (const std::string &sentence : SplitSentences(text)) {
    for (std::string &token : TokenizeSentence(sentence)) {
      tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

TokenSequence Tokenize(std::string_view text) {
  // One pass is stable for ordinary prose. Odd punctuation runs (":,x",
  // "a.b." mid-sentence) can split further on a second pass, so repeat
  // until the space-joined output is a fixed point.
  std::vector<std::string> tokens = TokenizeOnce(text);
  // No rule fires on purely alphanumeric tokens, so they are already stable.
  const bool plain = std::all_of(
      tokens.begin(), tokens.end(), [](const std::string &t) {
        return std::all_of(t.begin(), t.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) != 0;
        });
      });
  for (int pass = 0; !plain && pass < 16; ++pass) {
    std::vector<std::string> next = TokenizeOnce(JoinTokens(tokens));
    if (next == tokens) break;
    tokens = std::move(next);
  }
  TokenSequence seq;
  for (std::string &token : tokens) {
    seq.is_word.push_back(IsWordToken(token));
    seq.tokens.push_back(std::move(token));
  }
  return seq;
}

}  // namespace metric_audit
