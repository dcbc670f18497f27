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

#include "metric_audit/lexicon.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "metric_audit/error.h"
#include "stopwords_data.h"

namespace metric_audit {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::ifstream OpenOrThrow(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open " + path.string());
  return in;
}

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

StopwordSet::StopwordSet(const std::vector<std::string> &words) {
  for (const std::string &w : words) {
    std::string t = ToLower(Trim(w));
    if (!t.empty()) words_.insert(std::move(t));
  }
}

const StopwordSet &StopwordSet::English() {
  static const StopwordSet kEnglish(std::vector<std::string>(
      std::begin(kEnglishStopwords), std::end(kEnglishStopwords)));
  return kEnglish;
}

StopwordSet StopwordSet::Load(const std::filesystem::path &path) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) words.push_back(line);
  StopwordSet set(words);
  if (set.size() == 0) ThrowData(path.string() + ": empty stopword list");
  return set;
}

bool StopwordSet::Contains(std::string_view word) const {
  return words_.count(ToLower(word)) > 0;
}

std::vector<std::string> StopwordSet::Sorted() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Lexicon::Lexicon(std::unordered_map<std::string, double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) ThrowData("lexicon has no entries");
  min_rating_ = std::numeric_limits<double>::infinity();
  max_rating_ = -std::numeric_limits<double>::infinity();
  for (const auto &[word, rating] : entries_) {
    min_rating_ = std::min(min_rating_, rating);
    max_rating_ = std::max(max_rating_, rating);
  }
}

Lexicon Lexicon::Parse(std::istream &in, const std::string &name) {
  std::unordered_map<std::string, double> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const size_t tab = line.find('\t');
    const std::string where = name + ":" + std::to_string(line_no);
    if (tab == std::string::npos) {
      ThrowData(where + ": expected word<TAB>rating");
    }
    std::string word = ToLower(Trim(std::string_view(line).substr(0, tab)));
    std::string rating_text = Trim(std::string_view(line).substr(tab + 1));
    double rating = 0.0;
    const char *first = rating_text.data();
    const char *last = first + rating_text.size();
    auto [ptr, ec] = std::from_chars(first, last, rating);
    if (ec != std::errc() || ptr != last || !std::isfinite(rating)) {
      ThrowData(where + ": non-numeric rating '" + rating_text + "'");
    }
    if (word.empty()) ThrowData(where + ": empty word");
    entries.emplace(std::move(word), rating);  // first occurrence wins
  }
  if (entries.empty()) ThrowData(name + ": empty lexicon");
  return Lexicon(std::move(entries));
}

Lexicon Lexicon::Load(const std::filesystem::path &path) {
  std::ifstream in = OpenOrThrow(path);
  return Parse(in, path.string());
}

std::optional<double> Lexicon::Lookup(std::string_view word) const {
  auto it = entries_.find(ToLower(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

ClassList::ClassList(std::vector<std::string> labels,
                     const StopwordSet &stopwords) {
  for (std::string &label : labels) {
    std::string trimmed = Trim(label);
    if (trimmed.empty()) continue;
    std::string piece;
    for (char c : trimmed + " ") {
      if (c == ' ' || c == '_' || c == '\t') {
        if (!piece.empty()) {
          std::string token = ToLower(piece);
          if (!stopwords.Contains(token)) label_tokens_.insert(token);
          piece.clear();
        }
      } else {
        piece.push_back(c);
      }
    }
    labels_.insert(std::move(trimmed));
  }
  if (labels_.empty()) ThrowData("class list has no labels");
}

ClassList ClassList::Load(const std::filesystem::path &path,
                          const StopwordSet &stopwords) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!Trim(line).empty()) labels.push_back(line);
  }
  if (labels.empty()) ThrowData(path.string() + ": empty class list");
  return ClassList(std::move(labels), stopwords);
}

bool ClassList::ContainsToken(std::string_view token) const {
  return label_tokens_.count(ToLower(token)) > 0;
}

}  // namespace metric_audit
