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

#ifndef METRIC_AUDIT_LEXICON_H_
#define METRIC_AUDIT_LEXICON_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace metric_audit {

std::string ToLower(std::string_view s);

// Lowercased word set. Lookups lowercase their argument.
class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(const std::vector<std::string> &words);

  // The bundled 179-entry English list.
  static const StopwordSet &English();
  static StopwordSet Load(const std::filesystem::path &path);

  bool Contains(std::string_view word) const;
  size_t size() const { return words_.size(); }
  std::vector<std::string> Sorted() const;

 private:
  std::unordered_set<std::string> words_;
};

// Word -> rating table (concreteness, imageability). Keys are lowercased.
class Lexicon {
 public:
  explicit Lexicon(std::unordered_map<std::string, double> entries);

  static Lexicon Load(const std::filesystem::path &path);
  static Lexicon Parse(std::istream &in, const std::string &name);

  std::optional<double> Lookup(std::string_view word) const;
  double min_rating() const { return min_rating_; }
  double max_rating() const { return max_rating_; }
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
  double min_rating_ = 0.0;
  double max_rating_ = 0.0;
};

// Object class labels (ImageNet-21k style). Multi-word labels such as
// "grizzly_bear" or "fire truck" contribute each of their tokens.
class ClassList {
 public:
  ClassList(std::vector<std::string> labels, const StopwordSet &stopwords);

  static ClassList Load(const std::filesystem::path &path,
                        const StopwordSet &stopwords = StopwordSet::English());

  bool ContainsToken(std::string_view token) const;
  const std::set<std::string> &labels() const { return labels_; }
  const std::set<std::string> &label_tokens() const { return label_tokens_; }

 private:
  std::set<std::string> labels_;
  std::set<std::string> label_tokens_;
};

}  // namespace metric_audit

#endif  // METRIC_AUDIT_LEXICON_H_
