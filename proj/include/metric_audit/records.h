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

// Record types shared by every stage of the audit pipeline. Each record keeps
// the keys it did not recognise in `extra` so that a load/write cycle
// reproduces richer upstream files without loss.

#ifndef METRIC_AUDIT_RECORDS_H_
#define METRIC_AUDIT_RECORDS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace metric_audit {

using Json = nlohmann::ordered_json;

enum class Metric { kClipScore, kTifa, kVpeval, kDsg };

inline constexpr Metric kAllMetrics[] = {Metric::kClipScore, Metric::kTifa,
                                         Metric::kVpeval, Metric::kDsg};
inline constexpr Metric kQuestionMetrics[] = {Metric::kTifa, Metric::kVpeval,
                                              Metric::kDsg};

std::string_view MetricName(Metric metric);
std::optional<Metric> ParseMetric(std::string_view name);
inline bool IsQuestionMetric(Metric m) { return m != Metric::kClipScore; }

enum class QuestionType { kYesNo, kMultipleChoice };

std::string_view QuestionTypeName(QuestionType type);
std::optional<QuestionType> ParseQuestionType(std::string_view name);

struct PromptRecord {
  std::string id;
  std::string dataset;
  std::string text;
  std::optional<std::string> parse;  // Penn-Treebank bracketed tree
  Json extra = Json::object();
};

struct ImageRef {
  std::string prompt_id;
  std::string source;  // T2I model name or "real"
  std::string image_key;
  Json extra = Json::object();
};

struct QuestionRecord {
  std::string question_id;
  std::string prompt_id;
  Metric metric = Metric::kTifa;
  std::string text;
  QuestionType qtype = QuestionType::kYesNo;
  std::vector<std::string> choices;
  std::string gold;
  std::vector<std::string> depends_on;
  Json extra = Json::object();
};

struct AnswerRecord {
  std::string question_id;
  std::string source;
  std::string predicted;
  Json extra = Json::object();
};

struct SimilarityRecord {
  std::string prompt_id;
  std::string source;
  std::string caption_variant;
  double score = 0.0;
  Json extra = Json::object();
};

// Caption variant that carries the plain prompt-vs-image CLIPScore.
inline constexpr std::string_view kFullPromptVariant = "full_prompt";

}  // namespace metric_audit

#endif  // METRIC_AUDIT_RECORDS_H_
