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

#include "metric_audit/error.h"
#include "metric_audit/records.h"

namespace metric_audit {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return "config";
    case ErrorKind::kData:
      return "data";
    case ErrorKind::kStatistical:
      return "statistical";
  }
  return "unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return 2;
    case ErrorKind::kData:
      return 3;
    case ErrorKind::kStatistical:
      return 4;
  }
  return 1;
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kClipScore:
      return "clipscore";
    case Metric::kTifa:
      return "tifa";
    case Metric::kVpeval:
      return "vpeval";
    case Metric::kDsg:
      return "dsg";
  }
  return "unknown";
}

std::optional<Metric> ParseMetric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (MetricName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view QuestionTypeName(QuestionType type) {
  return type == QuestionType::kYesNo ? "yes_no" : "multiple_choice";
}

std::optional<QuestionType> ParseQuestionType(std::string_view name) {
  if (name == "yes_no") return QuestionType::kYesNo;
  if (name == "multiple_choice") return QuestionType::kMultipleChoice;
  return std::nullopt;
}

}  // namespace metric_audit
