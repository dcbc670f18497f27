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

#ifndef METRIC_AUDIT_ERROR_H_
#define METRIC_AUDIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metric_audit {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  kConfig,        // exit 2
  kData,          // exit 3
  kStatistical,   // exit 4
};

std::string_view ErrorKindName(ErrorKind kind);
int ExitCodeFor(ErrorKind kind);

// All library failures are reported through this exception. `problems`
// carries every individual issue when a check enumerates more than one.
class AuditError : public std::runtime_error {
 public:
  AuditError(ErrorKind kind, const std::string &message,
             std::vector<std::string> problems = {})
      : std::runtime_error(message),
        kind_(kind),
        problems_(std::move(problems)) {}

  ErrorKind kind() const { return kind_; }
  const std::vector<std::string> &problems() const { return problems_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> problems_;
};

[[noreturn]] inline void ThrowData(const std::string &message) {
  throw AuditError(ErrorKind::kData, message);
}

[[noreturn]] inline void ThrowStatistical(const std::string &message) {
  throw AuditError(ErrorKind::kStatistical, message);
}

[[noreturn]] inline void ThrowConfig(const std::string &message) {
  throw AuditError(ErrorKind::kConfig, message);
}

}  // namespace metric_audit

#endif  // METRIC_AUDIT_ERROR_H_
