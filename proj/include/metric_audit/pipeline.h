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

#ifndef METRIC_AUDIT_PIPELINE_H_
#define METRIC_AUDIT_PIPELINE_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "metric_audit/ablate.h"
#include "metric_audit/config.h"
#include "metric_audit/corpus.h"
#include "metric_audit/lexicon.h"
#include "metric_audit/report.h"

namespace metric_audit {

enum class Command {
  kValidate,
  kProps,
  kScore,
  kCorrelate,
  kMatrix,
  kAblate,
  kAudit,
  kReport,
  kAll,
};

std::string_view CommandName(Command command);
std::optional<Command> ParseCommand(std::string_view name);
bool NeedsSeed(Command command, const RunConfig &config);

struct AblationRecords {
  std::vector<AnswerRecord> answers;
  std::vector<SimilarityRecord> similarities;
};

// Everything a run reads, loaded and cross-checked.
struct Inputs {
  Corpus corpus;
  StopwordSet stopwords;
  std::optional<Lexicon> concreteness;
  std::optional<Lexicon> imageability;
  std::optional<ClassList> classes;
  std::map<std::string, AblationRecords> ablations;
};

// Throws AuditError(kData) listing the problems of every file it could read.
Inputs LoadInputs(const RunConfig &config);

// Counts of what LoadInputs accepted.
Json InputSummary(const Inputs &inputs);

// Computes the sections of `command` in memory. `generated_at` is recorded
// in meta.json only.
ReportBundle BuildBundle(const RunConfig &config, const Inputs &inputs,
                         Command command, const std::string &generated_at);

// Validates the config, loads inputs, computes and writes the outputs of
// `command` under config.out. `kind` is required for kAblate.
void RunCommand(Command command, const RunConfig &config,
                std::optional<AblationKind> kind, std::ostream &log);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_PIPELINE_H_
