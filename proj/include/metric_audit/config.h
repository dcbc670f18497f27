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

#ifndef METRIC_AUDIT_CONFIG_H_
#define METRIC_AUDIT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metric_audit/audit.h"
#include "metric_audit/metrics.h"
#include "metric_audit/records.h"
#include "metric_audit/textprops.h"
#include "metric_audit/visprops.h"

namespace metric_audit {

inline constexpr const char *kSeedEnvVar = "METRIC_AUDIT_SEED";

// Record files produced by a backend for one ablation variant.
struct AblationInputs {
  std::optional<std::filesystem::path> answers;
  std::optional<std::filesystem::path> similarities;
};

struct RunConfig {
  std::optional<std::filesystem::path> prompts;
  std::optional<std::filesystem::path> images;
  std::optional<std::filesystem::path> questions;
  std::optional<std::filesystem::path> answers;
  std::optional<std::filesystem::path> similarities;
  std::optional<std::filesystem::path> concreteness;
  std::optional<std::filesystem::path> imageability;
  std::optional<std::filesystem::path> classes;
  std::optional<std::filesystem::path> stopwords;
  // Keyed by variant name: shuffled_images, shuffled_text, retrieval_qa,
  // text_only_qa.
  std::map<std::string, AblationInputs> ablations;

  std::optional<uint64_t> seed;
  double alpha = 0.05;
  double tau = 0.4;
  ShortcutThresholds shortcuts;
  MissingWordPolicy missing_policy = MissingWordPolicy::kLowest;
  YngveAggregate yngve = YngveAggregate::kMean;
  int chance_trials = kDefaultChanceTrials;
  bool exact_p = false;
  bool derangement = false;
  bool svg = true;
  std::filesystem::path out = "out";
};

// Values given on the command line; set fields replace the config file.
struct ConfigOverrides {
  std::optional<uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> tau;
  std::optional<std::string> missing_policy;
  std::optional<bool> derangement;
  std::optional<bool> exact_p;
  std::optional<std::filesystem::path> out;
};

// Relative paths resolve against `base_dir`. Throws AuditError(kConfig)
// listing every problem found.
RunConfig ParseConfig(const Json &json, const std::filesystem::path &base_dir);
RunConfig LoadConfig(const std::filesystem::path &path);

// Applies flags, then falls back to `env_seed` when no seed is set.
void ApplyOverrides(RunConfig &config, const ConfigOverrides &overrides,
                    const char *env_seed);

// Problems with value ranges and referenced paths; empty when valid.
std::vector<std::string> ConfigProblems(const RunConfig &config,
                                        bool needs_seed);
void ValidateConfig(const RunConfig &config, bool needs_seed);

Json ConfigJson(const RunConfig &config);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_CONFIG_H_
