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

// Spearman rank correlation with average-rank ties, two-sided significance,
// and the tables built from it.

#ifndef METRIC_AUDIT_STATS_H_
#define METRIC_AUDIT_STATS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metric_audit/metrics.h"

namespace metric_audit {

struct StatsOptions {
  double alpha = 0.05;  // significance level
  double tau = 0.4;     // |rho| threshold for "moderate to strong"
  // Permutation p-values for n < kExactPMaxN instead of the t approximation.
  bool exact_p = false;
  uint64_t seed = 0;
  int permutations = 100000;
};

inline constexpr size_t kExactPMaxN = 30;
inline constexpr size_t kFullEnumerationMaxN = 8;

struct CorrelationResult {
  double rho = 0.0;
  size_t n = 0;
  double p_value = 1.0;
  bool significant = false;  // p_value < alpha
  bool strong = false;       // |rho| >= tau
  double alpha = 0.05;
  double tau = 0.4;
  bool exact_p = false;  // p from a permutation test
};

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

double PearsonCorrelation(std::span<const double> x, std::span<const double> y);

// I_x(a, b) by continued fraction (relative tolerance 1e-12).
double RegularizedIncompleteBeta(double a, double b, double x);

// Two-sided tail probability of Student's t with `df` degrees of freedom.
double StudentTTwoSidedP(double t, double df);

// p-value of a rank correlation under the t approximation with n-2 degrees
// of freedom; |rho| = 1 gives 0.
double SpearmanTApproxP(double rho, size_t n);

// Throws AuditError(kStatistical) on length mismatch, n < 3, or constant
// input.
CorrelationResult Spearman(std::span<const double> x, std::span<const double> y,
                           const StatsOptions &options = {});

// prompt_id -> value
using PromptValues = std::map<std::string, double>;

struct CorrelationCell {
  std::string source;
  Metric metric = Metric::kTifa;
  std::string property;
  std::optional<CorrelationResult> result;  // empty when not computable
  size_t n_dropped = 0;  // scored prompts without a property value
  std::string note;      // "insufficient-n", "constant-input"
};

// One cell per (source, metric) present in `scores`, ordered by source then
// metric, with pairwise deletion of prompts lacking either value.
std::vector<CorrelationCell> CorrelateProfiles(
    const std::vector<MetricScore> &scores, const PromptValues &profile,
    const std::string &property, const StatsOptions &options = {});

struct CorrelationMatrix {
  std::vector<std::string> labels;
  // NaN marks a pair without enough shared, non-constant observations.
  std::vector<std::vector<double>> rho;
  std::vector<std::vector<double>> p;
  std::vector<std::vector<size_t>> n;
};

// Pairwise Spearman over named columns, each pair computed once.
CorrelationMatrix CorrelateColumns(
    const std::vector<std::pair<std::string, PromptValues>> &columns,
    const StatsOptions &options = {});

// Metric-by-metric matrix for one source over the metrics it has scores
// for, in canonical metric order. Needs at least two metrics.
CorrelationMatrix MetricMatrix(const std::vector<MetricScore> &scores,
                               const std::string &source,
                               const StatsOptions &options = {});

}  // namespace metric_audit

#endif  // METRIC_AUDIT_STATS_H_
