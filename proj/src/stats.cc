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

#include "metric_audit/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "metric_audit/error.h"
#include "metric_audit/random.h"

namespace metric_audit {
namespace {

constexpr double kBetaTolerance = 1e-12;
constexpr int kBetaMaxIterations = 10000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kBetaTolerance) return h;
  }
  ThrowStatistical("incomplete beta continued fraction did not converge");
}

double RankCorrelation(const std::vector<double> &rx,
                       const std::vector<double> &ry) {
  const size_t n = rx.size();
  if (rx == ry) return 1.0;
  const double reversed_sum = static_cast<double>(n) + 1.0;
  bool reversed = true;
  for (size_t i = 0; i < n && reversed; ++i) {
    reversed = rx[i] + ry[i] == reversed_sum;
  }
  if (reversed) return -1.0;
  return std::clamp(PearsonCorrelation(rx, ry), -1.0, 1.0);
}

bool IsConstant(const std::vector<double> &ranks) {
  return std::all_of(ranks.begin(), ranks.end(),
                     [&](double r) { return r == ranks.front(); });
}

double PermutationP(const std::vector<double> &rx,
                    const std::vector<double> &ry, double rho,
                    const StatsOptions &options) {
  const double observed = std::fabs(rho) - 1e-12;
  const size_t n = rx.size();
  std::vector<double> permuted = ry;
  if (n <= kFullEnumerationMaxN) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    size_t total = 0;
    size_t extreme = 0;
    do {
      for (size_t i = 0; i < n; ++i) permuted[i] = ry[idx[i]];
      ++total;
      if (std::fabs(PearsonCorrelation(rx, permuted)) >= observed) ++extreme;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
  }
  Rng rng(options.seed);
  size_t extreme = 0;
  for (int t = 0; t < options.permutations; ++t) {
    FisherYatesShuffle(std::span<double>(permuted), rng);
    if (std::fabs(PearsonCorrelation(rx, permuted)) >= observed) ++extreme;
  }
  return (static_cast<double>(extreme) + 1.0) /
         (static_cast<double>(options.permutations) + 1.0);
}

}  // namespace

std::vector<double> AverageRanks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share rank mean of (i+1)..j
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double PearsonCorrelation(std::span<const double> x,
                          std::span<const double> y) {
  const size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    ThrowStatistical("incomplete beta needs positive shape parameters");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df > 0.0)) ThrowStatistical("t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(RegularizedIncompleteBeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

double SpearmanTApproxP(double rho, size_t n) {
  if (n < 3) ThrowStatistical("p-value needs n >= 3");
  const double one_minus = (1.0 - rho) * (1.0 + rho);
  if (one_minus <= 0.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(df / one_minus);
  return StudentTTwoSidedP(t, df);
}

CorrelationResult Spearman(std::span<const double> x, std::span<const double> y,
                           const StatsOptions &options) {
  if (x.size() != y.size()) {
    ThrowStatistical("spearman: length mismatch (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) ThrowStatistical("spearman: needs n >= 3");
  for (size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      ThrowStatistical("spearman: non-finite input");
    }
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  if (IsConstant(rx) || IsConstant(ry)) {
    ThrowStatistical("spearman: constant input has zero rank variance");
  }
  CorrelationResult result;
  result.n = x.size();
  result.rho = RankCorrelation(rx, ry);
  result.alpha = options.alpha;
  result.tau = options.tau;
  if (options.exact_p && result.n < kExactPMaxN) {
    result.exact_p = true;
    result.p_value = PermutationP(rx, ry, result.rho, options);
  } else {
    result.p_value = SpearmanTApproxP(result.rho, result.n);
  }
  result.significant = result.p_value < options.alpha;
  result.strong = std::fabs(result.rho) >= options.tau;
  return result;
}

std::vector<CorrelationCell> CorrelateProfiles(
    const std::vector<MetricScore> &scores, const PromptValues &profile,
    const std::string &property, const StatsOptions &options) {
  std::map<std::pair<std::string, Metric>, std::vector<const MetricScore *>>
      groups;
  for (const MetricScore &s : scores) groups[{s.source, s.metric}].push_back(&s);

  std::vector<CorrelationCell> cells;
  for (const auto &[key, members] : groups) {
    CorrelationCell cell;
    cell.source = key.first;
    cell.metric = key.second;
    cell.property = property;
    std::map<std::string, double> by_prompt;
    for (const MetricScore *s : members) by_prompt[s->prompt_id] = s->value;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto &[prompt, value] : by_prompt) {
      auto it = profile.find(prompt);
      if (it == profile.end() || !std::isfinite(it->second)) {
        ++cell.n_dropped;
        continue;
      }
      xs.push_back(it->second);
      ys.push_back(value);
    }
    if (xs.size() < 3) {
      cell.note = "insufficient-n";
    } else {
      StatsOptions cell_options = options;
      cell_options.seed = DeriveSeed(
          options.seed,
          key.first + "/" + std::string(MetricName(key.second)) + "/" + property);
      try {
        cell.result = Spearman(xs, ys, cell_options);
      } catch (const AuditError &) {
        cell.note = "constant-input";
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

CorrelationMatrix CorrelateColumns(
    const std::vector<std::pair<std::string, PromptValues>> &columns,
    const StatsOptions &options) {
  const size_t k = columns.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CorrelationMatrix m;
  m.rho.assign(k, std::vector<double>(k, nan));
  m.p.assign(k, std::vector<double>(k, nan));
  m.n.assign(k, std::vector<size_t>(k, 0));
  for (size_t i = 0; i < k; ++i) {
    m.labels.push_back(columns[i].first);
    m.rho[i][i] = 1.0;
    m.p[i][i] = 0.0;
    m.n[i][i] = columns[i].second.size();
  }
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto &[prompt, value] : columns[i].second) {
        auto it = columns[j].second.find(prompt);
        if (it == columns[j].second.end()) continue;
        xs.push_back(value);
        ys.push_back(it->second);
      }
      m.n[i][j] = m.n[j][i] = xs.size();
      if (xs.size() < 3) continue;
      StatsOptions pair_options = options;
      pair_options.seed =
          DeriveSeed(options.seed, columns[i].first + "|" + columns[j].first);
      try {
        const CorrelationResult r = Spearman(xs, ys, pair_options);
        m.rho[i][j] = m.rho[j][i] = r.rho;
        m.p[i][j] = m.p[j][i] = r.p_value;
      } catch (const AuditError &) {
        // constant column: left as NaN
      }
    }
  }
  return m;
}

CorrelationMatrix MetricMatrix(const std::vector<MetricScore> &scores,
                               const std::string &source,
                               const StatsOptions &options) {
  std::vector<std::pair<std::string, PromptValues>> columns;
  for (Metric metric : kAllMetrics) {
    PromptValues values;
    for (const MetricScore &s : scores) {
      if (s.source == source && s.metric == metric) {
        values[s.prompt_id] = s.value;
      }
    }
    if (!values.empty()) {
      columns.emplace_back(std::string(MetricName(metric)), std::move(values));
    }
  }
  if (columns.size() < 2) {
    ThrowStatistical("metric matrix for source '" + source +
                     "' needs at least two metrics, found " +
                     std::to_string(columns.size()));
  }
  return CorrelateColumns(columns, options);
}

}  // namespace metric_audit
