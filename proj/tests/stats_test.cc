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
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "metric_audit/error.h"
#include "metric_audit/random.h"

namespace metric_audit {
namespace {

// Average ranks by counting, then Pearson in long double.
double OracleSpearman(const std::vector<double> &x,
                      const std::vector<double> &y) {
  auto ranks = [](const std::vector<double> &v) {
    std::vector<long double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      long double less = 0;
      long double equal = 0;
      for (double w : v) {
        if (w < v[i]) less += 1;
        if (w == v[i]) equal += 1;
      }
      r[i] = less + (equal + 1) / 2;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const long double n = static_cast<long double>(x.size());
  long double mx = 0;
  long double my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

double BoostTwoSidedP(double t, double df) {
  boost::math::students_t dist(df);
  return 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

std::vector<double> TiedVector(Rng &rng, size_t n) {
  std::vector<double> v(n);
  const uint64_t levels = 2 + rng.Below(n);
  for (double &x : v) x = static_cast<double>(rng.Below(levels));
  return v;
}

bool HasSpread(const std::vector<double> &v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) !=
         v.end();
}

TEST(Spearman, PerfectMonotone) {
  const std::vector<double> x = {1, 2, 3};
  CorrelationResult r = Spearman(x, std::vector<double>{10, 20, 30});
  EXPECT_EQ(r.rho, 1.0);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_TRUE(r.significant);
  EXPECT_TRUE(r.strong);
  EXPECT_EQ(Spearman(x, std::vector<double>{3, 2, 1}).rho, -1.0);
}

TEST(Spearman, TiedExampleMatchesOracle) {
  const std::vector<double> x = {1, 2, 2, 4};
  const std::vector<double> y = {1, 3, 2, 4};
  EXPECT_NEAR(Spearman(x, y).rho, OracleSpearman(x, y), 1e-12);
  EXPECT_NEAR(Spearman(x, y).rho, 0.9486832980505139, 1e-12);
}

TEST(Spearman, OracleEquivalenceWithTies) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 3 + rng.Below(48);
    std::vector<double> x = TiedVector(rng, n);
    std::vector<double> y = TiedVector(rng, n);
    if (!HasSpread(x) || !HasSpread(y)) continue;
    EXPECT_NEAR(Spearman(x, y).rho, OracleSpearman(x, y), 1e-12);
  }
}

TEST(Spearman, PValueAgainstStudentT) {
  // t = 0.5 * sqrt(8 / 0.75) with 8 degrees of freedom.
  const CorrelationResult r = Spearman(
      std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
      std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(r.n, 10u);
  EXPECT_NEAR(SpearmanTApproxP(0.5, 10), 0.14111328125, 1e-9);
  EXPECT_NEAR(SpearmanTApproxP(0.5, 10),
              BoostTwoSidedP(0.5 * std::sqrt(8 / 0.75), 8), 1e-12);
  // Two-sided 5% critical values of t.
  EXPECT_NEAR(StudentTTwoSidedP(2.306004135204166, 8), 0.05, 1e-9);
  EXPECT_NEAR(StudentTTwoSidedP(2.048407141795244, 28), 0.05, 1e-9);
  for (double df : {1.0, 2.0, 3.0, 7.0, 30.0, 120.0, 1000.0}) {
    for (double t : {0.0, 0.1, 0.7, 1.5, 2.5, 4.0, 10.0}) {
      EXPECT_NEAR(StudentTTwoSidedP(t, df), BoostTwoSidedP(t, df), 1e-10)
          << "t=" << t << " df=" << df;
    }
  }
}

TEST(RegularizedIncompleteBeta, AgainstBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0}) {
    for (double b : {0.5, 1.0, 3.0}) {
      for (double x : {0.0, 0.01, 0.3, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x),
                    boost::math::ibeta(a, b, x), 1e-12);
      }
    }
  }
}

TEST(Spearman, Errors) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_THROW(Spearman(x, std::vector<double>{1, 2}), AuditError);
  EXPECT_THROW(Spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
               AuditError);
  try {
    Spearman(x, std::vector<double>{5, 5, 5});
    FAIL();
  } catch (const AuditError &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStatistical);
  }
}

TEST(Spearman, Properties) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 3 + rng.Below(40);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = rng.Uniform01() * 4 - 2;
      y[i] = rng.Uniform01() * 4 - 2;
    }
    const CorrelationResult r = Spearman(x, y);
    EXPECT_EQ(Spearman(y, x).rho, r.rho);
    std::vector<double> ex(n);
    std::vector<double> cube(n);
    std::vector<double> neg(n);
    for (size_t i = 0; i < n; ++i) {
      ex[i] = std::exp(x[i]);
      cube[i] = y[i] * y[i] * y[i];
      neg[i] = -y[i];
    }
    EXPECT_NEAR(Spearman(ex, cube).rho, r.rho, 1e-12);
    const CorrelationResult negated = Spearman(x, neg);
    EXPECT_NEAR(negated.rho, -r.rho, 1e-12);
    EXPECT_NEAR(negated.p_value, r.p_value, 1e-12);
    EXPECT_LE(std::fabs(r.rho), 1.0);
    EXPECT_EQ(r.significant, r.p_value < r.alpha);
    EXPECT_EQ(r.strong, std::fabs(r.rho) >= r.tau);
  }
}

TEST(Spearman, ExactPermutationP) {
  StatsOptions options;
  options.exact_p = true;
  options.seed = 4;
  // n = 4 with perfect order: 1 of 24 permutations reaches |rho| = 1 in
  // each direction.
  const std::vector<double> x = {1, 2, 3, 4};
  const CorrelationResult small = Spearman(x, x, options);
  EXPECT_TRUE(small.exact_p);
  EXPECT_NEAR(small.p_value, 2.0 / 24.0, 1e-12);
  // Monte Carlo path for 8 < n < 30 agrees with an independent resampling
  // run to within five standard errors.
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i < 20; ++i) {
    a.push_back(i);
    b.push_back(i % 5 == 0 ? 20 - i : i);
  }
  const CorrelationResult mc = Spearman(a, b, options);
  EXPECT_TRUE(mc.exact_p);
  EXPECT_EQ(mc.p_value, Spearman(a, b, options).p_value);
  const double observed = std::fabs(OracleSpearman(a, b));
  std::mt19937 gen(99);
  std::vector<double> shuffled = b;
  const int draws = 200000;
  int extreme = 0;
  for (int i = 0; i < draws; ++i) {
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    if (std::fabs(OracleSpearman(a, shuffled)) >= observed - 1e-12) ++extreme;
  }
  const double oracle_p = static_cast<double>(extreme) / draws;
  const double se = std::sqrt(oracle_p * (1 - oracle_p) / 100000.0);
  EXPECT_NEAR(mc.p_value, oracle_p, 5 * se + 1e-4);
  // No permutation test at n >= 30.
  std::vector<double> big(30);
  std::iota(big.begin(), big.end(), 0.0);
  EXPECT_FALSE(Spearman(big, big, options).exact_p);
}

TEST(Spearman, OracleSuiteRunsFast) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x = TiedVector(rng, 50);
    std::vector<double> y = TiedVector(rng, 50);
    if (HasSpread(x) && HasSpread(y)) Spearman(x, y);
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count(),
            5.0);
}

std::vector<MetricScore> Scores(const std::string &source, Metric metric,
                                const std::vector<double> &values) {
  std::vector<MetricScore> out;
  for (size_t i = 0; i < values.size(); ++i) {
    out.push_back({"p" + std::to_string(i), source, metric, values[i], 1});
  }
  return out;
}

TEST(CorrelateProfiles, SelfCorrelationAndMonotoneConstruction) {
  std::vector<double> lengths = {3, 5, 8, 2, 9, 4, 7};
  std::vector<double> score;
  for (double l : lengths) score.push_back(1.0 / (1.0 + l));
  std::vector<MetricScore> scores = Scores("real", Metric::kTifa, score);
  auto more = Scores("model", Metric::kDsg, score);
  scores.insert(scores.end(), more.begin(), more.end());

  PromptValues length;
  PromptValues self;
  for (size_t i = 0; i < lengths.size(); ++i) {
    length["p" + std::to_string(i)] = lengths[i];
    self["p" + std::to_string(i)] = score[i];
  }
  for (const auto &cell : CorrelateProfiles(scores, length, "length")) {
    ASSERT_TRUE(cell.result.has_value());
    EXPECT_EQ(cell.result->rho, -1.0);
  }
  for (const auto &cell : CorrelateProfiles(scores, self, "self")) {
    EXPECT_EQ(cell.result->rho, 1.0);
  }
}

TEST(CorrelateProfiles, PairwiseDropAndNotes) {
  auto scores = Scores("m", Metric::kTifa, {0.1, 0.2, 0.3, 0.4});
  auto flat = Scores("flat", Metric::kTifa, {0.5, 0.5, 0.5, 0.5});
  scores.insert(scores.end(), flat.begin(), flat.end());
  PromptValues profile = {{"p0", 1}, {"p1", 2}, {"p2", 3}};
  auto cells = CorrelateProfiles(scores, profile, "x");
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].source, "flat");
  EXPECT_EQ(cells[0].note, "constant-input");
  EXPECT_EQ(cells[1].n_dropped, 1u);
  ASSERT_TRUE(cells[1].result.has_value());
  EXPECT_EQ(cells[1].result->n, 3u);

  PromptValues two = {{"p0", 1}, {"p1", 2}};
  auto small = CorrelateProfiles(scores, two, "x");
  EXPECT_EQ(small[1].note, "insufficient-n");
  EXPECT_FALSE(small[1].result.has_value());
}

TEST(MetricMatrix, IdenticalVectorsAndDiagonal) {
  auto scores = Scores("m", Metric::kTifa, {0.1, 0.5, 0.3, 0.9});
  auto dsg = Scores("m", Metric::kDsg, {0.1, 0.5, 0.3, 0.9});
  scores.insert(scores.end(), dsg.begin(), dsg.end());
  const CorrelationMatrix m = MetricMatrix(scores, "m");
  ASSERT_EQ(m.labels.size(), 2u);
  EXPECT_EQ(m.rho[0][1], 1.0);
  EXPECT_EQ(m.rho[0][0], 1.0);
  EXPECT_EQ(m.rho[1][1], 1.0);
  EXPECT_THROW(MetricMatrix(Scores("m", Metric::kTifa, {1, 2, 3}), "m"),
               AuditError);
}

TEST(MetricMatrix, IndependentVectorsNearZero) {
  Rng rng(20240601);
  std::vector<MetricScore> scores;
  for (Metric m : kAllMetrics) {
    std::vector<double> v(1000);
    for (double &x : v) x = rng.Uniform01();
    auto s = Scores("m", m, v);
    scores.insert(scores.end(), s.begin(), s.end());
  }
  const CorrelationMatrix m = MetricMatrix(scores, "m");
  ASSERT_EQ(m.labels.size(), 4u);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(m.rho[i][i], 1.0);
    for (size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(m.rho[i][j], m.rho[j][i]);
      if (i != j) {
        EXPECT_LT(std::fabs(m.rho[i][j]), 0.1);
        EXPECT_EQ(m.n[i][j], 1000u);
      }
    }
  }
}

}  // namespace
}  // namespace metric_audit
