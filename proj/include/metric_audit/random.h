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

// Seeded randomness. Every stochastic step draws from an Rng whose seed is
// derived from the run seed and a stable key (a prompt id, a group key), so
// results do not depend on evaluation order or on the standard library's
// distribution implementations.

#ifndef METRIC_AUDIT_RANDOM_H_
#define METRIC_AUDIT_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace metric_audit {

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view data);

// splitmix64 finalizer applied to seed ^ Fnv1a64(key).
uint64_t DeriveSeed(uint64_t seed, std::string_view key);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform integer in [0, bound); bound must be > 0.
  uint64_t Below(uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

 private:
  std::mt19937_64 engine_;
};

template <typename T>
void FisherYatesShuffle(std::span<T> items, Rng &rng) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.Below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

std::vector<size_t> RandomPermutation(size_t n, Rng &rng);

// Uniform over permutations without fixed points (rejection sampling,
// about e draws on average). Requires n >= 2.
std::vector<size_t> RandomDerangement(size_t n, Rng &rng);

}  // namespace metric_audit

#endif  // METRIC_AUDIT_RANDOM_H_
