// Copyright 2026 The summrank Authors.
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

#ifndef SUMMRANK_RANDOM_H_
#define SUMMRANK_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace summrank {

// SplitMix64 finalizer; used to derive independent sub-seeds.
uint64_t MixSeed(uint64_t seed, uint64_t salt);

// FNV-1a over the bytes of `s`.
uint64_t HashString(std::string_view s);

// Seeded generator whose derived draws are identical on every platform.
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions are not, so all draws go through the helpers below.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();
  // Uniform in [0, n); n must be positive.
  size_t UniformInt(size_t n);
  // Standard exponential variate.
  double Exponential();
  // Uniform point on the probability simplex of the given dimension.
  std::vector<double> SimplexPoint(size_t dim);
  // `count` distinct values from [0, n) in increasing order.
  std::vector<size_t> SampleSorted(size_t n, size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace summrank

#endif  // SUMMRANK_RANDOM_H_
