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

#include "summrank/random.h"

#include <cmath>
#include <algorithm>
#include <numeric>

namespace summrank {

uint64_t MixSeed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t HashString(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

size_t Rng::UniformInt(size_t n) {
  const uint64_t range = static_cast<uint64_t>(n);
  // Rejects the low 2^64 mod n values so every residue is equally likely.
  const uint64_t threshold = (0 - range) % range;
  uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return static_cast<size_t>(x % range);
}

double Rng::Exponential() { return -std::log1p(-Uniform()); }

std::vector<double> Rng::SimplexPoint(size_t dim) {
  std::vector<double> point(dim);
  double total = 0.0;
  for (auto& v : point) {
    v = Exponential();
    total += v;
  }
  if (total <= 0.0) {
    std::fill(point.begin(), point.end(), 1.0 / static_cast<double>(dim));
    return point;
  }
  for (auto& v : point) v /= total;
  return point;
}

std::vector<size_t> Rng::SampleSorted(size_t n, size_t count) {
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  count = std::min(count, n);
  // Partial Fisher-Yates.
  for (size_t i = 0; i < count; ++i) {
    const size_t j = i + UniformInt(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace summrank
