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

// Brute-force reference implementations used by the tests. They share no
// code with the library: n-grams are explicit token vectors in ordered maps,
// LCS uses the full table, and searches are exhaustive.

#ifndef SUMMRANK_TESTS_ORACLES_ORACLES_H_
#define SUMMRANK_TESTS_ORACLES_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;
using Gram = std::vector<std::string>;

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
};

inline Prf MakePrf(double hits, double cand_total, double ref_total) {
  Prf out;
  out.p = cand_total > 0 ? hits / cand_total : 0.0;
  out.r = ref_total > 0 ? hits / ref_total : 0.0;
  out.f = out.p + out.r > 0 ? 2 * out.p * out.r / (out.p + out.r) : 0.0;
  return out;
}

inline std::map<Gram, int> Grams(const Tokens& t, size_t n) {
  std::map<Gram, int> out;
  for (size_t i = 0; i + n <= t.size(); ++i) {
    ++out[Gram(t.begin() + static_cast<long>(i),
               t.begin() + static_cast<long>(i + n))];
  }
  return out;
}

inline int Total(const std::map<Gram, int>& grams) {
  int total = 0;
  for (const auto& [g, c] : grams) total += c;
  return total;
}

inline int Clipped(const std::map<Gram, int>& cand,
                   const std::map<Gram, int>& ref) {
  int hits = 0;
  for (const auto& [g, c] : cand) {
    auto it = ref.find(g);
    if (it != ref.end()) hits += std::min(c, it->second);
  }
  return hits;
}

inline Prf RougeN(const Tokens& cand, const Tokens& ref, size_t n) {
  const auto c = Grams(cand, n);
  const auto r = Grams(ref, n);
  return MakePrf(Clipped(c, r), Total(c), Total(r));
}

using Table = std::vector<std::vector<int>>;

inline Table LcsTable(const Tokens& a, const Tokens& b) {
  Table t(a.size() + 1, std::vector<int>(b.size() + 1, 0));
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

inline Prf RougeL(const Tokens& cand, const Tokens& ref) {
  const Table t = LcsTable(cand, ref);
  return MakePrf(t[cand.size()][ref.size()], static_cast<double>(cand.size()),
                 static_cast<double>(ref.size()));
}

// Reference positions of one LCS. When the current tokens differ, move
// along the candidate if that keeps a strictly longer LCS, else along the
// reference.
inline std::set<size_t> LcsRefPositions(const Tokens& ref, const Tokens& cand) {
  const Table t = LcsTable(ref, cand);
  std::set<size_t> out;
  std::function<void(size_t, size_t)> walk = [&](size_t i, size_t j) {
    if (i == 0 || j == 0) return;
    if (ref[i - 1] == cand[j - 1]) {
      out.insert(i - 1);
      walk(i - 1, j - 1);
    } else if (t[i][j - 1] > t[i - 1][j]) {
      walk(i, j - 1);
    } else {
      walk(i - 1, j);
    }
  };
  walk(ref.size(), cand.size());
  return out;
}

inline Prf RougeLsum(const std::vector<Tokens>& cand,
                     const std::vector<Tokens>& ref) {
  std::map<std::string, int> cand_left;
  std::map<std::string, int> ref_left;
  double cand_total = 0;
  double ref_total = 0;
  for (const auto& s : cand) {
    cand_total += static_cast<double>(s.size());
    for (const auto& w : s) ++cand_left[w];
  }
  for (const auto& s : ref) {
    ref_total += static_cast<double>(s.size());
    for (const auto& w : s) ++ref_left[w];
  }
  double hits = 0;
  for (const auto& r : ref) {
    std::set<size_t> merged;
    for (const auto& c : cand) {
      const auto pos = LcsRefPositions(r, c);
      merged.insert(pos.begin(), pos.end());
    }
    for (size_t p : merged) {
      const std::string& w = r[p];
      if (cand_left[w] > 0 && ref_left[w] > 0) {
        ++hits;
        --cand_left[w];
        --ref_left[w];
      }
    }
  }
  return MakePrf(hits, cand_total, ref_total);
}

inline double Bleu(const Tokens& cand, const Tokens& ref) {
  if (cand.empty()) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (size_t n = 1; n <= 4; ++n) {
    const auto c = Grams(cand, n);
    const int total = Total(c);
    if (total == 0) continue;
    const int hits = Clipped(c, Grams(ref, n));
    const double p = hits > 0 ? static_cast<double>(hits) / total
                              : 1.0 / (total + 1.0);
    log_sum += std::log(p);
    ++orders;
  }
  const double geo = std::exp(log_sum / orders);
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return geo * bp;
}

inline double Diversity(const Tokens& t) {
  double sum = 0.0;
  for (size_t n = 1; n <= 3; ++n) {
    const auto g = Grams(t, n);
    const int total = Total(g);
    sum += total == 0 ? 1.0 : static_cast<double>(g.size()) / total;
  }
  return sum / 3.0;
}

inline double Length(size_t len, double mu) {
  return 1.0 / std::max(1.0, std::fabs(static_cast<double>(len) - mu));
}

inline double MeanRouge(const std::vector<Tokens>& cand_sents,
                        const std::vector<Tokens>& ref_sents) {
  Tokens c;
  Tokens r;
  for (const auto& s : cand_sents) c.insert(c.end(), s.begin(), s.end());
  for (const auto& s : ref_sents) r.insert(r.end(), s.begin(), s.end());
  return (RougeN(c, r, 1).f + RougeN(c, r, 2).f +
          RougeLsum(cand_sents, ref_sents).f) / 3.0;
}

// Fraction of candidate n-gram occurrences missing from the source.
inline double NovelFraction(const Tokens& cand, const Tokens& src, size_t n) {
  const auto c = Grams(cand, n);
  const auto s = Grams(src, n);
  int novel = 0;
  for (const auto& [g, k] : c) {
    if (!s.count(g)) novel += k;
  }
  return static_cast<double>(novel) / Total(c);
}

// Lowest index whose value is at least every other value.
inline size_t FirstArgmax(const std::vector<double>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::all_of(v.begin(), v.end(), [&](double x) { return v[i] >= x; })) {
      return i;
    }
  }
  return 0;
}

// Every point of the simplex grid with spacing 1/steps.
inline void SimplexGrid(size_t dim, int steps,
                        const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<int> counts(dim, 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i + 1 == dim) {
      counts[i] = left;
      std::vector<double> w(dim);
      for (size_t k = 0; k < dim; ++k) w[k] = static_cast<double>(counts[k]) / steps;
      fn(w);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, steps);
}

}  // namespace oracle

#endif  // SUMMRANK_TESTS_ORACLES_ORACLES_H_
