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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracles.h"
#include "summrank/errors.h"
#include "summrank/reranker.h"

namespace summrank {
namespace {

Matrix FromRows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

// Builtin layout: 3 overlap, 1 semantic, diversity, length.
CoefficientSet MakeSet(GroupWeights g, std::vector<double> overlap,
                       std::vector<double> semantic) {
  CoefficientSet c;
  c.group_weights = g;
  c.within_overlap = std::move(overlap);
  c.within_semantic = std::move(semantic);
  c.Flatten(FeatureSpec::Standard({"s"}));
  return c;
}

TEST(CombineTest, Examples) {
  const std::vector<double> theta = {0.7, 0.3};
  EXPECT_EQ(Combine(FromRows({{1, 0}, {0, 1}}), theta),
            (std::vector<double>{0.7, 0.3}));
  const Matrix m = FromRows({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
  const std::vector<double> one_hot = {0, 1, 0};
  EXPECT_EQ(Combine(m, one_hot), (std::vector<double>{0.2, 0.5}));
  const std::vector<double> wrong = {1.0};
  EXPECT_THROW(Combine(m, wrong), ParameterError);
}

TEST(CombineTest, FixtureMatchesDotProducts) {
  const Matrix m = FromRows({{0.10, 0.00, 0.50, 1.00, 0.25, 0.75, 0.30, 0.90},
                             {0.80, 0.60, 0.40, 0.20, 0.00, 1.00, 0.50, 0.10},
                             {0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 0.05}});
  const std::vector<double> theta = {0.05, 0.10, 0.15, 0.20,
                                     0.05, 0.10, 0.15, 0.20};
  const auto scores = Combine(m, theta);
  ASSERT_EQ(scores.size(), 3u);
  for (size_t r = 0; r < 3; ++r) {
    double s = 0.0;
    for (size_t c = 0; c < 8; ++c) s += theta[c] * m(r, c);
    EXPECT_NEAR(scores[r], s, 1e-15);
  }
  EXPECT_NEAR(scores[0], 0.5925, 1e-12);
  EXPECT_NEAR(scores[1], 0.395, 1e-12);
  EXPECT_NEAR(scores[2], 0.55, 1e-12);
  EXPECT_EQ(Select(scores), 0u);
}

TEST(SelectTest, ArgmaxWithLowestIndexTies) {
  EXPECT_EQ(Select(std::vector<double>{0.1, 0.9, 0.3}), 1u);
  EXPECT_EQ(Select(std::vector<double>{0.5, 0.5}), 0u);
  EXPECT_EQ(Select(std::vector<double>{-2.0}), 0u);
  EXPECT_THROW(Select(std::vector<double>{}), ParameterError);
}

TEST(SelectTest, InvariantUnderShiftAndScale) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t k = 1 + gen() % 10;
    Matrix m(k, 4);
    for (size_t r = 0; r < k; ++r) {
      for (size_t c = 0; c < 4; ++c) m(r, c) = static_cast<double>(gen() % 5) / 4;
    }
    std::vector<double> theta(4);
    for (auto& t : theta) t = static_cast<double>(1 + gen() % 8);
    const double total = std::accumulate(theta.begin(), theta.end(), 0.0);
    std::vector<double> normalized = theta;
    for (auto& t : normalized) t /= total;
    const auto scores = Combine(m, normalized);
    const size_t chosen = Select(scores);
    std::vector<double> oracle_scores;
    for (size_t r = 0; r < k; ++r) {
      double s = 0.0;
      for (size_t c = 0; c < 4; ++c) s += theta[c] * m(r, c);
      oracle_scores.push_back(s);
    }
    EXPECT_EQ(chosen, oracle::FirstArgmax(oracle_scores));
    std::vector<double> shifted = scores;
    for (auto& s : shifted) s += 3.0;
    EXPECT_EQ(Select(shifted), chosen);
  }
}

TEST(SelectTest, PermutationMovesTieFreeSelection) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> scores(2 + gen() % 8);
    for (auto& s : scores) s = u(gen);
    std::vector<size_t> perm(scores.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> permuted(scores.size());
    for (size_t i = 0; i < perm.size(); ++i) permuted[i] = scores[perm[i]];
    EXPECT_EQ(perm[Select(permuted)], Select(scores));
  }
}

TEST(CoefficientSetTest, FlattenFactorizes) {
  const CoefficientSet c =
      MakeSet({0.4, 0.3, 0.2, 0.1}, {0.5, 0.25, 0.25}, {1.0});
  const std::vector<double> expected = {0.2, 0.1, 0.1, 0.3, 0.2, 0.1};
  ASSERT_EQ(c.theta.size(), expected.size());
  for (size_t j = 0; j < expected.size(); ++j) {
    EXPECT_NEAR(c.theta[j], expected[j], 1e-15);
  }
  EXPECT_NO_THROW(c.CheckInvariants(FeatureSpec::Standard({"s"})));
}

TEST(CoefficientSetTest, InvariantViolationsDetected) {
  const FeatureSpec spec = FeatureSpec::Standard({"s"});
  CoefficientSet c = MakeSet({0.4, 0.3, 0.2, 0.1}, {0.5, 0.25, 0.25}, {1.0});
  CoefficientSet off = c;
  off.theta[0] += 0.01;
  off.theta[1] -= 0.01;
  EXPECT_THROW(off.CheckInvariants(spec), InvariantError);
  CoefficientSet negative = MakeSet({0.6, 0.5, -0.1, 0.0}, {1, 0, 0}, {1.0});
  EXPECT_THROW(negative.CheckInvariants(spec), InvariantError);
  CoefficientSet heavy = MakeSet({0.6, 0.5, 0.0, 0.0}, {1, 0, 0}, {1.0});
  EXPECT_THROW(heavy.CheckInvariants(spec), InvariantError);
  CoefficientSet bad = c;
  bad.within_semantic = {0.5, 0.5};
  EXPECT_THROW(bad.Flatten(spec), ParameterError);
}

TEST(CoefficientSetTest, RoundingKeepsSimplex) {
  std::mt19937 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FeatureSpec spec = FeatureSpec::Standard({"s"});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> g(4), o(3);
    for (auto& x : g) x = u(gen);
    for (auto& x : o) x = u(gen);
    const double gs = std::accumulate(g.begin(), g.end(), 0.0);
    const double os = std::accumulate(o.begin(), o.end(), 0.0);
    for (auto& x : g) x /= gs;
    for (auto& x : o) x /= os;
    const CoefficientSet c = MakeSet({g[0], g[1], g[2], g[3]}, o, {1.0});
    c.CheckInvariants(spec);
    const CoefficientSet r = c.Rounded();
    EXPECT_NEAR(std::accumulate(r.theta.begin(), r.theta.end(), 0.0), 1.0, 1e-9);
    for (size_t j = 0; j < r.theta.size(); ++j) {
      EXPECT_GE(r.theta[j], 0.0);
      EXPECT_NEAR(r.theta[j], c.theta[j], 1e-5);
      const double scaled = r.theta[j] * 1e6;
      EXPECT_NEAR(scaled, std::round(scaled), 1e-6);
    }
    EXPECT_NO_THROW(r.CheckInvariants(spec, 1e-5));
  }
}

TEST(CoefficientFileTest, RoundTrip) {
  CoefficientSet c = MakeSet({0.4, 0.3, 0.2, 0.1}, {0.5, 0.25, 0.25}, {1.0});
  c.provenance.pseudo_target = "lead3";
  c.provenance.seed = 9;
  c.provenance.trials_per_search = 100;
  c.provenance.restart_probability = 0.2;
  c.provenance.step_ladder = {0.01, 0.1};
  c.provenance.tuning_documents = 12;
  c.provenance.evaluations = {100, 1, 99};
  c.provenance.final_objective = 0.25;
  const Provenance prov{"summrank test", "cfg", "in"};
  const std::string text = SerializeCoefficients(c, prov);
  EXPECT_EQ(text.rfind("{\n  \"provenance\"", 0), 0u);
  const CoefficientSet parsed = ParseCoefficients(text);
  EXPECT_EQ(parsed, c.Rounded());
  EXPECT_EQ(SerializeCoefficients(parsed, prov), text);
  EXPECT_THROW(ParseCoefficients("{\"theta\": [1]}"), ValidationError);
}

TEST(RerankTest, UsesNormalizedFeaturesAndChecksSpec) {
  FeatureMatrix m;
  m.spec = FeatureSpec::Standard({});
  DocumentFeatures doc;
  doc.id = "d";
  doc.raw = FromRows({{9, 9, 9, 9, 9}, {0, 0, 0, 0, 0}});
  doc.normalized = FromRows({{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}});
  m.documents.push_back(doc);
  CoefficientSet c;
  c.group_weights = {0.25, 0.25, 0.25, 0.25};
  c.within_overlap = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  c.Flatten(m.spec);
  const auto selections = Rerank(m, c);
  ASSERT_EQ(selections.size(), 1u);
  EXPECT_EQ(selections[0].chosen, 1u);
  EXPECT_EQ(selections[0].strategy, "summscore");
  CoefficientSet other = MakeSet({0.4, 0.3, 0.2, 0.1}, {0.5, 0.25, 0.25}, {1.0});
  EXPECT_THROW(Rerank(m, other), ParameterError);

  const Provenance prov{"summrank test", "cfg", "in"};
  const std::string text = SerializeSelections(selections, prov);
  const auto parsed = ParseSelections(text);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0].chosen, 1u);
  EXPECT_EQ(parsed[0].scores, selections[0].scores);
  EXPECT_EQ(SerializeSelections(parsed, prov), text);
}

}  // namespace
}  // namespace summrank
