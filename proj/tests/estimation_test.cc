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
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracles.h"
#include "summrank/errors.h"
#include "summrank/estimation.h"
#include "summrank/pseudo_targets.h"
#include "summrank/synth.h"

namespace summrank {
namespace {

Matrix FromRows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

// Feature matrix in the builtin-free layout (5 columns) from normalized rows.
FeatureMatrix MakeMatrix(const std::vector<Matrix>& docs) {
  FeatureMatrix m;
  m.spec = FeatureSpec::Standard({});
  for (size_t i = 0; i < docs.size(); ++i) {
    m.documents.push_back({"doc" + std::to_string(i), docs[i], docs[i]});
  }
  return m;
}

ObjectiveTable MakeTable(const std::vector<std::vector<double>>& values) {
  ObjectiveTable t;
  for (size_t i = 0; i < values.size(); ++i) {
    t.ids.push_back("doc" + std::to_string(i));
    t.values.push_back(values[i]);
  }
  return t;
}

struct Fixture {
  FeatureMatrix matrix;
  ObjectiveTable table;
};

// Synthetic corpus with lead3 pseudo-targets and builtin-free features.
Fixture SynthFixture(size_t n_docs, uint64_t seed, Plant plant) {
  SynthOptions options;
  options.seed = seed;
  options.n_docs = n_docs;
  options.plant = plant;
  const SynthCorpus synth = GenerateSynthetic(options);
  Fixture f;
  f.matrix = ComputeFeatures(synth.corpus, FeatureSpec::Standard({}), {}, {});
  f.table = BuildObjectiveTable(
      synth.corpus, BuildPseudoTargets(synth.corpus, {}, {}), {});
  return f;
}

TEST(EstimationConfigTest, Validation) {
  EstimationConfig c;
  EXPECT_EQ(c.trials_per_search, 1000);
  EXPECT_EQ(c.tuning_subset_size, 1000u);
  EXPECT_NO_THROW(c.Validate());
  c.trials_per_search = 0;
  EXPECT_THROW(c.Validate(), ParameterError);
  c = {};
  c.restart_probability = 1.5;
  EXPECT_THROW(c.Validate(), ParameterError);
  c = {};
  c.step_ladder = {};
  EXPECT_THROW(c.Validate(), ParameterError);
  c = {};
  c.step_ladder = {0.1, -0.1};
  EXPECT_THROW(c.Validate(), ParameterError);
}

TEST(ObjectiveTest, SingleLookup) {
  const FeatureMatrix m = MakeMatrix({FromRows({{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}})});
  const ObjectiveTable t = MakeTable({{0.2, 0.9}});
  const std::vector<double> theta(5, 0.2);
  EXPECT_DOUBLE_EQ(Objective(theta, m, t), 0.9);
}

TEST(ObjectiveTest, OracleFeatureGivesMeanOfMaxima) {
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Matrix> docs;
  std::vector<std::vector<double>> values;
  double total = 0.0;
  for (int i = 0; i < 30; ++i) {
    const size_t k = 1 + gen() % 6;
    Matrix m(k, 5);
    std::vector<double> row(k);
    for (size_t r = 0; r < k; ++r) {
      row[r] = u(gen);
      for (size_t c = 0; c < 5; ++c) m(r, c) = u(gen);
      m(r, 2) = row[r];
    }
    total += *std::max_element(row.begin(), row.end());
    docs.push_back(m);
    values.push_back(row);
  }
  const std::vector<double> theta = {0, 0, 1, 0, 0};
  EXPECT_NEAR(Objective(theta, MakeMatrix(docs), MakeTable(values)), total / 30,
              1e-12);
}

TEST(ObjectiveTest, ThreeDocumentFixture) {
  const FeatureMatrix m = MakeMatrix({
      FromRows({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}}),
      FromRows({{0.5, 0.5, 0, 0, 1}, {0.2, 0.9, 0, 0, 0}}),
      FromRows({{0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0.3, 0.3, 0.3, 0.3, 0.3}}),
  });
  const ObjectiveTable t =
      MakeTable({{0.1, 0.4, 0.7}, {0.3, 0.6}, {0.25, 0.5, 0.75}});
  const std::vector<double> theta = {0.1, 0.4, 0.2, 0.1, 0.2};
  // Recomputed by hand-rolled argmax over each document.
  double expected = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    const Matrix& f = m.documents[i].normalized;
    std::vector<double> s;
    for (size_t r = 0; r < f.rows(); ++r) {
      double v = 0.0;
      for (size_t c = 0; c < 5; ++c) v += theta[c] * f(r, c);
      s.push_back(v);
    }
    expected += t.values[i][oracle::FirstArgmax(s)];
  }
  expected /= 3;
  // doc0 picks 1 (0.4), doc1 picks 0 (0.3), doc2 picks 2 (0.75).
  EXPECT_NEAR(expected, 1.45 / 3, 1e-12);
  EXPECT_NEAR(Objective(theta, m, t), expected, 1e-12);
  const std::vector<size_t> first_two = {0, 1};
  EXPECT_NEAR(Objective(theta, m, t, first_two), 0.35, 1e-12);
}

TEST(ObjectiveTest, MisalignedInputsRejected) {
  const FeatureMatrix m = MakeMatrix({FromRows({{0, 0, 0, 0, 0}})});
  const std::vector<double> theta(5, 0.2);
  EXPECT_THROW(Objective(theta, m, MakeTable({{0.1}, {0.2}})), ParameterError);
  ObjectiveTable renamed = MakeTable({{0.1}});
  renamed.ids[0] = "other";
  EXPECT_THROW(Objective(theta, m, renamed), ParameterError);
  EXPECT_THROW(Objective(theta, m, MakeTable({{0.1, 0.2}})), ParameterError);
  const std::vector<double> short_theta(4, 0.25);
  EXPECT_THROW(Objective(short_theta, m, MakeTable({{0.1}})), ParameterError);
}

TEST(LocalSearchTest, SingletonReturnsImmediately) {
  int calls = 0;
  const auto result = LocalSearch(
      1, [&](std::span<const double>) { return ++calls * 0.1; }, {}, 1);
  EXPECT_EQ(result.weights, std::vector<double>{1.0});
  EXPECT_EQ(result.evaluations, 1);
  EXPECT_EQ(calls, 1);
}

TEST(LocalSearchTest, FindsVertexOptimum) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto result = LocalSearch(
        2, [](std::span<const double> w) { return w[0]; }, {}, seed);
    EXPECT_GE(result.weights[0], 0.99) << seed;
    EXPECT_LE(result.evaluations, 1000);
  }
}

TEST(LocalSearchTest, TraceIsMonotoneAndWithinBudget) {
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t dim = 2 + gen() % 5;
    std::vector<double> target(dim);
    for (auto& t : target) t = u(gen);
    EstimationConfig config;
    config.trials_per_search = 1 + static_cast<int>(gen() % 300);
    config.restart_probability = u(gen);
    int calls = 0;
    const auto result = LocalSearch(
        dim,
        [&](std::span<const double> w) {
          ++calls;
          double s = 0.0;
          for (size_t i = 0; i < dim; ++i) s -= (w[i] - target[i]) * (w[i] - target[i]);
          return s;
        },
        config, 100 + trial);
    EXPECT_EQ(calls, result.evaluations);
    EXPECT_LE(result.evaluations, config.trials_per_search);
    EXPECT_GE(result.objective, result.initial_objective);
    double incumbent = result.trace.front().objective;
    for (const auto& rec : result.trace) {
      if (rec.accepted) {
        EXPECT_GE(rec.objective, incumbent);
        incumbent = rec.objective;
      } else {
        EXPECT_LE(rec.objective, incumbent);
      }
    }
    EXPECT_EQ(incumbent, result.objective);
    EXPECT_NEAR(std::accumulate(result.weights.begin(), result.weights.end(), 0.0),
                1.0, 1e-12);
    for (double w : result.weights) EXPECT_GE(w, 0.0);
  }
}

TEST(LocalSearchTest, MatchesGridSearchOnPlantedCorpus) {
  const Fixture f = SynthFixture(40, 13, Plant::kBleuOracle);
  double grid_best = 0.0;
  oracle::SimplexGrid(5, 20, [&](const std::vector<double>& w) {
    grid_best = std::max(grid_best, Objective(w, f.matrix, f.table));
  });
  const auto result = LocalSearch(
      5,
      [&](std::span<const double> w) { return Objective(w, f.matrix, f.table); },
      {}, 99);
  EXPECT_GE(result.objective, grid_best - 1e-3);
}

TEST(HierarchicalEstimateTest, RecoversMaxBleuSelection) {
  const Fixture f = SynthFixture(60, 5, Plant::kBleuOracle);
  const auto result = HierarchicalEstimate(f.matrix, f.table, {}, "lead3");
  const auto& c = result.coefficients;
  c.CheckInvariants(f.matrix.spec);
  size_t agree = 0;
  const size_t bleu = f.matrix.spec.IndexOf("bleu_src");
  for (const auto& doc : f.matrix.documents) {
    std::vector<double> column;
    for (size_t r = 0; r < doc.raw.rows(); ++r) column.push_back(doc.raw(r, bleu));
    const auto scores = Combine(doc.normalized, c.theta);
    if (Select(scores) == oracle::FirstArgmax(column)) ++agree;
  }
  EXPECT_GE(static_cast<double>(agree), 0.95 * f.matrix.documents.size());
}

TEST(HierarchicalEstimateTest, ProvenanceBudgetAndDeterminism) {
  const Fixture f = SynthFixture(30, 2, Plant::kLeadBias);
  EstimationConfig config;
  config.trials_per_search = 200;
  config.seed = 17;
  const auto a = HierarchicalEstimate(f.matrix, f.table, config, "lead3");
  const auto b = HierarchicalEstimate(f.matrix, f.table, config, "lead3");
  EXPECT_EQ(a.coefficients, b.coefficients);
  const auto& p = a.coefficients.provenance;
  EXPECT_EQ(p.pseudo_target, "lead3");
  EXPECT_EQ(p.seed, 17u);
  EXPECT_EQ(p.tuning_documents, 30u);
  ASSERT_EQ(p.evaluations.size(), 3u);
  EXPECT_EQ(p.evaluations[1], 0);
  for (int e : p.evaluations) EXPECT_LE(e, 200);
  EXPECT_GE(p.final_objective, p.initial_objective);
  EXPECT_NEAR(p.final_objective, Objective(a.coefficients.theta, f.matrix, f.table),
              1e-12);
  const Provenance prov{"t", "c", "i"};
  const std::string log = SerializeEstimationLog(a.log, prov);
  EXPECT_NE(log.find("stage,trial,objective,accepted\n"), std::string::npos);

  config.seed = 18;
  const auto other = HierarchicalEstimate(f.matrix, f.table, config, "lead3");
  other.coefficients.CheckInvariants(f.matrix.spec);
}

TEST(HierarchicalEstimateTest, SubsetsLargeCorpora) {
  const Fixture f = SynthFixture(25, 3, Plant::kLeadBias);
  EstimationConfig config;
  config.trials_per_search = 50;
  config.tuning_subset_size = 10;
  const auto result = HierarchicalEstimate(f.matrix, f.table, config, "lead3");
  EXPECT_EQ(result.coefficients.provenance.tuning_documents, 10u);
  result.coefficients.CheckInvariants(f.matrix.spec);
}

TEST(HierarchicalEstimateTest, UniformTableIsDegenerateButValid) {
  const Fixture f = SynthFixture(15, 4, Plant::kUniform);
  for (const auto& row : f.table.values) {
    for (double v : row) EXPECT_DOUBLE_EQ(v, row[0]);
  }
  double expected = 0.0;
  for (const auto& row : f.table.values) expected += row[0];
  expected /= f.table.size();
  EstimationConfig config;
  config.trials_per_search = 100;
  const auto result = HierarchicalEstimate(f.matrix, f.table, config, "lead3");
  result.coefficients.CheckInvariants(f.matrix.spec);
  EXPECT_NEAR(result.coefficients.provenance.final_objective, expected, 1e-12);
}

TEST(HierarchicalEstimateTest, EmptyCorpusRejected) {
  FeatureMatrix m;
  m.spec = FeatureSpec::Standard({});
  EXPECT_THROW(HierarchicalEstimate(m, ObjectiveTable{}, {}, "lead3"),
               ParameterError);
}

}  // namespace
}  // namespace summrank
