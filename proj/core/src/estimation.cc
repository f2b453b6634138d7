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

#include "summrank/estimation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "summrank/errors.h"
#include "summrank/metrics.h"
#include "summrank/parallel.h"
#include "summrank/random.h"

namespace summrank {
namespace {

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

size_t SelectWithTheta(const Matrix& features, std::span<const double> theta) {
  size_t best = 0;
  double best_score = 0.0;
  for (size_t r = 0; r < features.rows(); ++r) {
    double s = 0.0;
    for (size_t c = 0; c < features.cols(); ++c) s += theta[c] * features(r, c);
    if (r == 0 || s > best_score) {
      best = r;
      best_score = s;
    }
  }
  return best;
}

std::vector<double> Uniform(size_t dim) {
  return std::vector<double>(dim, 1.0 / static_cast<double>(dim));
}

// Stage indices used for seeding and in the trial log.
constexpr int kOverlapStage = 1;
constexpr int kSemanticStage = 2;
constexpr int kGroupStage = 3;
constexpr uint64_t kSubsetSalt = 0x7375627365ULL;

}  // namespace

void EstimationConfig::Validate() const {
  if (trials_per_search < 1) {
    throw ParameterError("trials_per_search must be at least 1");
  }
  if (!(restart_probability >= 0.0 && restart_probability <= 1.0)) {
    throw ParameterError("restart_probability must be in [0, 1]");
  }
  if (tuning_subset_size < 1) {
    throw ParameterError("tuning_subset_size must be at least 1");
  }
  if (step_ladder.empty()) throw ParameterError("step ladder is empty");
  for (double step : step_ladder) {
    if (!(step > 0.0)) throw ParameterError("ladder steps must be positive");
  }
}

ObjectiveTable BuildObjectiveTable(const Corpus& corpus,
                                   const std::vector<PseudoTarget>& targets,
                                   const TokenizerConfig& config, int threads) {
  std::unordered_map<std::string, const PseudoTarget*> by_id;
  for (const auto& target : targets) by_id[target.id] = &target;

  ObjectiveTable table;
  table.ids.resize(corpus.size());
  table.values.resize(corpus.size());
  for (const auto& doc : corpus.documents) {
    if (!by_id.contains(doc.id)) {
      throw ParameterError("no pseudo-target for document \"" + doc.id + "\"");
    }
  }
  ParallelFor(corpus.size(), threads, [&](size_t i) {
    const Document& doc = corpus.documents[i];
    const RougeText target = RougeText::From(by_id.at(doc.id)->text, config);
    table.ids[i] = doc.id;
    table.values[i].reserve(doc.candidates.size());
    for (const auto& candidate : doc.candidates) {
      table.values[i].push_back(
          ScoreRouge(RougeText::From(candidate, config), target).Mean());
    }
  });
  return table;
}

void CheckAligned(const FeatureMatrix& matrix, const ObjectiveTable& table) {
  if (matrix.documents.size() != table.size()) {
    throw ParameterError("objective table covers " + std::to_string(table.size()) +
                         " documents, feature matrix " +
                         std::to_string(matrix.documents.size()));
  }
  for (size_t i = 0; i < table.size(); ++i) {
    const auto& doc = matrix.documents[i];
    if (doc.id != table.ids[i]) {
      throw ParameterError("document order differs at position " +
                           std::to_string(i) + ": \"" + doc.id + "\" vs \"" +
                           table.ids[i] + "\"");
    }
    if (doc.normalized.rows() != table.values[i].size()) {
      throw ParameterError("candidate count differs for document \"" + doc.id +
                           "\"");
    }
  }
}

double Objective(std::span<const double> theta, const FeatureMatrix& matrix,
                 const ObjectiveTable& table, std::span<const size_t> documents) {
  CheckAligned(matrix, table);
  if (theta.size() != matrix.spec.size()) {
    throw ParameterError("theta has the wrong dimension");
  }
  std::vector<double> picked;
  auto visit = [&](size_t i) {
    const size_t chosen = SelectWithTheta(matrix.documents[i].normalized, theta);
    picked.push_back(table.values[i][chosen]);
  };
  if (documents.empty()) {
    picked.reserve(table.size());
    for (size_t i = 0; i < table.size(); ++i) visit(i);
  } else {
    picked.reserve(documents.size());
    for (size_t i : documents) visit(i);
  }
  if (picked.empty()) throw ParameterError("objective over zero documents");
  return PairwiseSum(picked) / static_cast<double>(picked.size());
}

SearchResult LocalSearch(size_t dim, const SimplexObjective& objective,
                         const EstimationConfig& config, uint64_t seed,
                         int stage) {
  config.Validate();
  if (dim == 0) throw ParameterError("cannot search a zero-dimensional simplex");

  SearchResult result;
  result.weights = Uniform(dim);
  result.objective = objective(result.weights);
  result.initial_objective = result.objective;
  result.evaluations = 1;
  result.trace.push_back({stage, 0, result.objective, true});
  if (dim == 1) return result;

  Rng rng(seed);
  const auto& ladder = config.step_ladder;
  for (int trial = 1; trial < config.trials_per_search; ++trial) {
    std::vector<double> proposal;
    if (rng.Uniform() < config.restart_probability) {
      proposal = rng.SimplexPoint(dim);
    } else {
      proposal = result.weights;
      const size_t coordinate = rng.UniformInt(dim);
      double step = ladder[rng.UniformInt(ladder.size())];
      if (rng.Uniform() < 0.5) step = -step;
      proposal[coordinate] = std::max(0.0, proposal[coordinate] + step);
      const double total = std::accumulate(proposal.begin(), proposal.end(), 0.0);
      if (total <= 0.0) continue;
      for (auto& w : proposal) w /= total;
    }
    const double value = objective(proposal);
    ++result.evaluations;
    const bool accepted = value > result.objective;
    if (accepted) {
      result.weights = std::move(proposal);
      result.objective = value;
    }
    result.trace.push_back({stage, trial, value, accepted});
  }
  return result;
}

EstimationResult HierarchicalEstimate(const FeatureMatrix& matrix,
                                      const ObjectiveTable& table,
                                      const EstimationConfig& config,
                                      std::string pseudo_method) {
  config.Validate();
  if (matrix.documents.empty()) {
    throw ParameterError("cannot estimate coefficients on an empty corpus");
  }
  CheckAligned(matrix, table);

  const FeatureSpec& spec = matrix.spec;
  const size_t d = spec.size();
  const auto overlap = spec.IndicesOf(FeatureGroup::kOverlap);
  const auto semantic = spec.IndicesOf(FeatureGroup::kSemantic);
  if (overlap.empty()) throw ParameterError("feature spec has no overlap group");

  std::vector<size_t> subset;
  if (matrix.documents.size() > config.tuning_subset_size) {
    Rng rng(MixSeed(config.seed, kSubsetSalt));
    subset = rng.SampleSorted(matrix.documents.size(), config.tuning_subset_size);
  } else {
    subset.resize(matrix.documents.size());
    std::iota(subset.begin(), subset.end(), size_t{0});
  }
  auto objective_of = [&](const std::vector<double>& theta) {
    return Objective(theta, matrix, table, subset);
  };
  auto within_group = [&](const std::vector<size_t>& indices) {
    return [&, indices](std::span<const double> w) {
      std::vector<double> theta(d, 0.0);
      for (size_t i = 0; i < indices.size(); ++i) theta[indices[i]] = w[i];
      return objective_of(theta);
    };
  };

  EstimationResult result;
  CoefficientSet& coefficients = result.coefficients;
  std::vector<int> evaluations;

  const SearchResult overlap_search =
      LocalSearch(overlap.size(), within_group(overlap), config,
                  MixSeed(config.seed, kOverlapStage), kOverlapStage);
  coefficients.within_overlap = overlap_search.weights;
  evaluations.push_back(overlap_search.evaluations);
  result.log = overlap_search.trace;

  if (!semantic.empty()) {
    const SearchResult semantic_search =
        LocalSearch(semantic.size(), within_group(semantic), config,
                    MixSeed(config.seed, kSemanticStage), kSemanticStage);
    coefficients.within_semantic = semantic_search.weights;
    evaluations.push_back(semantic_search.evaluations);
    result.log.insert(result.log.end(), semantic_search.trace.begin(),
                      semantic_search.trace.end());
  } else {
    evaluations.push_back(0);
  }

  // Group-level coordinates: overlap, [semantic], diversity, length.
  const bool has_semantic = !semantic.empty();
  auto to_coefficients = [&](std::span<const double> g) {
    CoefficientSet c = coefficients;
    size_t next = 0;
    c.group_weights.overlap = g[next++];
    c.group_weights.semantic = has_semantic ? g[next++] : 0.0;
    c.group_weights.diversity = g[next++];
    c.group_weights.length = g[next++];
    c.Flatten(spec);
    return c;
  };

  // One evaluation of the final stage's budget is kept for the flat point.
  EstimationConfig group_config = config;
  const bool check_flat = config.trials_per_search >= 2;
  if (check_flat) group_config.trials_per_search -= 1;
  const SearchResult group_search = LocalSearch(
      has_semantic ? 4 : 3,
      [&](std::span<const double> g) {
        return objective_of(to_coefficients(g).theta);
      },
      group_config, MixSeed(config.seed, kGroupStage), kGroupStage);
  result.log.insert(result.log.end(), group_search.trace.begin(),
                    group_search.trace.end());

  const CoefficientSet searched = to_coefficients(group_search.weights);
  double final_objective = group_search.objective;
  int group_evaluations = group_search.evaluations;
  coefficients = searched;

  const std::vector<double> flat = Uniform(d);
  const double flat_objective = objective_of(flat);
  if (check_flat) {
    ++group_evaluations;
    const bool flat_wins = flat_objective > final_objective;
    result.log.push_back(
        {kGroupStage, config.trials_per_search - 1, flat_objective, flat_wins});
    if (flat_wins) {
      const double df = static_cast<double>(d);
      coefficients.within_overlap = Uniform(overlap.size());
      coefficients.within_semantic =
          has_semantic ? Uniform(semantic.size()) : std::vector<double>{};
      coefficients.group_weights = {
          static_cast<double>(overlap.size()) / df,
          static_cast<double>(semantic.size()) / df, 1.0 / df, 1.0 / df};
      coefficients.Flatten(spec);
      final_objective = flat_objective;
    }
  }
  evaluations.push_back(group_evaluations);

  auto& p = coefficients.provenance;
  p.pseudo_target = std::move(pseudo_method);
  p.seed = config.seed;
  p.trials_per_search = config.trials_per_search;
  p.restart_probability = config.restart_probability;
  p.step_ladder = config.step_ladder;
  p.tuning_documents = subset.size();
  p.evaluations = evaluations;
  p.initial_objective = group_search.initial_objective;
  p.final_objective = final_objective;
  p.flat_objective = flat_objective;
  coefficients.CheckInvariants(spec);
  return result;
}

std::string SerializeEstimationLog(const std::vector<TrialRecord>& log,
                                   const Provenance& provenance) {
  std::string out = "# " + ProvenanceLine(provenance) + "\n";
  out += "stage,trial,objective,accepted\n";
  char buffer[96];
  for (const auto& r : log) {
    std::snprintf(buffer, sizeof(buffer), "%d,%d,%.8f,%d\n", r.stage, r.trial,
                  r.objective, r.accepted ? 1 : 0);
    out += buffer;
  }
  return out;
}

}  // namespace summrank
