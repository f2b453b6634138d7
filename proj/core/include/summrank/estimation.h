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

#ifndef SUMMRANK_ESTIMATION_H_
#define SUMMRANK_ESTIMATION_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "summrank/corpus.h"
#include "summrank/features.h"
#include "summrank/pseudo_targets.h"
#include "summrank/reranker.h"
#include "summrank/text.h"

namespace summrank {

struct EstimationConfig {
  // Objective evaluations allowed per search, the starting point included.
  int trials_per_search = 1000;
  // Documents used for estimation; larger corpora are subsampled.
  size_t tuning_subset_size = 1000;
  uint64_t seed = 7;
  double restart_probability = 0.2;
  // Perturbation magnitudes; the sign is drawn separately.
  std::vector<double> step_ladder = {0.01, 0.02, 0.05, 0.1, 0.2};

  // Throws ParameterError on out-of-range values.
  void Validate() const;
  bool operator==(const EstimationConfig&) const = default;
};

// values[i][c]: mean ROUGE between candidate c of document i and that
// document's pseudo-target.
struct ObjectiveTable {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values;

  size_t size() const { return ids.size(); }
};

// Pseudo-targets are matched to documents by id.
ObjectiveTable BuildObjectiveTable(const Corpus& corpus,
                                   const std::vector<PseudoTarget>& targets,
                                   const TokenizerConfig& config,
                                   int threads = 1);

// Mean over documents of the table value of the candidate that `theta`
// selects on normalized features. `documents` restricts the mean to a subset
// (all documents when empty). Sums are pairwise in document order.
double Objective(std::span<const double> theta, const FeatureMatrix& matrix,
                 const ObjectiveTable& table,
                 std::span<const size_t> documents = {});

// Throws ParameterError unless the table and matrix describe the same
// documents with the same candidate counts.
void CheckAligned(const FeatureMatrix& matrix, const ObjectiveTable& table);

struct TrialRecord {
  int stage = 0;
  int trial = 0;
  double objective = 0.0;
  bool accepted = false;
};

struct SearchResult {
  std::vector<double> weights;
  double objective = 0.0;
  double initial_objective = 0.0;
  int evaluations = 0;
  std::vector<TrialRecord> trace;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

// Stochastic hill climbing on the probability simplex. Starts at the
// uniform point; each further trial either restarts at a uniformly random
// simplex point (probability restart_probability) or nudges one random
// coordinate of the incumbent by a signed ladder step, clamps at zero and
// renormalizes. A proposal replaces the incumbent only if it strictly
// improves the objective. Uses at most trials_per_search evaluations.
SearchResult LocalSearch(size_t dim, const SimplexObjective& objective,
                         const EstimationConfig& config, uint64_t seed,
                         int stage = 0);

struct EstimationResult {
  CoefficientSet coefficients;
  std::vector<TrialRecord> log;
};

// Two-level search: weights within the overlap group and within the
// semantic group first (other features zeroed), then weights over
// {overlap composite, semantic composite, diversity, length}. Equal weights
// on every feature are also evaluated and win if strictly better.
EstimationResult HierarchicalEstimate(const FeatureMatrix& matrix,
                                      const ObjectiveTable& table,
                                      const EstimationConfig& config,
                                      std::string pseudo_method);

// CSV: stage,trial,objective,accepted.
std::string SerializeEstimationLog(const std::vector<TrialRecord>& log,
                                   const Provenance& provenance);

}  // namespace summrank

#endif  // SUMMRANK_ESTIMATION_H_
