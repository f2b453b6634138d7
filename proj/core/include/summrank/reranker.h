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

#ifndef SUMMRANK_RERANKER_H_
#define SUMMRANK_RERANKER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/features.h"
#include "summrank/io.h"

namespace summrank {

// Second-stage weights, one per group of the hierarchy.
struct GroupWeights {
  double overlap = 0.0;
  double semantic = 0.0;
  double diversity = 0.0;
  double length = 0.0;

  bool operator==(const GroupWeights&) const = default;
};

// How a coefficient set was obtained.
struct EstimationProvenance {
  std::string pseudo_target;
  uint64_t seed = 0;
  int trials_per_search = 0;
  double restart_probability = 0.0;
  std::vector<double> step_ladder;
  size_t tuning_documents = 0;
  // Objective evaluations spent by each stage (overlap, semantic, final).
  std::vector<int> evaluations;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  // Objective of equal weights on every feature.
  double flat_objective = 0.0;

  bool operator==(const EstimationProvenance&) const = default;
};

// Simplex weights over the features of a FeatureSpec, together with the
// factorization that produced them:
//   theta[j] = group weight of j * within-group weight of j
// where diversity and length have a within-group weight of 1.
struct CoefficientSet {
  std::vector<std::string> feature_ids;
  std::vector<double> theta;
  GroupWeights group_weights;
  std::vector<double> within_overlap;
  std::vector<double> within_semantic;
  EstimationProvenance provenance;

  // Rebuilds theta from the factorization for `spec`.
  void Flatten(const FeatureSpec& spec);
  // Throws InvariantError unless theta is on the simplex (within `tolerance`)
  // and matches its factorization.
  void CheckInvariants(const FeatureSpec& spec, double tolerance = 1e-9) const;
  // Every weight vector rounded to 6 decimals, with the rounding residual
  // added to the largest coordinate so each still sums to 1.
  CoefficientSet Rounded() const;

  bool operator==(const CoefficientSet&) const = default;
};

struct Selection {
  std::string id;
  std::string strategy;
  size_t chosen = 0;
  std::vector<double> scores;
};

// score[c] = sum_j theta[j] * features(c, j).
std::vector<double> Combine(const Matrix& features, std::span<const double> theta);
// Index of the first maximal score; throws ParameterError if empty.
size_t Select(std::span<const double> scores);

// SummScore selection for every document, using normalized features.
std::vector<Selection> Rerank(const FeatureMatrix& matrix,
                              const CoefficientSet& coefficients);

std::string SerializeCoefficients(const CoefficientSet& coefficients,
                                  const Provenance& provenance);
CoefficientSet ParseCoefficients(std::string_view json_text);
void WriteCoefficients(const std::filesystem::path& path,
                       const CoefficientSet& coefficients,
                       const Provenance& provenance);
CoefficientSet ReadCoefficients(const std::filesystem::path& path);

// JSONL: provenance line, then {"id","strategy","chosen","scores"}.
std::string SerializeSelections(const std::vector<Selection>& selections,
                                const Provenance& provenance);
std::vector<Selection> ParseSelections(std::string_view jsonl);
void WriteSelections(const std::filesystem::path& path,
                     const std::vector<Selection>& selections,
                     const Provenance& provenance);
std::vector<Selection> ReadSelections(const std::filesystem::path& path);

}  // namespace summrank

#endif  // SUMMRANK_RERANKER_H_
