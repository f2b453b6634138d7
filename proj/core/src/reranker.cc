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

#include "summrank/reranker.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "summrank/errors.h"

namespace summrank {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void RoundToSimplex(std::vector<double>& weights) {
  if (weights.empty()) return;
  double sum = 0.0;
  for (auto& w : weights) {
    w = std::round(w * 1e6) / 1e6;
    sum += w;
  }
  const auto largest = std::max_element(weights.begin(), weights.end());
  *largest = std::round((*largest + (1.0 - sum)) * 1e6) / 1e6;
}

double RoundWeight(double w) { return std::round(w * 1e6) / 1e6; }

double Sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

void CoefficientSet::Flatten(const FeatureSpec& spec) {
  const auto overlap = spec.IndicesOf(FeatureGroup::kOverlap);
  const auto semantic = spec.IndicesOf(FeatureGroup::kSemantic);
  if (overlap.size() != within_overlap.size() ||
      semantic.size() != within_semantic.size()) {
    throw ParameterError("within-group weights do not match the feature spec");
  }
  feature_ids = spec.ids;
  theta.assign(spec.size(), 0.0);
  for (size_t i = 0; i < overlap.size(); ++i) {
    theta[overlap[i]] = group_weights.overlap * within_overlap[i];
  }
  for (size_t i = 0; i < semantic.size(); ++i) {
    theta[semantic[i]] = group_weights.semantic * within_semantic[i];
  }
  theta[spec.IndexOf(kDiversityFeature)] = group_weights.diversity;
  theta[spec.IndexOf(kLengthFeature)] = group_weights.length;
}

void CoefficientSet::CheckInvariants(const FeatureSpec& spec,
                                     double tolerance) const {
  if (theta.size() != spec.size()) {
    throw InvariantError("theta has the wrong dimension");
  }
  for (double t : theta) {
    if (!(t >= 0.0)) throw InvariantError("negative coefficient");
  }
  if (std::abs(Sum(theta) - 1.0) > tolerance) {
    throw InvariantError("coefficients do not sum to 1");
  }
  CoefficientSet rebuilt = *this;
  rebuilt.Flatten(spec);
  for (size_t j = 0; j < theta.size(); ++j) {
    if (std::abs(rebuilt.theta[j] - theta[j]) > tolerance) {
      throw InvariantError("theta[" + std::to_string(j) +
                           "] does not match its group factorization");
    }
  }
}

CoefficientSet CoefficientSet::Rounded() const {
  CoefficientSet out = *this;
  RoundToSimplex(out.theta);
  std::vector<double> groups = {group_weights.overlap, group_weights.semantic,
                                group_weights.diversity, group_weights.length};
  RoundToSimplex(groups);
  out.group_weights = {groups[0], groups[1], groups[2], groups[3]};
  RoundToSimplex(out.within_overlap);
  RoundToSimplex(out.within_semantic);
  return out;
}

std::vector<double> Combine(const Matrix& features,
                            std::span<const double> theta) {
  if (theta.size() != features.cols()) {
    throw ParameterError("coefficient vector has " +
                         std::to_string(theta.size()) + " entries for " +
                         std::to_string(features.cols()) + " features");
  }
  std::vector<double> scores(features.rows(), 0.0);
  for (size_t r = 0; r < features.rows(); ++r) {
    double s = 0.0;
    for (size_t c = 0; c < features.cols(); ++c) s += theta[c] * features(r, c);
    scores[r] = s;
  }
  return scores;
}

size_t Select(std::span<const double> scores) {
  if (scores.empty()) throw ParameterError("cannot select from zero candidates");
  size_t best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::vector<Selection> Rerank(const FeatureMatrix& matrix,
                              const CoefficientSet& coefficients) {
  if (coefficients.feature_ids != matrix.spec.ids) {
    throw ParameterError("coefficients were estimated for different features");
  }
  std::vector<Selection> selections;
  selections.reserve(matrix.documents.size());
  for (const auto& doc : matrix.documents) {
    Selection s;
    s.id = doc.id;
    s.strategy = "summscore";
    s.scores = Combine(doc.normalized, coefficients.theta);
    s.chosen = Select(s.scores);
    selections.push_back(std::move(s));
  }
  return selections;
}

std::string SerializeCoefficients(const CoefficientSet& coefficients,
                                  const Provenance& provenance) {
  const CoefficientSet c = coefficients.Rounded();
  ordered_json j;
  j["provenance"]["tool_version"] = provenance.tool_version;
  j["provenance"]["config_digest"] = provenance.config_digest;
  j["provenance"]["input_digest"] = provenance.input_digest;
  j["features"] = c.feature_ids;
  j["theta"] = c.theta;
  j["group_weights"]["overlap"] = c.group_weights.overlap;
  j["group_weights"]["semantic"] = c.group_weights.semantic;
  j["group_weights"]["diversity"] = c.group_weights.diversity;
  j["group_weights"]["length"] = c.group_weights.length;
  j["within_group"]["overlap"] = c.within_overlap;
  j["within_group"]["semantic"] = c.within_semantic;
  const auto& p = c.provenance;
  auto& e = j["estimation"];
  e["pseudo_target"] = p.pseudo_target;
  e["seed"] = p.seed;
  e["trials_per_search"] = p.trials_per_search;
  e["restart_probability"] = p.restart_probability;
  e["step_ladder"] = p.step_ladder;
  e["tuning_documents"] = p.tuning_documents;
  e["evaluations"] = p.evaluations;
  e["objective"]["initial"] = RoundWeight(p.initial_objective);
  e["objective"]["final"] = RoundWeight(p.final_objective);
  e["objective"]["flat"] = RoundWeight(p.flat_objective);
  return j.dump(2) + "\n";
}

CoefficientSet ParseCoefficients(std::string_view json_text) {
  try {
    const json j = json::parse(json_text);
    CoefficientSet c;
    c.feature_ids = j.at("features").get<std::vector<std::string>>();
    c.theta = j.at("theta").get<std::vector<double>>();
    const auto& g = j.at("group_weights");
    c.group_weights = {g.at("overlap").get<double>(),
                       g.at("semantic").get<double>(),
                       g.at("diversity").get<double>(),
                       g.at("length").get<double>()};
    c.within_overlap = j.at("within_group").at("overlap").get<std::vector<double>>();
    c.within_semantic =
        j.at("within_group").at("semantic").get<std::vector<double>>();
    if (const auto e = j.find("estimation"); e != j.end()) {
      auto& p = c.provenance;
      p.pseudo_target = e->value("pseudo_target", std::string());
      p.seed = e->value("seed", uint64_t{0});
      p.trials_per_search = e->value("trials_per_search", 0);
      p.restart_probability = e->value("restart_probability", 0.0);
      p.step_ladder = e->value("step_ladder", std::vector<double>{});
      p.tuning_documents = e->value("tuning_documents", size_t{0});
      p.evaluations = e->value("evaluations", std::vector<int>{});
      if (const auto o = e->find("objective"); o != e->end()) {
        p.initial_objective = o->value("initial", 0.0);
        p.final_objective = o->value("final", 0.0);
        p.flat_objective = o->value("flat", 0.0);
      }
    }
    if (c.theta.size() != c.feature_ids.size()) {
      throw ValidationError("theta and features differ in length");
    }
    c.CheckInvariants(FeatureSpec::FromIds(c.feature_ids), 1e-5);
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("coefficient file: ") + e.what());
  } catch (const InvariantError& e) {
    throw ValidationError(std::string("coefficient file: ") + e.what());
  }
}

void WriteCoefficients(const std::filesystem::path& path,
                       const CoefficientSet& coefficients,
                       const Provenance& provenance) {
  WriteFileAtomic(path, SerializeCoefficients(coefficients, provenance));
}

CoefficientSet ReadCoefficients(const std::filesystem::path& path) {
  return ParseCoefficients(ReadFile(path));
}

std::string SerializeSelections(const std::vector<Selection>& selections,
                                const Provenance& provenance) {
  std::string out = ProvenanceLine(provenance);
  out.push_back('\n');
  for (const auto& s : selections) {
    ordered_json record;
    record["id"] = s.id;
    record["strategy"] = s.strategy;
    record["chosen"] = s.chosen;
    record["scores"] = s.scores;
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Selection> ParseSelections(std::string_view jsonl) {
  std::vector<Selection> selections;
  size_t begin = 0;
  size_t line_number = 0;
  while (begin < jsonl.size()) {
    size_t end = jsonl.find('\n', begin);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(begin, end - begin);
    begin = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json record = json::parse(line);
      if (record.contains("provenance")) continue;
      Selection s;
      s.id = record.at("id").get<std::string>();
      s.strategy = record.at("strategy").get<std::string>();
      s.chosen = record.at("chosen").get<size_t>();
      s.scores = record.value("scores", std::vector<double>{});
      if (!s.scores.empty() && s.chosen >= s.scores.size()) {
        throw ValidationError("chosen index out of range");
      }
      selections.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw ValidationError("selection line " + std::to_string(line_number) +
                            ": " + e.what());
    }
  }
  return selections;
}

void WriteSelections(const std::filesystem::path& path,
                     const std::vector<Selection>& selections,
                     const Provenance& provenance) {
  WriteFileAtomic(path, SerializeSelections(selections, provenance));
}

std::vector<Selection> ReadSelections(const std::filesystem::path& path) {
  return ParseSelections(ReadFile(path));
}

}  // namespace summrank
