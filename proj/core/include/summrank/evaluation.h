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

#ifndef SUMMRANK_EVALUATION_H_
#define SUMMRANK_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/corpus.h"
#include "summrank/features.h"
#include "summrank/io.h"
#include "summrank/metrics.h"
#include "summrank/reranker.h"
#include "summrank/text.h"

namespace summrank {

inline constexpr std::string_view kMaxFeaturePrefix = "max-feature:";

// first, random, minimum, oracle, summscore, longest.
std::vector<std::string> DefaultStrategies();

// Splits a comma-separated list and checks every name. "max-feature:<id>"
// is accepted for any id; it is resolved against the feature spec later.
std::vector<std::string> ParseStrategies(std::string_view list);

// ROUGE of every candidate against the document's reference.
using ReferenceTable = std::vector<std::vector<RougeScores>>;

// Throws ParameterError naming the first document without a reference.
ReferenceTable BuildReferenceTable(const Corpus& corpus,
                                   const TokenizerConfig& config,
                                   int threads = 1);

// Inputs a strategy may consult. Strategies that need a missing input
// throw ParameterError.
struct SelectionContext {
  const Corpus* corpus = nullptr;
  const ReferenceTable* references = nullptr;  // oracle, minimum
  const FeatureMatrix* features = nullptr;     // max-feature:<id>
  const std::vector<Selection>* summscore = nullptr;
  uint64_t seed = 7;  // random
  TokenizerConfig config;  // longest
};

// Chosen candidate per document. Ties go to the lowest index.
std::vector<size_t> BaselineSelect(std::string_view strategy,
                                   const SelectionContext& context);

// 100 * (selected - baseline) / baseline; throws DegenerateInputError when
// the baseline is not positive.
double Gain(double selected, double baseline);

struct StrategyResult {
  std::string strategy;
  std::vector<size_t> chosen;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rouge_lsum = 0.0;
  // Mean over documents of the per-document mean ROUGE.
  double mean = 0.0;
  // Relative to the first-candidate baseline; empty when undefined.
  std::optional<double> gain_pct;
};

StrategyResult ScoreStrategy(std::string strategy, std::vector<size_t> chosen,
                             const ReferenceTable& references);

// Candidate indices by descending score; equal scores keep index order.
std::vector<size_t> RankByScore(const std::vector<double>& scores);

// All candidates attaining the best mean ROUGE of each document.
std::vector<std::vector<size_t>> OracleSets(const ReferenceTable& references);

// Fraction of documents whose top-k ranked candidates contain an oracle
// candidate. Throws ParameterError for k < 1 or an empty oracle set.
double RecallAtK(const std::vector<std::vector<size_t>>& rankings,
                 const std::vector<std::vector<size_t>>& oracle_sets, size_t k);

struct RecallCurve {
  std::vector<size_t> k;
  std::vector<double> recall;
};

// Thresholds 1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 50, 75, 100, ... capped by
// and always including the largest pool size.
std::vector<size_t> RecallThresholds(size_t max_pool);

RecallCurve ComputeRecallCurve(
    const std::vector<std::vector<size_t>>& rankings,
    const std::vector<std::vector<size_t>>& oracle_sets);

struct OverlapRow {
  std::string strategy;
  double percent = 0.0;
};

// Percentage of documents on which `reference` and each other selection
// pick the same candidate.
std::vector<OverlapRow> OverlapDiagnostics(
    const std::vector<size_t>& reference,
    const std::vector<std::pair<std::string, std::vector<size_t>>>& others);

// Share of the candidate's n-gram occurrences that never occur in the
// source; empty when the candidate has no n-grams of that order.
std::optional<double> NovelNgramFraction(const std::vector<std::string>& candidate,
                                         const std::vector<std::string>& source,
                                         int n);

// Corpus mean novel n-gram fraction for n = 1, 2, 3 over the chosen
// candidates. Documents without n-grams of an order are left out of it.
std::array<double, 3> Abstractiveness(const Corpus& corpus,
                                      const std::vector<size_t>& chosen,
                                      const TokenizerConfig& config);

struct EvaluationOptions {
  std::vector<std::string> strategies = DefaultStrategies();
  uint64_t seed = 7;
  int threads = 1;
};

struct EvaluationReport {
  std::vector<StrategyResult> strategies;
  RecallCurve recall;
  std::vector<OverlapRow> overlap;
  // Selection whose abstractiveness is reported.
  std::string abstractiveness_strategy;
  std::array<double, 3> abstractiveness = {0.0, 0.0, 0.0};
};

// Evaluates every requested strategy against the references. Recall and
// overlap diagnostics are computed when SummScore selections are given.
EvaluationReport Evaluate(const Corpus& corpus, const FeatureMatrix* features,
                          const std::vector<Selection>* summscore,
                          const TokenizerConfig& config,
                          const EvaluationOptions& options);

std::string SerializeReportCsv(const EvaluationReport& report,
                               const Provenance& provenance);
std::string SerializeRecallCsv(const EvaluationReport& report,
                               const Provenance& provenance);
std::string SerializeOverlapCsv(const EvaluationReport& report,
                                const Provenance& provenance);
std::string SerializeAbstractivenessCsv(const EvaluationReport& report,
                                        const Provenance& provenance);
// Fixed-width table, scores multiplied by 100.
std::string SerializeReportTable(const EvaluationReport& report,
                                 const Provenance& provenance);

// report.csv, recall.csv, overlap.csv, abstractiveness.csv and report.txt.
void WriteEvaluationReport(const std::filesystem::path& directory,
                           const EvaluationReport& report,
                           const Provenance& provenance);

}  // namespace summrank

#endif  // SUMMRANK_EVALUATION_H_
