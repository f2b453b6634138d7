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

#ifndef SUMMRANK_PIPELINE_H_
#define SUMMRANK_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/estimation.h"
#include "summrank/evaluation.h"
#include "summrank/features.h"
#include "summrank/io.h"
#include "summrank/pseudo_targets.h"
#include "summrank/selftrain.h"
#include "summrank/text.h"

namespace summrank {

// A semantic scorer as written on the command line: "builtin" (or
// "builtin-lexical") for the builtin scorer, "metric[:version]@url" for a
// remote one.
struct ScorerSpec {
  std::string metric;
  std::string version;
  std::string url;  // empty for the builtin scorer
  bool IsBuiltin() const { return url.empty(); }
  static ScorerSpec Parse(std::string_view text);
  std::string ToString() const;
};

struct RunConfig {
  TokenizerConfig tokenizer;
  std::vector<ScorerSpec> scorers = {ScorerSpec::Parse("builtin")};
  Normalization normalization = Normalization::kPerInstanceMinMax;
  std::optional<double> mu_len;
  PseudoMethod pseudo = PseudoMethod::kLead3;
  double salient_ratio = kDefaultSalientRatio;
  // Shared by pseudo-target sampling, estimation and the random baseline.
  uint64_t seed = 7;
  EstimationConfig estimation;
  std::vector<std::string> strategies = DefaultStrategies();
  double paraphrase_fraction = 0.25;

  // Execution settings; they never change results and are left out of the
  // digest.
  int threads = 0;
  bool use_cache = true;
  std::optional<std::filesystem::path> cache_dir;

  // Canonical JSON of every result-affecting setting.
  std::string CanonicalJson() const;
  std::string Digest() const;
};

// Where each stage reads and writes its artifacts.
struct ArtifactPaths {
  std::filesystem::path corpus;
  std::filesystem::path features;
  std::filesystem::path pseudo_targets;
  std::filesystem::path coefficients;
  std::filesystem::path estimation_log;
  std::filesystem::path selections;
  std::filesystem::path report_dir;
  std::filesystem::path labels;
  std::filesystem::path run_config;
  // Standard file names inside `directory`.
  static ArtifactPaths InDirectory(const std::filesystem::path& corpus,
                                   const std::filesystem::path& directory);
};

// Tool version, config digest and the SHA-256 of the corpus file.
Provenance MakeProvenance(const RunConfig& config,
                          const std::filesystem::path& corpus);

// Each stage reads its inputs from and writes its outputs to `paths`.
void RunFeaturesStage(const RunConfig& config, const ArtifactPaths& paths);
void RunPseudoTargetsStage(const RunConfig& config, const ArtifactPaths& paths);
// Returns the estimated (unrounded) coefficients.
CoefficientSet RunEstimateStage(const RunConfig& config,
                                const ArtifactPaths& paths);
void RunRerankStage(const RunConfig& config, const ArtifactPaths& paths);
EvaluationReport RunEvaluateStage(const RunConfig& config,
                                  const ArtifactPaths& paths);
LabelStats RunExportLabelsStage(const RunConfig& config,
                                const ArtifactPaths& paths);

struct PipelineOptions {
  bool evaluate = true;
  bool export_labels = false;
};

// features -> pseudo-targets -> estimate -> rerank -> evaluate ->
// export-labels, through the same files as the standalone stages.
void RunPipeline(const RunConfig& config, const ArtifactPaths& paths,
                 const PipelineOptions& options = {});

}  // namespace summrank

#endif  // SUMMRANK_PIPELINE_H_
