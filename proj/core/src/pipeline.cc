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

#include "summrank/pipeline.h"

#include <algorithm>
#include <memory>

#include "json.hpp"
#include "summrank/corpus.h"
#include "summrank/digest.h"
#include "summrank/errors.h"
#include "summrank/parallel.h"
#include "summrank/reranker.h"
#include "summrank/semantic.h"

namespace summrank {
namespace {

using nlohmann::ordered_json;

// Owns the scorers of one feature run.
struct ScorerSet {
  std::vector<std::unique_ptr<SemanticScorer>> owned;
  std::vector<std::unique_ptr<FeatureCache>> caches;
  std::vector<SemanticScorer*> scorers;
  std::vector<std::string> names;
};

ScorerSet BuildScorers(const RunConfig& config, const Corpus& corpus) {
  ScorerSet set;
  for (const auto& spec : config.scorers) {
    if (std::find(set.names.begin(), set.names.end(), spec.metric) !=
        set.names.end()) {
      throw ParameterError("scorer " + spec.metric + " configured twice");
    }
    set.names.push_back(spec.metric);
    if (spec.IsBuiltin()) {
      std::vector<std::vector<std::string>> sources(corpus.size());
      ParallelFor(corpus.size(), config.threads, [&](size_t i) {
        sources[i] = Tokenize(corpus.documents[i].source, config.tokenizer).tokens;
      });
      set.owned.push_back(std::make_unique<BuiltinLexicalScorer>(
          IdfTable::FromDocuments(sources), config.tokenizer,
          ResolveThreads(config.threads)));
      set.scorers.push_back(set.owned.back().get());
      continue;
    }
    RemoteScorerOptions options;
    options.base_url = spec.url;
    options.metric = spec.metric;
    options.version = spec.version;
    set.owned.push_back(std::make_unique<RemoteScorer>(options));
    SemanticScorer* scorer = set.owned.back().get();
    if (config.use_cache) {
      set.caches.push_back(std::make_unique<FeatureCache>(
          config.cache_dir.value_or(FeatureCache::DefaultRoot()), scorer->id()));
      set.owned.push_back(
          std::make_unique<CachedScorer>(*scorer, *set.caches.back()));
      scorer = set.owned.back().get();
    }
    set.scorers.push_back(scorer);
  }
  return set;
}

void CheckSameDocuments(const Corpus& corpus, const FeatureMatrix& features) {
  if (corpus.size() != features.documents.size()) {
    throw ValidationError("feature file covers " +
                          std::to_string(features.documents.size()) +
                          " documents, corpus " + std::to_string(corpus.size()));
  }
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus.documents[i].id != features.documents[i].id) {
      throw ValidationError("feature file is out of step with the corpus at "
                            "document \"" + corpus.documents[i].id + "\"");
    }
  }
}

}  // namespace

ScorerSpec ScorerSpec::Parse(std::string_view text) {
  if (text == "builtin" || text == BuiltinLexicalScorer::kName) {
    return {std::string(BuiltinLexicalScorer::kName), "", ""};
  }
  const size_t at = text.find('@');
  if (at == std::string_view::npos || at == 0 || at + 1 == text.size()) {
    throw ParameterError("scorer \"" + std::string(text) +
                         "\" must be \"builtin\" or metric[:version]@url");
  }
  ScorerSpec spec;
  const std::string_view name = text.substr(0, at);
  spec.url = std::string(text.substr(at + 1));
  const size_t colon = name.find(':');
  spec.metric = std::string(name.substr(0, colon));
  spec.version = colon == std::string_view::npos
                     ? "unversioned"
                     : std::string(name.substr(colon + 1));
  if (spec.metric.empty() || spec.version.empty()) {
    throw ParameterError("scorer \"" + std::string(text) +
                         "\" has an empty metric or version");
  }
  if (spec.metric == BuiltinLexicalScorer::kName) {
    throw ParameterError("builtin-lexical cannot be served remotely");
  }
  return spec;
}

std::string ScorerSpec::ToString() const {
  if (IsBuiltin()) return metric;
  return metric + ":" + version + "@" + url;
}

std::string RunConfig::CanonicalJson() const {
  ordered_json j;
  j["tokenizer"]["stem"] = tokenizer.stem;
  j["tokenizer"]["remove_stopwords"] = tokenizer.remove_stopwords;
  j["tokenizer"]["abbreviations"] = tokenizer.abbreviations;
  ordered_json scorer_list = ordered_json::array();
  for (const auto& s : scorers) {
    // The endpoint does not change what a score means; name and version do.
    scorer_list.push_back(s.IsBuiltin() ? s.metric : s.metric + ":" + s.version);
  }
  j["scorers"] = scorer_list;
  j["normalization"] = NormalizationName(normalization);
  if (mu_len) {
    j["mu_len"] = *mu_len;
  } else {
    j["mu_len"] = nullptr;
  }
  j["pseudo_target"]["method"] = PseudoMethodName(pseudo);
  j["pseudo_target"]["salient_ratio"] = salient_ratio;
  j["seed"] = seed;
  j["estimation"]["trials_per_search"] = estimation.trials_per_search;
  j["estimation"]["tuning_subset_size"] = estimation.tuning_subset_size;
  j["estimation"]["restart_probability"] = estimation.restart_probability;
  j["estimation"]["step_ladder"] = estimation.step_ladder;
  j["strategies"] = strategies;
  j["paraphrase_fraction"] = paraphrase_fraction;
  return j.dump();
}

std::string RunConfig::Digest() const { return Sha256Hex(CanonicalJson()); }

ArtifactPaths ArtifactPaths::InDirectory(const std::filesystem::path& corpus,
                                         const std::filesystem::path& directory) {
  ArtifactPaths p;
  p.corpus = corpus;
  p.features = directory / "features.jsonl";
  p.pseudo_targets = directory / "pseudo_targets.jsonl";
  p.coefficients = directory / "coefficients.json";
  p.estimation_log = directory / "estimation_log.csv";
  p.selections = directory / "selections.jsonl";
  p.report_dir = directory;
  p.labels = directory / "labels.jsonl";
  p.run_config = directory / "run_config.json";
  return p;
}

Provenance MakeProvenance(const RunConfig& config,
                          const std::filesystem::path& corpus) {
  return {ToolVersion(), config.Digest(), FileSha256Hex(corpus)};
}

void RunFeaturesStage(const RunConfig& config, const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  ScorerSet scorers = BuildScorers(config, corpus);
  FeatureOptions options;
  options.normalization = config.normalization;
  options.mu_len = config.mu_len;
  options.threads = config.threads;
  const FeatureMatrix matrix =
      ComputeFeatures(corpus, FeatureSpec::Standard(scorers.names),
                      scorers.scorers, config.tokenizer, options);
  WriteFeatures(paths.features, matrix, provenance);
}

void RunPseudoTargetsStage(const RunConfig& config, const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  PseudoTargetOptions options;
  options.method = config.pseudo;
  options.seed = config.seed;
  options.salient_ratio = config.salient_ratio;
  WritePseudoTargets(
      paths.pseudo_targets,
      BuildPseudoTargets(corpus, options, config.tokenizer, config.threads),
      provenance);
}

CoefficientSet RunEstimateStage(const RunConfig& config,
                                const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  const FeatureMatrix features = ReadFeatures(paths.features);
  CheckSameDocuments(corpus, features);
  const auto targets = ReadPseudoTargets(paths.pseudo_targets);
  for (const auto& t : targets) {
    if (t.method != config.pseudo) {
      throw ValidationError("pseudo-target file was built with " +
                            std::string(PseudoMethodName(t.method)) +
                            ", config asks for " +
                            std::string(PseudoMethodName(config.pseudo)));
    }
  }
  const ObjectiveTable table =
      BuildObjectiveTable(corpus, targets, config.tokenizer, config.threads);
  EstimationConfig estimation = config.estimation;
  estimation.seed = config.seed;
  EstimationResult result = HierarchicalEstimate(
      features, table, estimation, std::string(PseudoMethodName(config.pseudo)));
  WriteCoefficients(paths.coefficients, result.coefficients, provenance);
  WriteFileAtomic(paths.estimation_log,
                  SerializeEstimationLog(result.log, provenance));
  return result.coefficients;
}

void RunRerankStage(const RunConfig& config, const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  const FeatureMatrix features = ReadFeatures(paths.features);
  CheckSameDocuments(corpus, features);
  const CoefficientSet coefficients = ReadCoefficients(paths.coefficients);
  if (coefficients.feature_ids != features.spec.ids) {
    throw ValidationError("coefficients were estimated for other features");
  }
  WriteSelections(paths.selections, Rerank(features, coefficients), provenance);
}

EvaluationReport RunEvaluateStage(const RunConfig& config,
                                  const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  std::optional<FeatureMatrix> features;
  if (std::filesystem::exists(paths.features)) {
    features = ReadFeatures(paths.features);
    CheckSameDocuments(corpus, *features);
  }
  std::optional<std::vector<Selection>> selections;
  if (std::filesystem::exists(paths.selections)) {
    selections = ReadSelections(paths.selections);
  }
  EvaluationOptions options;
  options.strategies = config.strategies;
  options.seed = config.seed;
  options.threads = config.threads;
  EvaluationReport report =
      Evaluate(corpus, features ? &*features : nullptr,
               selections ? &*selections : nullptr, config.tokenizer, options);
  WriteEvaluationReport(paths.report_dir, report, provenance);
  return report;
}

LabelStats RunExportLabelsStage(const RunConfig& config,
                                const ArtifactPaths& paths) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  const Corpus corpus = ReadCorpus(paths.corpus);
  const auto selections = ReadSelections(paths.selections);
  const LabelExport labels = ExportLabels(corpus, selections,
                                          config.paraphrase_fraction,
                                          config.tokenizer);
  LabelMetadata metadata;
  metadata.seed = config.seed;
  if (std::filesystem::exists(paths.coefficients)) {
    metadata.coefficients_digest = FileSha256Hex(paths.coefficients);
  }
  WriteLabels(paths.labels, labels, metadata, provenance);
  return labels.stats;
}

void RunPipeline(const RunConfig& config, const ArtifactPaths& paths,
                 const PipelineOptions& options) {
  const Provenance provenance = MakeProvenance(config, paths.corpus);
  // Validate up front so a bad record fails before any artifact is written.
  const Corpus corpus = ReadCorpus(paths.corpus);
  if (!paths.run_config.empty()) {
    ordered_json j;
    j["provenance"]["tool_version"] = provenance.tool_version;
    j["provenance"]["config_digest"] = provenance.config_digest;
    j["provenance"]["input_digest"] = provenance.input_digest;
    j["config"] = ordered_json::parse(config.CanonicalJson());
    WriteFileAtomic(paths.run_config, j.dump(2) + "\n");
  }
  RunFeaturesStage(config, paths);
  RunPseudoTargetsStage(config, paths);
  RunEstimateStage(config, paths);
  RunRerankStage(config, paths);
  if (options.evaluate) {
    if (corpus.HasReferences()) {
      RunEvaluateStage(config, paths);
    } else {
      LogWarning("corpus has documents without references; skipping evaluate");
    }
  }
  if (options.export_labels) RunExportLabelsStage(config, paths);
}

}  // namespace summrank
