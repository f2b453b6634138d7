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

// Command line driver for the summrank pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "summrank/corpus.h"
#include "summrank/errors.h"
#include "summrank/io.h"
#include "summrank/pipeline.h"
#include "summrank/reranker.h"
#include "summrank/synth.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kTransport = 3, kInternal = 4 };

struct GlobalFlags {
  std::string corpus;
  std::string out = "run";
  std::string features;
  std::string pseudo_targets;
  std::string coefficients;
  std::string selections;
  std::string labels;
  std::string report_dir;

  bool stem = false;
  bool remove_stopwords = false;
  std::vector<std::string> abbreviations;
  std::vector<std::string> scorers = {"builtin"};
  std::string normalization = "per_instance_minmax";
  std::optional<double> mu_len;
  std::string pseudo = "lead3";
  double salient_ratio = summrank::kDefaultSalientRatio;
  uint64_t seed = 7;
  int trials = 1000;
  size_t tuning_subset = 1000;
  double restart_probability = 0.2;
  std::vector<double> step_ladder = {0.01, 0.02, 0.05, 0.1, 0.2};
  std::string strategies = "first,random,minimum,oracle,summscore,longest";
  double paraphrase_fraction = 0.25;
  int threads = 0;
  bool no_cache = false;
  std::string cache_dir;
};

summrank::RunConfig ToRunConfig(const GlobalFlags& f) {
  summrank::RunConfig c;
  c.tokenizer.stem = f.stem;
  c.tokenizer.remove_stopwords = f.remove_stopwords;
  if (!f.abbreviations.empty()) c.tokenizer.abbreviations = f.abbreviations;
  c.scorers.clear();
  for (const auto& s : f.scorers) c.scorers.push_back(summrank::ScorerSpec::Parse(s));
  c.normalization = summrank::ParseNormalization(f.normalization);
  c.mu_len = f.mu_len;
  if (c.mu_len && !(*c.mu_len >= 0.0)) {
    throw summrank::ParameterError("--mu-len must be non-negative");
  }
  c.pseudo = summrank::ParsePseudoMethod(f.pseudo);
  if (!(f.salient_ratio > 0.0 && f.salient_ratio <= 1.0)) {
    throw summrank::ParameterError("--salient-ratio must be in (0, 1]");
  }
  c.salient_ratio = f.salient_ratio;
  c.seed = f.seed;
  c.estimation.trials_per_search = f.trials;
  c.estimation.tuning_subset_size = f.tuning_subset;
  c.estimation.restart_probability = f.restart_probability;
  c.estimation.step_ladder = f.step_ladder;
  c.estimation.seed = f.seed;
  c.estimation.Validate();
  c.strategies = summrank::ParseStrategies(f.strategies);
  c.paraphrase_fraction = f.paraphrase_fraction;
  c.threads = f.threads;
  c.use_cache = !f.no_cache;
  if (!f.cache_dir.empty()) c.cache_dir = fs::path(f.cache_dir);
  return c;
}

summrank::ArtifactPaths ToPaths(const GlobalFlags& f) {
  if (f.corpus.empty()) throw summrank::ParameterError("--corpus is required");
  auto p = summrank::ArtifactPaths::InDirectory(f.corpus, f.out);
  if (!f.features.empty()) p.features = f.features;
  if (!f.pseudo_targets.empty()) p.pseudo_targets = f.pseudo_targets;
  if (!f.coefficients.empty()) p.coefficients = f.coefficients;
  if (!f.selections.empty()) p.selections = f.selections;
  if (!f.labels.empty()) p.labels = f.labels;
  if (!f.report_dir.empty()) p.report_dir = f.report_dir;
  return p;
}

void AddGlobalOptions(CLI::App& app, GlobalFlags& f) {
  app.add_option("--corpus", f.corpus, "Corpus JSONL file")->group("Files");
  app.add_option("--out", f.out, "Artifact directory")
      ->capture_default_str()
      ->group("Files");
  app.add_option("--features", f.features, "Feature file (default <out>/features.jsonl)")
      ->group("Files");
  app.add_option("--pseudo-targets", f.pseudo_targets, "Pseudo-target file")
      ->group("Files");
  app.add_option("--coefficients", f.coefficients, "Coefficient file")->group("Files");
  app.add_option("--selections", f.selections, "Selection file")->group("Files");
  app.add_option("--labels", f.labels, "Label export file")->group("Files");
  app.add_option("--report-dir", f.report_dir, "Directory for report files")
      ->group("Files");

  app.add_flag("--stem", f.stem, "Porter-stem tokens")->group("Tokenizer");
  app.add_flag("--remove-stopwords", f.remove_stopwords, "Drop English stopwords")
      ->group("Tokenizer");
  app.add_option("--abbreviations", f.abbreviations,
                 "Abbreviations that never end a sentence (replaces the default list)")
      ->delimiter(',')
      ->group("Tokenizer");

  app.add_option("--scorer", f.scorers,
                 "Semantic scorer: builtin or metric[:version]@url (repeatable)")
      ->delimiter(',')
      ->capture_default_str()
      ->group("Features");
  app.add_option("--normalization", f.normalization, "none or per_instance_minmax")
      ->capture_default_str()
      ->group("Features");
  app.add_option("--mu-len", f.mu_len,
                 "Target length in tokens (default: mean candidate length)")
      ->group("Features");

  app.add_option("--pseudo", f.pseudo,
                 "random3, lead3, salient-r1, salient-r2 or salient-rl")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--salient-ratio", f.salient_ratio, "Share of sentences kept by salient")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--seed", f.seed, "Seed for every random choice")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--trials", f.trials, "Objective evaluations per search stage")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--tuning-subset", f.tuning_subset, "Documents used for estimation")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--restart-probability", f.restart_probability,
                 "Chance of a random restart per trial")
      ->capture_default_str()
      ->group("Estimation");
  app.add_option("--step-ladder", f.step_ladder, "Perturbation step sizes")
      ->delimiter(',')
      ->capture_default_str()
      ->group("Estimation");

  app.add_option("--strategies", f.strategies,
                 "Comma-separated selection strategies to evaluate")
      ->capture_default_str()
      ->group("Evaluation");
  app.add_option("--paraphrase-fraction", f.paraphrase_fraction,
                 "Share of most extractive labels flagged for paraphrasing")
      ->capture_default_str()
      ->group("Evaluation");

  app.add_option("--threads", f.threads, "Worker threads (0: all cores)")
      ->capture_default_str()
      ->group("Execution");
  app.add_flag("--no-cache", f.no_cache, "Do not cache remote scores")
      ->group("Execution");
  app.add_option("--cache-dir", f.cache_dir,
                 "Score cache root (default: $SUMMRANK_CACHE_DIR)")
      ->group("Execution");
}

void PrintWritten(const char* stage, const fs::path& path) {
  std::cout << stage << ": wrote " << path.string() << "\n";
}

int Run(int argc, char** argv) {
  CLI::App app{"Unsupervised re-ranking of summary candidates", "summrank"};
  app.set_version_flag("--version", summrank::ToolVersion());
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags flags;
  AddGlobalOptions(app, flags);

  auto* features = app.add_subcommand("features", "Compute the feature matrix");
  auto* pseudo = app.add_subcommand("pseudo-targets", "Build pseudo-targets");
  auto* estimate = app.add_subcommand("estimate", "Estimate feature coefficients");
  auto* rerank = app.add_subcommand("rerank", "Select one candidate per document");
  auto* evaluate = app.add_subcommand("evaluate", "Score selection strategies");
  auto* export_labels =
      app.add_subcommand("export-labels", "Export self-training labels");

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage in order");
  bool with_labels = false;
  bool no_evaluate = false;
  pipeline->add_flag("--export-labels", with_labels, "Also export labels");
  pipeline->add_flag("--no-evaluate", no_evaluate, "Skip the evaluate stage");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  summrank::SynthOptions synth_options;
  std::string synth_output;
  std::string plant_output;
  std::string plant_name = "bleu-oracle";
  synth->add_option("--n-docs", synth_options.n_docs)->capture_default_str();
  synth->add_option("-k", synth_options.k, "Candidates per document")
      ->capture_default_str();
  synth->add_option("--vocab", synth_options.vocab)->capture_default_str();
  synth->add_option("--plant", plant_name, "bleu-oracle, lead-bias or uniform")
      ->capture_default_str();
  synth->add_option("--output", synth_output, "Corpus file")->required();
  synth->add_option("--plants", plant_output,
                    "Plant sidecar (default: plant.jsonl next to the corpus)");

  auto* pool = app.add_subcommand("pool", "Pool candidates of several corpora");
  std::vector<std::string> pool_inputs;
  std::vector<std::string> pool_labels;
  std::string pool_output;
  pool->add_option("--input", pool_inputs, "Corpus files covering the same documents")
      ->required();
  pool->add_option("--label", pool_labels, "Origin label per input");
  pool->add_option("--output", pool_output, "Pooled corpus file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  if (synth->parsed()) {
    synth_options.plant = summrank::ParsePlant(plant_name);
    synth_options.seed = flags.seed;
    const auto generated = summrank::GenerateSynthetic(synth_options);
    const fs::path corpus_path = synth_output;
    const fs::path plant_path = plant_output.empty()
                                    ? corpus_path.parent_path() / "plant.jsonl"
                                    : fs::path(plant_output);
    summrank::WriteSynthetic(corpus_path, plant_path, generated);
    PrintWritten("synth", corpus_path);
    PrintWritten("synth", plant_path);
    return kOk;
  }
  if (pool->parsed()) {
    std::vector<summrank::Corpus> corpora;
    for (const auto& input : pool_inputs) corpora.push_back(summrank::ReadCorpus(input));
    if (pool_labels.empty()) {
      for (const auto& input : pool_inputs) {
        pool_labels.push_back(fs::path(input).stem().string());
      }
    }
    summrank::WriteCorpus(pool_output, summrank::PoolCorpora(corpora, pool_labels));
    PrintWritten("pool", pool_output);
    return kOk;
  }

  const summrank::RunConfig config = ToRunConfig(flags);
  const summrank::ArtifactPaths paths = ToPaths(flags);
  if (features->parsed()) {
    summrank::RunFeaturesStage(config, paths);
    PrintWritten("features", paths.features);
  } else if (pseudo->parsed()) {
    summrank::RunPseudoTargetsStage(config, paths);
    PrintWritten("pseudo-targets", paths.pseudo_targets);
  } else if (estimate->parsed()) {
    const auto c = summrank::RunEstimateStage(config, paths);
    PrintWritten("estimate", paths.coefficients);
    PrintWritten("estimate", paths.estimation_log);
    std::printf("estimate: objective %.6f (flat %.6f)\n",
                c.provenance.final_objective, c.provenance.flat_objective);
  } else if (rerank->parsed()) {
    summrank::RunRerankStage(config, paths);
    PrintWritten("rerank", paths.selections);
  } else if (evaluate->parsed()) {
    summrank::RunEvaluateStage(config, paths);
    std::cout << summrank::ReadFile(paths.report_dir / "report.txt");
  } else if (export_labels->parsed()) {
    const auto stats = summrank::RunExportLabelsStage(config, paths);
    PrintWritten("export-labels", paths.labels);
    std::printf("export-labels: %zu records, %zu flagged, mean extractiveness %.4f\n",
                stats.records, stats.flagged, stats.mean_extractiveness);
  } else if (pipeline->parsed()) {
    summrank::PipelineOptions options;
    options.evaluate = !no_evaluate;
    options.export_labels = with_labels;
    summrank::RunPipeline(config, paths, options);
    std::cout << "pipeline: artifacts in " << flags.out << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const summrank::ValidationError& e) {
    std::cerr << "summrank: validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const summrank::ParameterError& e) {
    std::cerr << "summrank: invalid parameter: " << e.what() << "\n";
    return kValidation;
  } catch (const summrank::DegenerateInputError& e) {
    std::cerr << "summrank: degenerate input: " << e.what() << "\n";
    return kValidation;
  } catch (const summrank::TransportError& e) {
    std::cerr << "summrank: scorer unreachable: " << e.what() << "\n";
    return kTransport;
  } catch (const summrank::ProtocolError& e) {
    std::cerr << "summrank: scorer protocol error: " << e.what() << "\n";
    return kTransport;
  } catch (const summrank::InvariantError& e) {
    std::cerr << "summrank: internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "summrank: error: " << e.what() << "\n";
    return kInternal;
  }
}
