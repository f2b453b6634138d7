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

#ifndef SUMMRANK_SEMANTIC_H_
#define SUMMRANK_SEMANTIC_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "summrank/text.h"

namespace summrank {

// (name, version) fixes the meaning of a score. Known names are
// builtin-lexical, bertscore, bartscore and bleurt; any other metric name is
// a custom scorer.
struct ScorerId {
  std::string name;
  std::string version;

  bool IsKnown() const;
  std::string ToString() const { return name + "@" + version; }
  bool operator==(const ScorerId&) const = default;
};

// The referenced strings must outlive the scoring call.
struct TextPair {
  std::string_view candidate;
  std::string_view source;
};

class SemanticScorer {
 public:
  virtual ~SemanticScorer() = default;
  virtual ScorerId id() const = 0;
  // One score per pair, in input order.
  virtual std::vector<double> Score(std::span<const TextPair> pairs) = 0;
};

// Smoothed inverse document frequency: log((1 + D) / (1 + df)) + 1.
class IdfTable {
 public:
  // Flat table: every token weighs 1.
  IdfTable() = default;
  static IdfTable FromDocuments(
      const std::vector<std::vector<std::string>>& documents);

  double Weight(const std::string& token) const;
  size_t documents() const { return documents_; }
  // Short digest of the table contents, used in the scorer version.
  std::string Digest() const;

 private:
  std::map<std::string, double> weights_;
  double unseen_weight_ = 1.0;
  size_t documents_ = 0;
};

// Cosine similarity of idf-weighted bag-of-words count vectors, in [0, 1].
// Empty texts score 0.
double BuiltinLexicalScore(std::string_view candidate, std::string_view source,
                           const IdfTable& idf,
                           const TokenizerConfig& config = {});

class BuiltinLexicalScorer : public SemanticScorer {
 public:
  BuiltinLexicalScorer(IdfTable idf, TokenizerConfig config, int threads = 1);

  ScorerId id() const override;
  std::vector<double> Score(std::span<const TextPair> pairs) override;

  static constexpr std::string_view kName = "builtin-lexical";

 private:
  IdfTable idf_;
  TokenizerConfig config_;
  int threads_;
};

struct RemoteScorerOptions {
  // e.g. "http://127.0.0.1:8080"
  std::string base_url;
  std::string metric;
  std::string version = "unversioned";
  int max_in_flight = 4;
  size_t batch_limit = 64;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::seconds timeout{120};
};

struct HealthStatus {
  std::string status;
  std::vector<std::string> metrics;
};

// Client for the scoring service:
//   POST /v1/score  {"metric": m, "pairs": [{"candidate", "source"}, ...]}
//                   -> {"scores": [...]} with one score per pair
//   GET  /v1/health -> {"status": "ok", "metrics": [...]}
// Connection failures are retried with exponential backoff and end in a
// TransportError; any reply that breaks the contract is a ProtocolError.
class RemoteScorer : public SemanticScorer {
 public:
  explicit RemoteScorer(RemoteScorerOptions options);

  ScorerId id() const override;
  std::vector<double> Score(std::span<const TextPair> pairs) override;
  HealthStatus Health() const;

  const RemoteScorerOptions& options() const { return options_; }

 private:
  std::vector<double> ScoreOneBatch(std::span<const TextPair> batch) const;

  RemoteScorerOptions options_;
};

// Append-only log of scores keyed by content digest, one directory per
// scorer. Records that fail to parse are skipped with a warning.
class FeatureCache {
 public:
  FeatureCache(const std::filesystem::path& root, const ScorerId& scorer);

  // SHA-256 over (name, version, candidate, source), length-prefixed.
  static std::string Key(const ScorerId& scorer, std::string_view candidate,
                         std::string_view source);
  // $SUMMRANK_CACHE_DIR, else $XDG_CACHE_HOME/summrank, else
  // $HOME/.cache/summrank, else ./.summrank_cache.
  static std::filesystem::path DefaultRoot();

  std::optional<double> Lookup(const std::string& key) const;
  void Store(const std::string& key, double value);

  size_t size() const;
  size_t skipped_records() const { return skipped_; }
  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  std::filesystem::path log_path_;
  mutable std::shared_mutex map_mutex_;
  std::mutex writer_mutex_;
  std::unordered_map<std::string, double> entries_;
  size_t skipped_ = 0;
};

// Decorator that answers from the cache and forwards only misses.
class CachedScorer : public SemanticScorer {
 public:
  CachedScorer(SemanticScorer& inner, FeatureCache& cache)
      : inner_(inner), cache_(cache) {}

  ScorerId id() const override { return inner_.id(); }
  std::vector<double> Score(std::span<const TextPair> pairs) override;

 private:
  SemanticScorer& inner_;
  FeatureCache& cache_;
};

// Scores a non-empty batch; throws ParameterError on an empty one.
std::vector<double> ScoreBatch(SemanticScorer& scorer,
                               std::span<const TextPair> pairs);

}  // namespace summrank

#endif  // SUMMRANK_SEMANTIC_H_
