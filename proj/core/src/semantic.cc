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

#include "summrank/semantic.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "summrank/digest.h"
#include "summrank/errors.h"
#include "summrank/io.h"
#include "summrank/parallel.h"

namespace summrank {
namespace {

using nlohmann::json;

std::map<std::string, double> WeightedCounts(std::string_view text,
                                             const IdfTable& idf,
                                             const TokenizerConfig& config) {
  std::map<std::string, double> counts;
  for (auto& token : Tokenize(text, config).tokens) counts[token] += 1.0;
  for (auto& [token, value] : counts) value *= idf.Weight(token);
  return counts;
}

double SquaredNorm(const std::map<std::string, double>& v) {
  double sum = 0.0;
  for (const auto& [token, value] : v) sum += value * value;
  return sum;
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

bool IsHexDigest(std::string_view s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

std::string SanitizeForPath(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                      c == '.' || c == '+' || c == '@';
    out.push_back(safe ? c : '_');
  }
  return out;
}

}  // namespace

bool ScorerId::IsKnown() const {
  return name == BuiltinLexicalScorer::kName || name == "bertscore" ||
         name == "bartscore" || name == "bleurt";
}

IdfTable IdfTable::FromDocuments(
    const std::vector<std::vector<std::string>>& documents) {
  IdfTable table;
  table.documents_ = documents.size();
  std::map<std::string, size_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& token : unique) ++df[token];
  }
  const double d = static_cast<double>(documents.size());
  for (const auto& [token, count] : df) {
    table.weights_[token] =
        std::log((1.0 + d) / (1.0 + static_cast<double>(count))) + 1.0;
  }
  table.unseen_weight_ = std::log(1.0 + d) + 1.0;
  return table;
}

double IdfTable::Weight(const std::string& token) const {
  const auto it = weights_.find(token);
  return it == weights_.end() ? unseen_weight_ : it->second;
}

std::string IdfTable::Digest() const {
  std::string material = std::to_string(documents_) + "\n";
  for (const auto& [token, weight] : weights_) {
    material += token;
    material.push_back('\t');
    material += FormatDouble(weight);
    material.push_back('\n');
  }
  return Sha256Hex(material).substr(0, 12);
}

double BuiltinLexicalScore(std::string_view candidate, std::string_view source,
                           const IdfTable& idf, const TokenizerConfig& config) {
  const auto a = WeightedCounts(candidate, idf, config);
  const auto b = WeightedCounts(source, idf, config);
  if (a.empty() || b.empty()) return 0.0;
  // Both maps are ordered, so the dot product is accumulated in the same
  // order whichever text comes first.
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double norm = std::sqrt(SquaredNorm(a) * SquaredNorm(b));
  if (norm <= 0.0) return 0.0;
  return std::clamp(dot / norm, 0.0, 1.0);
}

BuiltinLexicalScorer::BuiltinLexicalScorer(IdfTable idf, TokenizerConfig config,
                                           int threads)
    : idf_(std::move(idf)), config_(std::move(config)), threads_(threads) {}

ScorerId BuiltinLexicalScorer::id() const {
  return ScorerId{std::string(kName), "1+idf." + idf_.Digest()};
}

std::vector<double> BuiltinLexicalScorer::Score(
    std::span<const TextPair> pairs) {
  std::vector<double> scores(pairs.size());
  ParallelFor(pairs.size(), threads_, [&](size_t i) {
    scores[i] =
        BuiltinLexicalScore(pairs[i].candidate, pairs[i].source, idf_, config_);
  });
  return scores;
}

RemoteScorer::RemoteScorer(RemoteScorerOptions options)
    : options_(std::move(options)) {
  if (options_.base_url.empty()) throw ParameterError("remote scorer needs a URL");
  if (options_.metric.empty()) throw ParameterError("remote scorer needs a metric");
  if (options_.batch_limit == 0 || options_.batch_limit > 64) {
    throw ParameterError("remote batch limit must be in [1, 64]");
  }
  if (options_.max_in_flight < 1) options_.max_in_flight = 1;
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

ScorerId RemoteScorer::id() const {
  return ScorerId{options_.metric, options_.version};
}

std::vector<double> RemoteScorer::ScoreOneBatch(
    std::span<const TextPair> batch) const {
  json body;
  body["metric"] = options_.metric;
  body["pairs"] = json::array();
  for (const auto& pair : batch) {
    body["pairs"].push_back(
        {{"candidate", std::string(pair.candidate)},
         {"source", std::string(pair.source)}});
  }
  const std::string payload = body.dump();

  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);

  auto backoff = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    auto response = client.Post("/v1/score", payload, "application/json");
    if (!response) {
      if (attempt >= options_.max_attempts) {
        throw TransportError("scorer " + options_.metric + " at " +
                                 options_.base_url + " unreachable: " +
                                 httplib::to_string(response.error()),
                             attempt);
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    if (response->status != 200) {
      throw ProtocolError("scorer " + options_.metric + " replied HTTP " +
                          std::to_string(response->status) + ": " +
                          response->body);
    }
    json reply;
    try {
      reply = json::parse(response->body);
    } catch (const json::parse_error&) {
      throw ProtocolError("scorer " + options_.metric + " sent malformed JSON");
    }
    const auto scores = reply.find("scores");
    if (!reply.is_object() || scores == reply.end() || !scores->is_array()) {
      throw ProtocolError("scorer reply lacks a \"scores\" array");
    }
    if (scores->size() != batch.size()) {
      throw ProtocolError("scorer returned " + std::to_string(scores->size()) +
                          " scores for " + std::to_string(batch.size()) +
                          " pairs");
    }
    std::vector<double> out;
    out.reserve(batch.size());
    for (const auto& s : *scores) {
      if (!s.is_number()) throw ProtocolError("non-numeric score in reply");
      out.push_back(s.get<double>());
    }
    return out;
  }
}

std::vector<double> RemoteScorer::Score(std::span<const TextPair> pairs) {
  const size_t limit = options_.batch_limit;
  const size_t batches = (pairs.size() + limit - 1) / limit;
  std::vector<double> scores(pairs.size());
  ParallelFor(batches, options_.max_in_flight, [&](size_t b) {
    const size_t begin = b * limit;
    const size_t count = std::min(limit, pairs.size() - begin);
    const auto result = ScoreOneBatch(pairs.subspan(begin, count));
    std::copy(result.begin(), result.end(), scores.begin() + begin);
  });
  return scores;
}

HealthStatus RemoteScorer::Health() const {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  auto backoff = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    auto response = client.Get("/v1/health");
    if (!response) {
      if (attempt >= options_.max_attempts) {
        throw TransportError("scorer health check at " + options_.base_url +
                                 " failed: " +
                                 httplib::to_string(response.error()),
                             attempt);
      }
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    if (response->status != 200) {
      throw ProtocolError("health check replied HTTP " +
                          std::to_string(response->status));
    }
    try {
      const json reply = json::parse(response->body);
      HealthStatus health;
      health.status = reply.at("status").get<std::string>();
      health.metrics = reply.at("metrics").get<std::vector<std::string>>();
      return health;
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("malformed health reply: ") + e.what());
    }
  }
}

FeatureCache::FeatureCache(const std::filesystem::path& root,
                           const ScorerId& scorer) {
  const auto dir = root / SanitizeForPath(scorer.ToString());
  std::filesystem::create_directories(dir);
  log_path_ = dir / "records.log";

  std::ifstream in(log_path_, std::ios::binary);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (in.eof()) {
      // No trailing newline: the writer was interrupted mid-record.
      ++skipped_;
      LogWarning("cache " + log_path_.string() + ": truncated final record");
      break;
    }
    const size_t tab = line.find('\t');
    double value = 0.0;
    bool ok = tab != std::string::npos && IsHexDigest(line.substr(0, tab));
    if (ok) {
      const char* first = line.data() + tab + 1;
      const char* last = line.data() + line.size();
      const auto parsed = std::from_chars(first, last, value);
      ok = parsed.ec == std::errc() && parsed.ptr == last && first != last;
    }
    if (!ok) {
      ++skipped_;
      LogWarning("cache " + log_path_.string() + ": skipping corrupt record");
      continue;
    }
    entries_[line.substr(0, tab)] = value;
  }
}

std::string FeatureCache::Key(const ScorerId& scorer,
                              std::string_view candidate,
                              std::string_view source) {
  std::string material;
  for (std::string_view part :
       {std::string_view(scorer.name), std::string_view(scorer.version),
        candidate, source}) {
    material += std::to_string(part.size());
    material.push_back(':');
    material.append(part);
  }
  return Sha256Hex(material);
}

std::filesystem::path FeatureCache::DefaultRoot() {
  if (const char* dir = std::getenv("SUMMRANK_CACHE_DIR"); dir && *dir) {
    return dir;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "summrank";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "summrank";
  }
  return ".summrank_cache";
}

std::optional<double> FeatureCache::Lookup(const std::string& key) const {
  std::shared_lock lock(map_mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FeatureCache::Store(const std::string& key, double value) {
  std::lock_guard writer(writer_mutex_);
  {
    std::unique_lock lock(map_mutex_);
    entries_[key] = value;
  }
  std::ofstream out(log_path_, std::ios::binary | std::ios::app);
  if (!out) throw ValidationError("cannot append to " + log_path_.string());
  out << key << '\t' << FormatDouble(value) << '\n';
}

size_t FeatureCache::size() const {
  std::shared_lock lock(map_mutex_);
  return entries_.size();
}

std::vector<double> CachedScorer::Score(std::span<const TextPair> pairs) {
  const ScorerId scorer = inner_.id();
  std::vector<double> scores(pairs.size());
  std::vector<std::string> keys(pairs.size());
  std::vector<size_t> misses;
  std::vector<TextPair> miss_pairs;
  for (size_t i = 0; i < pairs.size(); ++i) {
    keys[i] = FeatureCache::Key(scorer, pairs[i].candidate, pairs[i].source);
    if (auto hit = cache_.Lookup(keys[i])) {
      scores[i] = *hit;
    } else {
      misses.push_back(i);
      miss_pairs.push_back(pairs[i]);
    }
  }
  if (misses.empty()) return scores;
  const auto fresh = inner_.Score(miss_pairs);
  if (fresh.size() != misses.size()) {
    throw InvariantError("scorer returned a short batch");
  }
  for (size_t m = 0; m < misses.size(); ++m) {
    scores[misses[m]] = fresh[m];
    cache_.Store(keys[misses[m]], fresh[m]);
  }
  return scores;
}

std::vector<double> ScoreBatch(SemanticScorer& scorer,
                               std::span<const TextPair> pairs) {
  if (pairs.empty()) throw ParameterError("score batch is empty");
  return scorer.Score(pairs);
}

}  // namespace summrank
