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

#include "summrank/features.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/metrics.h"
#include "summrank/parallel.h"

namespace summrank {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kSemanticSuffix = "_src";

bool IsOverlapId(std::string_view id) {
  return id == kRouge1Feature || id == kRouge2Feature || id == kBleuFeature;
}

ordered_json MatrixJson(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.Row(r).begin(), m.Row(r).end()));
  }
  return rows;
}

Matrix MatrixFromJson(const json& rows, size_t k, size_t d) {
  if (!rows.is_array() || rows.size() != k) {
    throw ValidationError("feature matrix row count does not match k");
  }
  Matrix m(k, d);
  for (size_t r = 0; r < k; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || row.size() != d) {
      throw ValidationError("feature row width does not match the spec");
    }
    for (size_t c = 0; c < d; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace

FeatureSpec FeatureSpec::Standard(const std::vector<std::string>& scorer_names) {
  FeatureSpec spec;
  for (auto id : {kRouge1Feature, kRouge2Feature, kBleuFeature}) {
    spec.ids.emplace_back(id);
    spec.groups.push_back(FeatureGroup::kOverlap);
  }
  for (const auto& name : scorer_names) {
    spec.ids.push_back(name + std::string(kSemanticSuffix));
    spec.groups.push_back(FeatureGroup::kSemantic);
  }
  for (auto id : {kDiversityFeature, kLengthFeature}) {
    spec.ids.emplace_back(id);
    spec.groups.push_back(FeatureGroup::kQuality);
  }
  return spec;
}

FeatureSpec FeatureSpec::FromIds(const std::vector<std::string>& ids) {
  std::vector<std::string> scorers;
  for (const auto& id : ids) {
    if (IsOverlapId(id) || id == kDiversityFeature || id == kLengthFeature) {
      continue;
    }
    if (id.size() <= kSemanticSuffix.size() ||
        !id.ends_with(kSemanticSuffix)) {
      throw ValidationError("unknown feature id \"" + id + "\"");
    }
    scorers.push_back(id.substr(0, id.size() - kSemanticSuffix.size()));
  }
  FeatureSpec spec = Standard(scorers);
  if (spec.ids != ids) {
    throw ValidationError("feature ids are not in the standard order");
  }
  return spec;
}

std::vector<size_t> FeatureSpec::IndicesOf(FeatureGroup group) const {
  std::vector<size_t> indices;
  for (size_t i = 0; i < groups.size(); ++i) {
    if (groups[i] == group) indices.push_back(i);
  }
  return indices;
}

size_t FeatureSpec::IndexOf(std::string_view id) const {
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) {
    throw ParameterError("no feature named \"" + std::string(id) + "\"");
  }
  return static_cast<size_t>(it - ids.begin());
}

std::string_view NormalizationName(Normalization mode) {
  return mode == Normalization::kNone ? "none" : "per_instance_minmax";
}

Normalization ParseNormalization(std::string_view name) {
  if (name == "none") return Normalization::kNone;
  if (name == "per_instance_minmax") return Normalization::kPerInstanceMinMax;
  throw ParameterError("unknown normalization \"" + std::string(name) +
                       "\" (expected none or per_instance_minmax)");
}

Matrix Normalize(const Matrix& raw, Normalization mode) {
  if (mode == Normalization::kNone) return raw;
  Matrix out(raw.rows(), raw.cols());
  for (size_t c = 0; c < raw.cols(); ++c) {
    double lo = raw(0, c);
    double hi = raw(0, c);
    for (size_t r = 1; r < raw.rows(); ++r) {
      lo = std::min(lo, raw(r, c));
      hi = std::max(hi, raw(r, c));
    }
    const double span = hi - lo;
    for (size_t r = 0; r < raw.rows(); ++r) {
      out(r, c) = span > 0.0 ? (raw(r, c) - lo) / span : 0.5;
    }
  }
  return out;
}

FeatureMatrix Normalize(const FeatureMatrix& matrix, Normalization mode) {
  FeatureMatrix out = matrix;
  out.normalization = mode;
  for (auto& doc : out.documents) doc.normalized = Normalize(doc.raw, mode);
  return out;
}

double MeanCandidateLength(const Corpus& corpus, const TokenizerConfig& config) {
  double total = 0.0;
  size_t count = 0;
  for (const auto& doc : corpus.documents) {
    for (const auto& candidate : doc.candidates) {
      total += static_cast<double>(Tokenize(candidate, config).size());
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

FeatureMatrix ComputeFeatures(const Corpus& corpus, const FeatureSpec& spec,
                              std::span<SemanticScorer* const> scorers,
                              const TokenizerConfig& config,
                              const FeatureOptions& options) {
  const auto semantic = spec.IndicesOf(FeatureGroup::kSemantic);
  if (semantic.size() != scorers.size()) {
    throw ParameterError("feature spec lists " + std::to_string(semantic.size()) +
                         " semantic features but " +
                         std::to_string(scorers.size()) + " scorers were given");
  }
  for (const auto& doc : corpus.documents) {
    if (doc.candidates.empty()) {
      throw ValidationError("document \"" + doc.id + "\" has zero candidates");
    }
  }

  FeatureMatrix matrix;
  matrix.spec = spec;
  matrix.normalization = options.normalization;
  matrix.mu_len = options.mu_len ? *options.mu_len
                                 : MeanCandidateLength(corpus, config);
  if (matrix.mu_len < 0.0 || !std::isfinite(matrix.mu_len)) {
    throw ParameterError("mean length must be finite and non-negative");
  }
  matrix.documents.resize(corpus.size());

  const size_t d = spec.size();
  ParallelFor(corpus.size(), options.threads, [&](size_t i) {
    const Document& doc = corpus.documents[i];
    const auto source = Tokenize(doc.source, config).tokens;
    const auto source_unigrams = Ngrams(source, 1);
    const auto source_bigrams = Ngrams(source, 2);
    const auto source_bleu = BleuReference::From(source);

    DocumentFeatures& out = matrix.documents[i];
    out.id = doc.id;
    out.raw = Matrix(doc.candidates.size(), d);
    for (size_t r = 0; r < doc.candidates.size(); ++r) {
      const auto tokens = Tokenize(doc.candidates[r], config).tokens;
      for (size_t c = 0; c < d; ++c) {
        const std::string& id = spec.ids[c];
        if (id == kRouge1Feature) {
          out.raw(r, c) = RougeN(Ngrams(tokens, 1), source_unigrams).f1;
        } else if (id == kRouge2Feature) {
          out.raw(r, c) = RougeN(Ngrams(tokens, 2), source_bigrams).f1;
        } else if (id == kBleuFeature) {
          out.raw(r, c) = Bleu(tokens, source_bleu);
        } else if (id == kDiversityFeature) {
          out.raw(r, c) = Diversity(tokens).value;
        } else if (id == kLengthFeature) {
          out.raw(r, c) = ComputeLengthScore(tokens.size(), matrix.mu_len).value;
        }
      }
    }
  });

  std::vector<TextPair> pairs;
  for (const auto& doc : corpus.documents) {
    for (const auto& candidate : doc.candidates) {
      pairs.push_back(TextPair{candidate, doc.source});
    }
  }
  for (size_t s = 0; s < scorers.size(); ++s) {
    const auto scores = ScoreBatch(*scorers[s], pairs);
    if (scores.size() != pairs.size()) {
      throw InvariantError("scorer returned the wrong number of scores");
    }
    size_t next = 0;
    for (auto& doc : matrix.documents) {
      for (size_t r = 0; r < doc.raw.rows(); ++r) {
        if (!std::isfinite(scores[next])) {
          throw ProtocolError("scorer " + scorers[s]->id().ToString() +
                              " produced a non-finite score");
        }
        doc.raw(r, semantic[s]) = scores[next++];
      }
    }
  }

  for (auto& doc : matrix.documents) {
    doc.normalized = Normalize(doc.raw, options.normalization);
  }
  return matrix;
}

std::string SerializeFeatures(const FeatureMatrix& matrix,
                              const Provenance& provenance) {
  std::string out = ProvenanceLine(provenance);
  out.push_back('\n');
  for (const auto& doc : matrix.documents) {
    ordered_json record;
    record["id"] = doc.id;
    record["k"] = doc.raw.rows();
    record["features"] = MatrixJson(doc.normalized);
    record["raw_features"] = MatrixJson(doc.raw);
    record["spec"] = matrix.spec.ids;
    record["mu_len"] = matrix.mu_len;
    record["normalization"] = NormalizationName(matrix.normalization);
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

FeatureMatrix ParseFeatures(std::string_view jsonl) {
  FeatureMatrix matrix;
  bool first = true;
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
      const auto ids = record.at("spec").get<std::vector<std::string>>();
      const auto mode = ParseNormalization(
          record.value("normalization", std::string("per_instance_minmax")));
      const double mu_len = record.at("mu_len").get<double>();
      if (first) {
        matrix.spec = FeatureSpec::FromIds(ids);
        matrix.normalization = mode;
        matrix.mu_len = mu_len;
        first = false;
      } else if (ids != matrix.spec.ids || mode != matrix.normalization ||
                 mu_len != matrix.mu_len) {
        throw ValidationError("records disagree on spec, normalization or mu_len");
      }
      DocumentFeatures doc;
      doc.id = record.at("id").get<std::string>();
      const size_t k = record.at("k").get<size_t>();
      if (k == 0) throw ValidationError("document has zero candidates");
      doc.normalized = MatrixFromJson(record.at("features"), k, ids.size());
      doc.raw = MatrixFromJson(record.at("raw_features"), k, ids.size());
      matrix.documents.push_back(std::move(doc));
    } catch (const json::exception& e) {
      throw ValidationError("feature file line " + std::to_string(line_number) +
                            ": " + e.what());
    } catch (const Error& e) {
      throw ValidationError("feature file line " + std::to_string(line_number) +
                            ": " + e.what());
    }
  }
  if (first) throw ValidationError("feature file has no records");
  return matrix;
}

void WriteFeatures(const std::filesystem::path& path,
                   const FeatureMatrix& matrix, const Provenance& provenance) {
  WriteFileAtomic(path, SerializeFeatures(matrix, provenance));
}

FeatureMatrix ReadFeatures(const std::filesystem::path& path) {
  return ParseFeatures(ReadFile(path));
}

}  // namespace summrank
