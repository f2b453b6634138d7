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

#ifndef SUMMRANK_FEATURES_H_
#define SUMMRANK_FEATURES_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/corpus.h"
#include "summrank/io.h"
#include "summrank/semantic.h"
#include "summrank/text.h"

namespace summrank {

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double& operator()(size_t r, size_t c) { return values_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return values_[r * cols_ + c]; }
  std::span<const double> Row(size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

enum class FeatureGroup { kOverlap, kSemantic, kQuality };

inline constexpr std::string_view kRouge1Feature = "rouge1_src";
inline constexpr std::string_view kRouge2Feature = "rouge2_src";
inline constexpr std::string_view kBleuFeature = "bleu_src";
inline constexpr std::string_view kDiversityFeature = "diversity";
inline constexpr std::string_view kLengthFeature = "length";

// Ordered feature ids with their group. The order is overlap features, then
// one semantic feature per scorer, then diversity and length.
struct FeatureSpec {
  std::vector<std::string> ids;
  std::vector<FeatureGroup> groups;

  // Semantic feature ids are "<scorer name>_src".
  static FeatureSpec Standard(const std::vector<std::string>& scorer_names);
  // Rebuilds a spec from ids alone; throws ValidationError on unknown layout.
  static FeatureSpec FromIds(const std::vector<std::string>& ids);

  size_t size() const { return ids.size(); }
  std::vector<size_t> IndicesOf(FeatureGroup group) const;
  // Throws ParameterError when absent.
  size_t IndexOf(std::string_view id) const;
  bool operator==(const FeatureSpec&) const = default;
};

enum class Normalization { kNone, kPerInstanceMinMax };

std::string_view NormalizationName(Normalization mode);
Normalization ParseNormalization(std::string_view name);

struct DocumentFeatures {
  std::string id;
  Matrix raw;         // k x d
  Matrix normalized;  // k x d
};

struct FeatureMatrix {
  FeatureSpec spec;
  Normalization normalization = Normalization::kPerInstanceMinMax;
  double mu_len = 0.0;
  std::vector<DocumentFeatures> documents;
};

// Per-column min-max map to [0, 1] within one document; constant columns
// become 0.5. kNone returns the input unchanged.
Matrix Normalize(const Matrix& raw, Normalization mode);
FeatureMatrix Normalize(const FeatureMatrix& matrix, Normalization mode);

// Mean candidate length in tokens over the whole corpus.
double MeanCandidateLength(const Corpus& corpus, const TokenizerConfig& config);

struct FeatureOptions {
  Normalization normalization = Normalization::kPerInstanceMinMax;
  // Defaults to MeanCandidateLength(corpus).
  std::optional<double> mu_len;
  int threads = 1;
};

// `scorers` must line up with the semantic ids of `spec`. Overlap features
// compare each candidate with its source; quality features look at the
// candidate alone.
FeatureMatrix ComputeFeatures(const Corpus& corpus, const FeatureSpec& spec,
                              std::span<SemanticScorer* const> scorers,
                              const TokenizerConfig& config,
                              const FeatureOptions& options = {});

// JSONL: provenance line, then one record per document with "id", "k",
// "features", "raw_features", "spec", "mu_len" and "normalization".
std::string SerializeFeatures(const FeatureMatrix& matrix,
                              const Provenance& provenance);
FeatureMatrix ParseFeatures(std::string_view jsonl);
void WriteFeatures(const std::filesystem::path& path,
                   const FeatureMatrix& matrix, const Provenance& provenance);
FeatureMatrix ReadFeatures(const std::filesystem::path& path);

}  // namespace summrank

#endif  // SUMMRANK_FEATURES_H_
