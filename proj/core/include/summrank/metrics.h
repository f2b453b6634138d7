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

#ifndef SUMMRANK_METRICS_H_
#define SUMMRANK_METRICS_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/text.h"

namespace summrank {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  // f1 is 0 when precision + recall is 0, the harmonic mean otherwise.
  static Prf FromPrecisionRecall(double precision, double recall);
};

// Mean of the per-order unique/total n-gram ratios for orders 1..3.
struct DiversityScore {
  double value = 1.0;
  std::array<double, 3> per_order = {1.0, 1.0, 1.0};
};

struct LengthScore {
  double value = 1.0;
  size_t candidate_len = 0;
  double mu_len = 0.0;
};

// Clipped n-gram overlap. Empty denominators give zeros.
Prf RougeN(const NgramMultiset& candidate, const NgramMultiset& reference);
Prf RougeN(const TokenSequence& candidate, const TokenSequence& reference,
           int n);

// Longest common subsequence length of two token sequences.
size_t LcsLength(const std::vector<std::string>& a,
                 const std::vector<std::string>& b);

Prf RougeL(const std::vector<std::string>& candidate,
           const std::vector<std::string>& reference);
inline Prf RougeL(const TokenSequence& candidate,
                  const TokenSequence& reference) {
  return RougeL(candidate.tokens, reference.tokens);
}

using SentenceTokens = std::vector<std::vector<std::string>>;

// Summary-level ROUGE-L. For every reference sentence the union of its LCS
// positions against each candidate sentence is taken; a union token is a hit
// while both summaries still have unclaimed occurrences of it.
Prf RougeLsum(const SentenceTokens& candidate, const SentenceTokens& reference);
Prf RougeLsum(const SentenceList& candidate, const SentenceList& reference,
              const TokenizerConfig& config = {});

// Pre-tokenized text for repeated ROUGE evaluation against the same side.
struct RougeText {
  std::vector<std::string> tokens;
  SentenceTokens sentences;
  NgramMultiset unigrams;
  NgramMultiset bigrams;

  static RougeText From(std::string_view text, const TokenizerConfig& config);
};

struct RougeScores {
  Prf rouge1;
  Prf rouge2;
  Prf rouge_lsum;

  // Mean of the three F1 scores.
  double Mean() const { return (rouge1.f1 + rouge2.f1 + rouge_lsum.f1) / 3.0; }
};

RougeScores ScoreRouge(const RougeText& candidate, const RougeText& reference);

// Mean of ROUGE-1, ROUGE-2 and summary-level ROUGE-L F1.
double MeanRouge(std::string_view candidate, std::string_view reference,
                 const TokenizerConfig& config = {});

// Reference-side n-gram counts for sentence BLEU.
struct BleuReference {
  std::array<NgramMultiset, 4> ngrams;
  size_t length = 0;

  static BleuReference From(const std::vector<std::string>& tokens);
};

// Sentence BLEU up to 4-grams with uniform weights. An order with no
// candidate n-grams is skipped; an order with no matches uses
// (0 + 1) / (total + 1). Brevity penalty exp(1 - r/c) when c < r.
double Bleu(const std::vector<std::string>& candidate,
            const BleuReference& reference);
double Bleu(const TokenSequence& candidate, const TokenSequence& reference);

DiversityScore Diversity(const std::vector<std::string>& tokens);
inline DiversityScore Diversity(const TokenSequence& tokens) {
  return Diversity(tokens.tokens);
}

// 1 / max(1, |candidate_len - mu_len|).
LengthScore ComputeLengthScore(size_t candidate_len, double mu_len);

}  // namespace summrank

#endif  // SUMMRANK_METRICS_H_
