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

#include "summrank/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "summrank/errors.h"

namespace summrank {
namespace {

double Ratio(double numerator, double denominator) {
  return denominator > 0.0 ? numerator / denominator : 0.0;
}

size_t Overlap(const NgramMultiset& a, const NgramMultiset& b) {
  const NgramMultiset& small = a.counts.size() <= b.counts.size() ? a : b;
  const NgramMultiset& large = &small == &a ? b : a;
  size_t overlap = 0;
  for (const auto& [key, count] : small.counts) {
    const auto it = large.counts.find(key);
    if (it != large.counts.end()) {
      overlap += static_cast<size_t>(std::min(count, it->second));
    }
  }
  return overlap;
}

using LcsTable = std::vector<std::vector<int>>;

LcsTable BuildLcsTable(const std::vector<std::string>& ref,
                       const std::vector<std::string>& can) {
  LcsTable table(ref.size() + 1, std::vector<int>(can.size() + 1, 0));
  for (size_t i = 1; i <= ref.size(); ++i) {
    for (size_t j = 1; j <= can.size(); ++j) {
      table[i][j] = ref[i - 1] == can[j - 1]
                        ? table[i - 1][j - 1] + 1
                        : std::max(table[i - 1][j], table[i][j - 1]);
    }
  }
  return table;
}

// Reference positions of one LCS; on ties the walk moves up in the
// reference before left in the candidate.
std::vector<size_t> LcsReferencePositions(const std::vector<std::string>& ref,
                                          const std::vector<std::string>& can) {
  const LcsTable table = BuildLcsTable(ref, can);
  std::vector<size_t> positions;
  size_t i = ref.size();
  size_t j = can.size();
  while (i > 0 && j > 0) {
    if (ref[i - 1] == can[j - 1]) {
      positions.push_back(i - 1);
      --i;
      --j;
    } else if (table[i][j - 1] > table[i - 1][j]) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(positions.begin(), positions.end());
  return positions;
}

}  // namespace

Prf Prf::FromPrecisionRecall(double precision, double recall) {
  Prf prf;
  prf.precision = precision;
  prf.recall = recall;
  prf.f1 = precision + recall > 0.0
               ? 2.0 * precision * recall / (precision + recall)
               : 0.0;
  return prf;
}

Prf RougeN(const NgramMultiset& candidate, const NgramMultiset& reference) {
  const double overlap = static_cast<double>(Overlap(candidate, reference));
  return Prf::FromPrecisionRecall(
      Ratio(overlap, static_cast<double>(candidate.total())),
      Ratio(overlap, static_cast<double>(reference.total())));
}

Prf RougeN(const TokenSequence& candidate, const TokenSequence& reference,
           int n) {
  return RougeN(Ngrams(candidate, n), Ngrams(reference, n));
}

size_t LcsLength(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> previous(b.size() + 1, 0);
  std::vector<size_t> current(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      current[j] = a[i - 1] == b[j - 1] ? previous[j - 1] + 1
                                        : std::max(previous[j], current[j - 1]);
    }
    std::swap(previous, current);
  }
  return previous[b.size()];
}

Prf RougeL(const std::vector<std::string>& candidate,
           const std::vector<std::string>& reference) {
  const double lcs = static_cast<double>(LcsLength(candidate, reference));
  return Prf::FromPrecisionRecall(
      Ratio(lcs, static_cast<double>(candidate.size())),
      Ratio(lcs, static_cast<double>(reference.size())));
}

Prf RougeLsum(const SentenceTokens& candidate, const SentenceTokens& reference) {
  size_t candidate_len = 0;
  size_t reference_len = 0;
  std::unordered_map<std::string, int> candidate_counts;
  std::unordered_map<std::string, int> reference_counts;
  for (const auto& sentence : candidate) {
    candidate_len += sentence.size();
    for (const auto& token : sentence) ++candidate_counts[token];
  }
  for (const auto& sentence : reference) {
    reference_len += sentence.size();
    for (const auto& token : sentence) ++reference_counts[token];
  }
  if (candidate_len == 0 || reference_len == 0) return Prf{};

  size_t hits = 0;
  std::vector<char> in_union;
  for (const auto& ref_sentence : reference) {
    in_union.assign(ref_sentence.size(), 0);
    for (const auto& cand_sentence : candidate) {
      for (size_t pos : LcsReferencePositions(ref_sentence, cand_sentence)) {
        in_union[pos] = 1;
      }
    }
    for (size_t pos = 0; pos < ref_sentence.size(); ++pos) {
      if (!in_union[pos]) continue;
      const std::string& token = ref_sentence[pos];
      int& c = candidate_counts[token];
      int& r = reference_counts[token];
      if (c > 0 && r > 0) {
        ++hits;
        --c;
        --r;
      }
    }
  }
  return Prf::FromPrecisionRecall(
      static_cast<double>(hits) / static_cast<double>(candidate_len),
      static_cast<double>(hits) / static_cast<double>(reference_len));
}

Prf RougeLsum(const SentenceList& candidate, const SentenceList& reference,
              const TokenizerConfig& config) {
  auto tokenize_all = [&](const SentenceList& sentences) {
    SentenceTokens out;
    out.reserve(sentences.size());
    for (const auto& s : sentences.sentences) {
      out.push_back(Tokenize(s, config).tokens);
    }
    return out;
  };
  return RougeLsum(tokenize_all(candidate), tokenize_all(reference));
}

RougeText RougeText::From(std::string_view text, const TokenizerConfig& config) {
  RougeText result;
  result.tokens = Tokenize(text, config).tokens;
  for (const auto& sentence : SplitSentences(text, config).sentences) {
    result.sentences.push_back(Tokenize(sentence, config).tokens);
  }
  result.unigrams = Ngrams(result.tokens, 1);
  result.bigrams = Ngrams(result.tokens, 2);
  return result;
}

RougeScores ScoreRouge(const RougeText& candidate, const RougeText& reference) {
  RougeScores scores;
  scores.rouge1 = RougeN(candidate.unigrams, reference.unigrams);
  scores.rouge2 = RougeN(candidate.bigrams, reference.bigrams);
  scores.rouge_lsum = RougeLsum(candidate.sentences, reference.sentences);
  return scores;
}

double MeanRouge(std::string_view candidate, std::string_view reference,
                 const TokenizerConfig& config) {
  return ScoreRouge(RougeText::From(candidate, config),
                    RougeText::From(reference, config))
      .Mean();
}

BleuReference BleuReference::From(const std::vector<std::string>& tokens) {
  BleuReference reference;
  for (int n = 1; n <= 4; ++n) reference.ngrams[n - 1] = Ngrams(tokens, n);
  reference.length = tokens.size();
  return reference;
}

double Bleu(const std::vector<std::string>& candidate,
            const BleuReference& reference) {
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= 4; ++n) {
    if (candidate.size() < static_cast<size_t>(n)) break;
    const NgramMultiset cand = Ngrams(candidate, n);
    const double total = static_cast<double>(cand.total());
    const double matches =
        static_cast<double>(Overlap(cand, reference.ngrams[n - 1]));
    const double precision =
        matches > 0.0 ? matches / total : 1.0 / (total + 1.0);
    log_sum += std::log(precision);
    ++orders;
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.length);
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return brevity * std::exp(log_sum / orders);
}

double Bleu(const TokenSequence& candidate, const TokenSequence& reference) {
  return Bleu(candidate.tokens, BleuReference::From(reference.tokens));
}

DiversityScore Diversity(const std::vector<std::string>& tokens) {
  DiversityScore score;
  double sum = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const NgramMultiset grams = Ngrams(tokens, n);
    const size_t total = grams.total();
    const double ratio =
        total == 0 ? 1.0
                   : static_cast<double>(grams.counts.size()) /
                         static_cast<double>(total);
    score.per_order[n - 1] = ratio;
    sum += ratio;
  }
  score.value = sum / 3.0;
  return score;
}

LengthScore ComputeLengthScore(size_t candidate_len, double mu_len) {
  if (mu_len < 0.0 || !std::isfinite(mu_len)) {
    throw ParameterError("mean length must be finite and non-negative");
  }
  LengthScore score;
  score.candidate_len = candidate_len;
  score.mu_len = mu_len;
  score.value =
      1.0 / std::max(1.0, std::abs(static_cast<double>(candidate_len) - mu_len));
  return score;
}

}  // namespace summrank
