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

#ifndef SUMMRANK_TEXT_H_
#define SUMMRANK_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace summrank {

// Settings shared by every component that turns text into tokens.
struct TokenizerConfig {
  bool stem = false;
  bool remove_stopwords = false;
  // Lowercase abbreviations, without the trailing period, that never end a
  // sentence ("dr", "e.g", ...).
  std::vector<std::string> abbreviations = DefaultAbbreviations();

  static std::vector<std::string> DefaultAbbreviations();
  bool operator==(const TokenizerConfig&) const = default;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source_text;

  size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

// Sentences are the trimmed byte spans [begin, end) of the original text.
struct SentenceList {
  std::vector<std::string> sentences;
  std::vector<std::pair<size_t, size_t>> offsets;

  size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// Multiset of n-grams. Keys are the n tokens joined by U+001F, which can
// never occur inside a token.
struct NgramMultiset {
  int n = 1;
  std::unordered_map<std::string, int> counts;

  // Sum of all counts.
  size_t total() const;
  static constexpr char kSeparator = '\x1f';
};

// NFKC-normalizes, lowercases and splits on non-alphanumeric code points.
// Optional stopword removal and Porter stemming are applied last.
TokenSequence Tokenize(std::string_view text, const TokenizerConfig& config = {});

// Rule-based segmentation: a sentence ends at . ! or ? (plus closing quotes
// or brackets) followed by whitespace and an uppercase letter or an opening
// quote, unless the word before the period is a known abbreviation. Line
// breaks always end a sentence.
SentenceList SplitSentences(std::string_view text,
                            const TokenizerConfig& config = {});

// Sliding-window n-grams; throws ParameterError unless 1 <= n <= 4.
NgramMultiset Ngrams(const std::vector<std::string>& tokens, int n);
inline NgramMultiset Ngrams(const TokenSequence& tokens, int n) {
  return Ngrams(tokens.tokens, n);
}

// Splits an NgramMultiset key back into its tokens.
std::vector<std::string> NgramTokens(std::string_view key);

// Porter (1980) suffix stripping. Words that are not lowercase ASCII
// letters are returned unchanged.
std::string PorterStem(std::string_view word);

bool IsStopword(std::string_view token);

}  // namespace summrank

#endif  // SUMMRANK_TEXT_H_
