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

#include "summrank/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <string>

#include "summrank/errors.h"

namespace summrank {
namespace {

bool IsAscii(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char AsciiLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// ASCII text is already NFKC, so the common case never touches ICU.
void SplitAscii(std::string_view text, std::vector<std::string>& out) {
  std::string current;
  for (char c : text) {
    if (IsAsciiAlnum(c)) {
      current.push_back(AsciiLower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
}

void SplitUnicode(std::string_view text, std::vector<std::string>& out) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized =
      U_SUCCESS(status) ? nfkc->normalize(input, status) : input;
  if (U_FAILURE(status)) normalized = input;

  icu::UnicodeString current;
  auto flush = [&]() {
    if (current.isEmpty()) return;
    std::string token;
    current.toUTF8String(token);
    out.push_back(std::move(token));
    current.remove();
  };
  for (int32_t i = 0; i < normalized.length();) {
    const UChar32 cp = normalized.char32At(i);
    i = normalized.moveIndex32(i, 1);
    if (u_isalnum(cp)) {
      current.append(u_tolower(cp));
    } else {
      flush();
    }
  }
  flush();
}

// Decodes the code point starting at byte `i`; returns -1 on malformed input.
UChar32 CodePointAt(std::string_view text, size_t i, size_t* next) {
  int32_t offset = static_cast<int32_t>(i);
  UChar32 cp;
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), offset,
          static_cast<int32_t>(text.size()), cp);
  *next = static_cast<size_t>(offset);
  return cp;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

bool IsTerminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Closing quotes and brackets that may trail a terminator.
size_t ClosingLength(std::string_view text, size_t i) {
  const char c = text[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  // U+201D and U+2019.
  if (text.substr(i, 3) == "\xE2\x80\x9D" || text.substr(i, 3) == "\xE2\x80\x99")
    return 3;
  return 0;
}

bool StartsSentence(std::string_view text, size_t i) {
  const char c = text[i];
  if (c == '"' || c == '\'' || c == '(' || c == '[') return true;
  if (text.substr(i, 3) == "\xE2\x80\x9C" || text.substr(i, 3) == "\xE2\x80\x98")
    return true;
  size_t next;
  const UChar32 cp = CodePointAt(text, i, &next);
  return cp >= 0 && u_isupper(cp);
}

// The word ending right before byte `period`, lowercased, with leading
// quotes or brackets stripped.
std::string WordBefore(std::string_view text, size_t line_begin, size_t period) {
  size_t begin = period;
  while (begin > line_begin && !IsSpace(text[begin - 1])) --begin;
  std::string word(text.substr(begin, period - begin));
  const auto first = word.find_first_not_of("\"'([");
  word = first == std::string::npos ? std::string() : word.substr(first);
  std::transform(word.begin(), word.end(), word.begin(), AsciiLower);
  return word;
}

void SplitLine(std::string_view text, size_t line_begin, size_t line_end,
               const TokenizerConfig& config, SentenceList& out) {
  auto emit = [&](size_t begin, size_t end) {
    while (end > begin && IsSpace(text[end - 1])) --end;
    if (end <= begin) return;
    out.sentences.emplace_back(text.substr(begin, end - begin));
    out.offsets.emplace_back(begin, end);
  };
  auto skip_space = [&](size_t i) {
    while (i < line_end && IsSpace(text[i])) ++i;
    return i;
  };

  size_t start = skip_space(line_begin);
  size_t i = start;
  while (i < line_end) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < line_end && IsTerminal(text[j])) ++j;
    const bool single_period = text[i] == '.' && j == i + 1;
    while (j < line_end) {
      const size_t len = ClosingLength(text, j);
      if (len == 0 || j + len > line_end) break;
      j += len;
    }
    if (j < line_end && IsSpace(text[j])) {
      const size_t k = skip_space(j);
      if (k < line_end && StartsSentence(text, k)) {
        const bool abbreviation =
            single_period &&
            std::find(config.abbreviations.begin(), config.abbreviations.end(),
                      WordBefore(text, line_begin, i)) !=
                config.abbreviations.end();
        if (!abbreviation) {
          emit(start, j);
          start = k;
          i = k;
          continue;
        }
      }
    }
    i = j;
  }
  emit(start, line_end);
}

constexpr std::array<std::string_view, 127> kStopwords = {
    "a",       "about",   "above",  "after",   "again",   "against", "all",
    "am",      "an",      "and",    "any",     "are",     "as",      "at",
    "be",      "because", "been",   "before",  "being",   "below",   "between",
    "both",    "but",     "by",     "can",     "could",   "did",     "do",
    "does",    "doing",   "down",   "during",  "each",    "few",     "for",
    "from",    "further", "had",    "has",     "have",    "having",  "he",
    "her",     "here",    "hers",   "herself", "him",     "himself", "his",
    "how",     "i",       "if",     "in",      "into",    "is",      "it",
    "its",     "itself",  "just",   "me",      "more",    "most",    "my",
    "myself",  "no",      "nor",    "not",     "now",     "of",      "off",
    "on",      "once",    "only",   "or",      "other",   "our",     "ours",
    "ourselves", "out",   "over",   "own",     "s",       "same",    "she",
    "should",  "so",      "some",   "such",    "t",       "than",    "that",
    "the",     "their",   "theirs", "them",    "themselves", "then", "there",
    "these",   "they",    "this",   "those",   "through", "to",      "too",
    "under",   "until",   "up",     "very",    "was",     "we",      "were",
    "what",    "when",    "where",  "which",   "while",   "who",     "whom",
    "why",     "will",    "with",   "would",   "you",     "your",    "yours",
    "yourself"};

}  // namespace

std::vector<std::string> TokenizerConfig::DefaultAbbreviations() {
  return {"mr",   "mrs",  "ms",   "dr",  "prof", "sr",   "jr",   "st",
          "mt",   "vs",   "etc",  "e.g", "i.e",  "inc",  "ltd",  "co",
          "corp", "jan",  "feb",  "apr", "jun",  "jul",  "aug",  "sep",
          "sept", "oct",  "nov",  "dec", "gen",  "gov",  "sen",  "rep",
          "lt",   "col",  "capt", "sgt", "fig",  "approx", "u.s", "u.k",
          "a.m",  "p.m",  "dept", "vol"};
}

size_t NgramMultiset::total() const {
  size_t sum = 0;
  for (const auto& [key, count] : counts) sum += static_cast<size_t>(count);
  return sum;
}

bool IsStopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

TokenSequence Tokenize(std::string_view text, const TokenizerConfig& config) {
  TokenSequence result;
  result.source_text = std::string(text);
  if (IsAscii(text)) {
    SplitAscii(text, result.tokens);
  } else {
    SplitUnicode(text, result.tokens);
  }
  if (config.remove_stopwords) {
    std::erase_if(result.tokens,
                  [](const std::string& t) { return IsStopword(t); });
  }
  if (config.stem) {
    for (auto& token : result.tokens) token = PorterStem(token);
  }
  return result;
}

SentenceList SplitSentences(std::string_view text,
                            const TokenizerConfig& config) {
  SentenceList result;
  size_t line_begin = 0;
  while (line_begin <= text.size()) {
    size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = text.size();
    SplitLine(text, line_begin, line_end, config, result);
    line_begin = line_end + 1;
  }
  return result;
}

NgramMultiset Ngrams(const std::vector<std::string>& tokens, int n) {
  if (n < 1 || n > 4) {
    throw ParameterError("n-gram order must be in [1, 4], got " +
                         std::to_string(n));
  }
  NgramMultiset result;
  result.n = n;
  const size_t order = static_cast<size_t>(n);
  if (tokens.size() < order) return result;
  result.counts.reserve(tokens.size());
  std::string key;
  for (size_t i = 0; i + order <= tokens.size(); ++i) {
    key.clear();
    for (size_t j = 0; j < order; ++j) {
      if (j > 0) key.push_back(NgramMultiset::kSeparator);
      key += tokens[i + j];
    }
    ++result.counts[key];
  }
  return result;
}

std::vector<std::string> NgramTokens(std::string_view key) {
  std::vector<std::string> tokens;
  size_t begin = 0;
  while (true) {
    const size_t end = key.find(NgramMultiset::kSeparator, begin);
    tokens.emplace_back(key.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return tokens;
}

}  // namespace summrank
