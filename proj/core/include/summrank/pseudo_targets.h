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

#ifndef SUMMRANK_PSEUDO_TARGETS_H_
#define SUMMRANK_PSEUDO_TARGETS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/corpus.h"
#include "summrank/io.h"
#include "summrank/text.h"

namespace summrank {

enum class PseudoMethod { kRandom3, kLead3, kSalientR1, kSalientR2, kSalientRL };

// "random3", "lead3", "salient-r1", "salient-r2", "salient-rl".
std::string_view PseudoMethodName(PseudoMethod method);
// Throws ParameterError for unknown names.
PseudoMethod ParsePseudoMethod(std::string_view name);

struct PseudoTarget {
  std::string id;
  PseudoMethod method = PseudoMethod::kLead3;
  std::string text;
  // Strictly increasing source sentence positions.
  std::vector<size_t> sentence_indices;
};

inline constexpr double kDefaultSalientRatio = 0.30;

// The sentences at `indices`, joined with single spaces.
std::string JoinSentences(const SentenceList& doc,
                          const std::vector<size_t>& indices);

// First min(3, n) sentences.
PseudoTarget Lead3(const SentenceList& doc);
// min(3, n) sentences drawn without replacement, in document order.
PseudoTarget Random3(const SentenceList& doc, uint64_t seed);
// Each sentence is scored by ROUGE F1 against the concatenation of all the
// other sentences; the best max(1, ceil(ratio * n)) are kept, earlier
// sentences winning ties, and emitted in document order.
PseudoTarget Salient(const SentenceList& doc, PseudoMethod variant,
                     double ratio = kDefaultSalientRatio,
                     const TokenizerConfig& config = {});

struct PseudoTargetOptions {
  PseudoMethod method = PseudoMethod::kLead3;
  uint64_t seed = 7;
  double salient_ratio = kDefaultSalientRatio;
};

// One pseudo-target per document. Random-3 draws use a per-document seed
// derived from the run seed and the document id.
std::vector<PseudoTarget> BuildPseudoTargets(const Corpus& corpus,
                                             const PseudoTargetOptions& options,
                                             const TokenizerConfig& config,
                                             int threads = 1);

// JSONL: provenance line, then {"id","method","text","sentence_indices"}.
std::string SerializePseudoTargets(const std::vector<PseudoTarget>& targets,
                                   const Provenance& provenance);
std::vector<PseudoTarget> ParsePseudoTargets(std::string_view jsonl);
void WritePseudoTargets(const std::filesystem::path& path,
                        const std::vector<PseudoTarget>& targets,
                        const Provenance& provenance);
std::vector<PseudoTarget> ReadPseudoTargets(const std::filesystem::path& path);

}  // namespace summrank

#endif  // SUMMRANK_PSEUDO_TARGETS_H_
