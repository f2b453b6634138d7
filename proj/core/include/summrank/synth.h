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

#ifndef SUMMRANK_SYNTH_H_
#define SUMMRANK_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/corpus.h"

namespace summrank {

// What the generator hides in each candidate pool.
//   bleu-oracle: one candidate is the verbatim lead-3 extract, so it has the
//                highest BLEU against the source and is closest to LEAD-3.
//   lead-bias:   one candidate is a lightly edited lead-3 extract; the
//                distractors include verbatim later extracts, so the planted
//                candidate is closest to LEAD-3 but need not win on overlap.
//   uniform:     every candidate is the same text; nothing is planted.
enum class Plant { kBleuOracle, kLeadBias, kUniform };

std::string_view PlantName(Plant plant);
Plant ParsePlant(std::string_view name);

struct SynthOptions {
  uint64_t seed = 7;
  size_t n_docs = 20;
  size_t k = 5;
  size_t vocab = 40;
  Plant plant = Plant::kBleuOracle;
};

struct SynthCorpus {
  Corpus corpus;
  // Planted candidate index per document, empty for the uniform plant.
  std::vector<std::optional<size_t>> planted;
};

// Documents have 5 to 12 sentences of 4 to 10 tokens. Every planted pool is
// checked with the real metrics before it is accepted. Throws
// ParameterError for n_docs < 1, k < 2 or vocab < 8.
SynthCorpus GenerateSynthetic(const SynthOptions& options);

// plant.jsonl: {"id", "planted_index"} per document (null when unplanted).
std::string SerializePlants(const SynthCorpus& synth);
std::map<std::string, std::optional<size_t>> ParsePlants(std::string_view jsonl);
void WriteSynthetic(const std::filesystem::path& corpus_path,
                    const std::filesystem::path& plant_path,
                    const SynthCorpus& synth);

}  // namespace summrank

#endif  // SUMMRANK_SYNTH_H_
