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

#ifndef SUMMRANK_SELFTRAIN_H_
#define SUMMRANK_SELFTRAIN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "summrank/corpus.h"
#include "summrank/io.h"
#include "summrank/reranker.h"
#include "summrank/text.h"

namespace summrank {

// 1 - mean novel n-gram fraction (n = 1..3) of the candidate against the
// source. Orders the candidate is too short for are left out; an empty
// candidate scores 0.
double Extractiveness(std::string_view candidate, std::string_view source,
                      const TokenizerConfig& config = {});

struct PseudoLabelRecord {
  std::string id;
  std::string target;
  double extractiveness = 0.0;
  bool paraphrase = false;
};

struct LabelStats {
  size_t records = 0;
  size_t flagged = 0;
  double fraction = 1.0;
  double mean_extractiveness = 0.0;
};

// Extra fields written next to the provenance line of labels.jsonl.
struct LabelMetadata {
  std::string coefficients_digest;
  uint64_t seed = 0;
};

struct LabelExport {
  std::vector<PseudoLabelRecord> records;  // sorted by id
  LabelStats stats;
};

// ceil(x * n), with a small guard so that exact products are not bumped up
// by floating-point noise. Throws ParameterError unless 0 < x <= 1.
size_t FlagCount(size_t n, double x);

// One record per document holding the selected candidate. The FlagCount
// most extractive records are flagged for paraphrasing; equal scores are
// ordered by id.
LabelExport ExportLabels(const Corpus& corpus,
                         const std::vector<Selection>& selections, double x,
                         const TokenizerConfig& config = {});

// JSONL: metadata line, then {"id","target","extractiveness","paraphrase"}.
std::string SerializeLabels(const LabelExport& labels,
                            const LabelMetadata& metadata,
                            const Provenance& provenance);
std::vector<PseudoLabelRecord> ParseLabels(std::string_view jsonl);
void WriteLabels(const std::filesystem::path& path, const LabelExport& labels,
                 const LabelMetadata& metadata, const Provenance& provenance);

}  // namespace summrank

#endif  // SUMMRANK_SELFTRAIN_H_
