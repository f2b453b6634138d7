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

#ifndef SUMMRANK_CORPUS_H_
#define SUMMRANK_CORPUS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace summrank {

struct Document {
  std::string id;
  std::string source;
  // Generation order; index 0 is the generator's top candidate.
  std::vector<std::string> candidates;
  std::optional<std::string> reference;
  // One label per candidate when candidates were pooled from several
  // decoding runs; empty otherwise.
  std::vector<std::string> candidate_origin;
};

struct Corpus {
  std::vector<Document> documents;

  size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  // True when every document carries a reference.
  bool HasReferences() const;
};

// Parses corpus JSONL. Blank lines are ignored. Throws ValidationError naming
// the line number and document id of the first invalid record.
Corpus ParseCorpus(std::string_view jsonl);
Corpus ReadCorpus(const std::filesystem::path& path);

std::string SerializeCorpus(const Corpus& corpus);
void WriteCorpus(const std::filesystem::path& path, const Corpus& corpus);

// Concatenates the candidate pools of corpora that cover the same documents
// (same ids and sources), in the order of the first corpus. Candidates keep
// their own origin labels when present, otherwise take `labels[i]`.
Corpus PoolCorpora(const std::vector<Corpus>& corpora,
                   const std::vector<std::string>& labels);

}  // namespace summrank

#endif  // SUMMRANK_CORPUS_H_
