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

#include "summrank/corpus.h"

#include <set>
#include <unordered_map>

#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/io.h"

namespace summrank {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(size_t line, const std::string& id,
                       const std::string& message) {
  std::string where = "corpus line " + std::to_string(line);
  if (!id.empty()) where += " (id \"" + id + "\")";
  throw ValidationError(where + ": " + message);
}

Document ParseRecord(const json& record, size_t line) {
  if (!record.is_object()) Fail(line, "", "record is not a JSON object");
  Document doc;
  const auto id = record.find("id");
  if (id == record.end() || !id->is_string() ||
      id->get<std::string>().empty()) {
    Fail(line, "", "missing or empty string field \"id\"");
  }
  doc.id = id->get<std::string>();

  const auto source = record.find("source");
  if (source == record.end() || !source->is_string()) {
    Fail(line, doc.id, "missing string field \"source\"");
  }
  doc.source = source->get<std::string>();

  const auto candidates = record.find("candidates");
  if (candidates == record.end() || !candidates->is_array()) {
    Fail(line, doc.id, "missing array field \"candidates\"");
  }
  if (candidates->empty()) Fail(line, doc.id, "document has zero candidates");
  for (const auto& c : *candidates) {
    if (!c.is_string()) Fail(line, doc.id, "candidates must be strings");
    doc.candidates.push_back(c.get<std::string>());
  }

  const auto reference = record.find("reference");
  if (reference != record.end() && !reference->is_null()) {
    if (!reference->is_string()) Fail(line, doc.id, "reference must be a string");
    doc.reference = reference->get<std::string>();
  }

  const auto origin = record.find("candidate_origin");
  if (origin != record.end() && !origin->is_null()) {
    if (!origin->is_array() || origin->size() != doc.candidates.size()) {
      Fail(line, doc.id,
           "candidate_origin must be an array with one label per candidate");
    }
    for (const auto& o : *origin) {
      if (!o.is_string()) Fail(line, doc.id, "candidate_origin must hold strings");
      doc.candidate_origin.push_back(o.get<std::string>());
    }
  }
  return doc;
}

}  // namespace

bool Corpus::HasReferences() const {
  if (documents.empty()) return false;
  for (const auto& doc : documents) {
    if (!doc.reference) return false;
  }
  return true;
}

Corpus ParseCorpus(std::string_view jsonl) {
  Corpus corpus;
  std::set<std::string> seen;
  size_t line_number = 0;
  size_t begin = 0;
  while (begin < jsonl.size()) {
    size_t end = jsonl.find('\n', begin);
    if (end == std::string_view::npos) end = jsonl.size();
    ++line_number;
    const std::string_view line = jsonl.substr(begin, end - begin);
    begin = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(line_number, "", std::string("malformed JSON: ") + e.what());
    }
    Document doc = ParseRecord(record, line_number);
    if (!seen.insert(doc.id).second) {
      Fail(line_number, doc.id, "duplicate document id");
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw ValidationError("corpus is empty");
  return corpus;
}

Corpus ReadCorpus(const std::filesystem::path& path) {
  try {
    return ParseCorpus(ReadFile(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents) {
    nlohmann::ordered_json record;
    record["id"] = doc.id;
    record["source"] = doc.source;
    record["candidates"] = doc.candidates;
    if (doc.reference) record["reference"] = *doc.reference;
    if (!doc.candidate_origin.empty()) {
      record["candidate_origin"] = doc.candidate_origin;
    }
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

void WriteCorpus(const std::filesystem::path& path, const Corpus& corpus) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

Corpus PoolCorpora(const std::vector<Corpus>& corpora,
                   const std::vector<std::string>& labels) {
  if (corpora.empty()) throw ParameterError("nothing to pool");
  if (labels.size() != corpora.size()) {
    throw ParameterError("need one origin label per pooled corpus");
  }
  std::vector<std::unordered_map<std::string, const Document*>> by_id(
      corpora.size());
  for (size_t c = 0; c < corpora.size(); ++c) {
    for (const auto& doc : corpora[c].documents) by_id[c][doc.id] = &doc;
    if (corpora[c].size() != corpora[0].size()) {
      throw ValidationError("pooled corpora cover different document sets");
    }
  }

  Corpus pooled;
  for (const auto& first : corpora[0].documents) {
    Document doc;
    doc.id = first.id;
    doc.source = first.source;
    doc.reference = first.reference;
    for (size_t c = 0; c < corpora.size(); ++c) {
      const auto it = by_id[c].find(first.id);
      if (it == by_id[c].end()) {
        throw ValidationError("document \"" + first.id + "\" missing from " +
                              labels[c]);
      }
      const Document& part = *it->second;
      if (part.source != first.source) {
        throw ValidationError("document \"" + first.id +
                              "\" has different sources across pooled files");
      }
      for (size_t i = 0; i < part.candidates.size(); ++i) {
        doc.candidates.push_back(part.candidates[i]);
        doc.candidate_origin.push_back(part.candidate_origin.empty()
                                           ? labels[c]
                                           : part.candidate_origin[i]);
      }
    }
    pooled.documents.push_back(std::move(doc));
  }
  return pooled;
}

}  // namespace summrank
