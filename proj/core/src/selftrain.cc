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

#include "summrank/selftrain.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/evaluation.h"

namespace summrank {

double Extractiveness(std::string_view candidate, std::string_view source,
                      const TokenizerConfig& config) {
  const auto cand = Tokenize(candidate, config).tokens;
  if (cand.empty()) return 0.0;
  const auto src = Tokenize(source, config).tokens;
  double sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= 3; ++n) {
    if (auto f = NovelNgramFraction(cand, src, n)) {
      sum += *f;
      ++orders;
    }
  }
  return 1.0 - sum / orders;
}

size_t FlagCount(size_t n, double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw ParameterError("paraphrase fraction must be in (0, 1]");
  }
  if (n == 0) return 0;
  const double count = std::ceil(x * static_cast<double>(n) - 1e-9);
  return std::clamp(static_cast<size_t>(std::max(count, 1.0)), size_t{1}, n);
}

LabelExport ExportLabels(const Corpus& corpus,
                         const std::vector<Selection>& selections, double x,
                         const TokenizerConfig& config) {
  const size_t flags = FlagCount(corpus.size(), x);
  std::unordered_map<std::string, size_t> chosen;
  for (const auto& s : selections) chosen[s.id] = s.chosen;

  LabelExport out;
  out.records.reserve(corpus.size());
  for (const auto& doc : corpus.documents) {
    const auto it = chosen.find(doc.id);
    if (it == chosen.end()) {
      throw ParameterError("no selection for document \"" + doc.id + "\"");
    }
    if (it->second >= doc.candidates.size()) {
      throw ParameterError("selection for document \"" + doc.id +
                           "\" is out of range");
    }
    const std::string& target = doc.candidates[it->second];
    out.records.push_back(
        {doc.id, target, Extractiveness(target, doc.source, config), false});
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  std::vector<size_t> order(out.records.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // Records are already in id order, so a stable sort settles ties by id.
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return out.records[a].extractiveness > out.records[b].extractiveness;
  });
  for (size_t r = 0; r < flags; ++r) out.records[order[r]].paraphrase = true;

  out.stats.records = out.records.size();
  out.stats.flagged = flags;
  out.stats.fraction = x;
  double sum = 0.0;
  for (const auto& r : out.records) sum += r.extractiveness;
  if (!out.records.empty()) {
    out.stats.mean_extractiveness = sum / static_cast<double>(out.records.size());
  }
  return out;
}

std::string SerializeLabels(const LabelExport& labels,
                            const LabelMetadata& metadata,
                            const Provenance& provenance) {
  nlohmann::ordered_json head;
  head["provenance"]["tool_version"] = provenance.tool_version;
  head["provenance"]["config_digest"] = provenance.config_digest;
  head["provenance"]["input_digest"] = provenance.input_digest;
  auto& meta = head["export"];
  meta["coefficients_digest"] = metadata.coefficients_digest;
  meta["seed"] = metadata.seed;
  meta["extractiveness"] = "1 - mean novel n-gram fraction, n=1..3";
  meta["paraphrase_fraction"] = labels.stats.fraction;
  meta["records"] = labels.stats.records;
  meta["flagged"] = labels.stats.flagged;
  meta["mean_extractiveness"] = labels.stats.mean_extractiveness;
  std::string out = head.dump() + "\n";
  for (const auto& r : labels.records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["target"] = r.target;
    j["extractiveness"] = r.extractiveness;
    j["paraphrase"] = r.paraphrase;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<PseudoLabelRecord> ParseLabels(std::string_view jsonl) {
  std::vector<PseudoLabelRecord> out;
  size_t line_no = 0;
  size_t start = 0;
  while (start < jsonl.size()) {
    size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("provenance")) continue;
      out.push_back({j.at("id").get<std::string>(),
                     j.at("target").get<std::string>(),
                     j.at("extractiveness").get<double>(),
                     j.at("paraphrase").get<bool>()});
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("labels line " + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return out;
}

void WriteLabels(const std::filesystem::path& path, const LabelExport& labels,
                 const LabelMetadata& metadata, const Provenance& provenance) {
  WriteFileAtomic(path, SerializeLabels(labels, metadata, provenance));
}

}  // namespace summrank
