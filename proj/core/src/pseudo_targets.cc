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

#include "summrank/pseudo_targets.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/metrics.h"
#include "summrank/parallel.h"
#include "summrank/random.h"

namespace summrank {
namespace {

void RequireSentences(const SentenceList& doc) {
  if (doc.empty()) {
    throw DegenerateInputError("cannot build a pseudo-target from a document "
                               "without sentences");
  }
}

PseudoTarget MakeTarget(const SentenceList& doc, PseudoMethod method,
                        std::vector<size_t> indices) {
  PseudoTarget target;
  target.method = method;
  target.sentence_indices = std::move(indices);
  target.text = JoinSentences(doc, target.sentence_indices);
  return target;
}

double SentenceScore(PseudoMethod variant,
                     const std::vector<std::string>& sentence,
                     const std::vector<std::string>& rest) {
  switch (variant) {
    case PseudoMethod::kSalientR1:
      return RougeN(Ngrams(sentence, 1), Ngrams(rest, 1)).f1;
    case PseudoMethod::kSalientR2:
      return RougeN(Ngrams(sentence, 2), Ngrams(rest, 2)).f1;
    case PseudoMethod::kSalientRL:
      return RougeL(sentence, rest).f1;
    default:
      throw ParameterError("not a salient-sentence variant");
  }
}

// ceil(x) that ignores binary representation noise, so ceil(0.3 * 10) == 3.
size_t StableCeil(double x) {
  return static_cast<size_t>(std::ceil(x - 1e-9));
}

}  // namespace

std::string_view PseudoMethodName(PseudoMethod method) {
  switch (method) {
    case PseudoMethod::kRandom3:
      return "random3";
    case PseudoMethod::kLead3:
      return "lead3";
    case PseudoMethod::kSalientR1:
      return "salient-r1";
    case PseudoMethod::kSalientR2:
      return "salient-r2";
    case PseudoMethod::kSalientRL:
      return "salient-rl";
  }
  return "unknown";
}

PseudoMethod ParsePseudoMethod(std::string_view name) {
  for (auto method : {PseudoMethod::kRandom3, PseudoMethod::kLead3,
                      PseudoMethod::kSalientR1, PseudoMethod::kSalientR2,
                      PseudoMethod::kSalientRL}) {
    if (PseudoMethodName(method) == name) return method;
  }
  throw ParameterError("unknown pseudo-target method \"" + std::string(name) +
                       "\" (expected random3, lead3, salient-r1, salient-r2 "
                       "or salient-rl)");
}

std::string JoinSentences(const SentenceList& doc,
                          const std::vector<size_t>& indices) {
  std::string text;
  for (size_t i : indices) {
    if (!text.empty()) text.push_back(' ');
    text += doc.sentences.at(i);
  }
  return text;
}

PseudoTarget Lead3(const SentenceList& doc) {
  RequireSentences(doc);
  std::vector<size_t> indices(std::min<size_t>(3, doc.size()));
  std::iota(indices.begin(), indices.end(), size_t{0});
  return MakeTarget(doc, PseudoMethod::kLead3, std::move(indices));
}

PseudoTarget Random3(const SentenceList& doc, uint64_t seed) {
  RequireSentences(doc);
  Rng rng(seed);
  return MakeTarget(doc, PseudoMethod::kRandom3, rng.SampleSorted(doc.size(), 3));
}

PseudoTarget Salient(const SentenceList& doc, PseudoMethod variant,
                     double ratio, const TokenizerConfig& config) {
  RequireSentences(doc);
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ParameterError("salient ratio must be in (0, 1]");
  }
  const size_t n = doc.size();
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(n);
  for (const auto& s : doc.sentences) tokens.push_back(Tokenize(s, config).tokens);

  std::vector<double> scores(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::string> rest;
    for (size_t j = 0; j < n; ++j) {
      if (j != i) rest.insert(rest.end(), tokens[j].begin(), tokens[j].end());
    }
    scores[i] = SentenceScore(variant, tokens[i], rest);
  }

  const size_t m =
      std::min(n, std::max<size_t>(1, StableCeil(ratio * static_cast<double>(n))));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  order.resize(m);
  std::sort(order.begin(), order.end());
  return MakeTarget(doc, variant, std::move(order));
}

std::vector<PseudoTarget> BuildPseudoTargets(const Corpus& corpus,
                                             const PseudoTargetOptions& options,
                                             const TokenizerConfig& config,
                                             int threads) {
  std::vector<PseudoTarget> targets(corpus.size());
  ParallelFor(corpus.size(), threads, [&](size_t i) {
    const Document& doc = corpus.documents[i];
    const SentenceList sentences = SplitSentences(doc.source, config);
    if (sentences.empty()) {
      throw DegenerateInputError("document \"" + doc.id +
                                 "\" has no sentences to build a pseudo-target");
    }
    switch (options.method) {
      case PseudoMethod::kLead3:
        targets[i] = Lead3(sentences);
        break;
      case PseudoMethod::kRandom3:
        targets[i] =
            Random3(sentences, MixSeed(options.seed, HashString(doc.id)));
        break;
      default:
        targets[i] =
            Salient(sentences, options.method, options.salient_ratio, config);
        break;
    }
    targets[i].id = doc.id;
  });
  return targets;
}

std::string SerializePseudoTargets(const std::vector<PseudoTarget>& targets,
                                   const Provenance& provenance) {
  std::string out = ProvenanceLine(provenance);
  out.push_back('\n');
  for (const auto& target : targets) {
    nlohmann::ordered_json record;
    record["id"] = target.id;
    record["method"] = PseudoMethodName(target.method);
    record["text"] = target.text;
    record["sentence_indices"] = target.sentence_indices;
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<PseudoTarget> ParsePseudoTargets(std::string_view jsonl) {
  std::vector<PseudoTarget> targets;
  size_t begin = 0;
  size_t line_number = 0;
  while (begin < jsonl.size()) {
    size_t end = jsonl.find('\n', begin);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(begin, end - begin);
    begin = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      if (record.contains("provenance")) continue;
      PseudoTarget target;
      target.id = record.at("id").get<std::string>();
      target.method = ParsePseudoMethod(record.at("method").get<std::string>());
      target.text = record.at("text").get<std::string>();
      target.sentence_indices =
          record.at("sentence_indices").get<std::vector<size_t>>();
      targets.push_back(std::move(target));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("pseudo-target line " + std::to_string(line_number) +
                            ": " + e.what());
    } catch (const ParameterError& e) {
      throw ValidationError("pseudo-target line " + std::to_string(line_number) +
                            ": " + e.what());
    }
  }
  return targets;
}

void WritePseudoTargets(const std::filesystem::path& path,
                        const std::vector<PseudoTarget>& targets,
                        const Provenance& provenance) {
  WriteFileAtomic(path, SerializePseudoTargets(targets, provenance));
}

std::vector<PseudoTarget> ReadPseudoTargets(const std::filesystem::path& path) {
  return ParsePseudoTargets(ReadFile(path));
}

}  // namespace summrank
