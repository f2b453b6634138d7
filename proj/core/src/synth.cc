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

#include "summrank/synth.h"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "summrank/errors.h"
#include "summrank/io.h"
#include "summrank/metrics.h"
#include "summrank/pseudo_targets.h"
#include "summrank/random.h"
#include "summrank/text.h"

namespace summrank {
namespace {

using Sentence = std::vector<std::string>;
using Passage = std::vector<Sentence>;

constexpr int kMaxAttempts = 200;

std::vector<std::string> MakeVocabulary(size_t size) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::vector<std::string> syllables;
  for (char c : kConsonants) {
    for (char v : kVowels) syllables.push_back(std::string{c, v});
  }
  std::vector<std::string> words;
  for (size_t i = 0; words.size() < size; ++i) {
    std::string word = syllables[i % syllables.size()] +
                       syllables[(i * 7 + 3) % syllables.size()];
    if (i >= syllables.size()) word += syllables[(i / syllables.size()) % 70];
    if (std::find(words.begin(), words.end(), word) == words.end()) {
      words.push_back(std::move(word));
    }
  }
  return words;
}

class Generator {
 public:
  Generator(const std::vector<std::string>& vocab, uint64_t seed)
      : vocab_(vocab), rng_(seed) {}

  const std::string& Word() { return vocab_[rng_.UniformInt(vocab_.size())]; }

  Sentence RandomSentence() {
    Sentence s(4 + rng_.UniformInt(7));
    for (auto& token : s) token = Word();
    return s;
  }

  Passage RandomPassage(size_t sentences) {
    Passage p;
    for (size_t i = 0; i < sentences; ++i) p.push_back(RandomSentence());
    return p;
  }

  // Replaces each token with probability p by a different word.
  Passage Corrupt(Passage p, double probability) {
    for (auto& sentence : p) {
      for (auto& token : sentence) {
        if (rng_.Uniform() < probability) token = Different(token);
      }
    }
    return p;
  }

  // Replaces exactly one token per sentence.
  Passage EditOnce(Passage p) {
    for (auto& sentence : p) {
      auto& token = sentence[rng_.UniformInt(sentence.size())];
      token = Different(token);
    }
    return p;
  }

  // Shuffles all tokens and refills the original sentence shapes.
  Passage Scramble(Passage p) {
    std::vector<std::string> flat;
    for (const auto& s : p) flat.insert(flat.end(), s.begin(), s.end());
    for (size_t i = flat.size(); i > 1; --i) {
      std::swap(flat[i - 1], flat[rng_.UniformInt(i)]);
    }
    size_t next = 0;
    for (auto& s : p) {
      for (auto& token : s) token = flat[next++];
    }
    return p;
  }

  Rng& rng() { return rng_; }

 private:
  std::string Different(const std::string& token) {
    std::string out = token;
    while (out == token) out = Word();
    return out;
  }

  const std::vector<std::string>& vocab_;
  Rng rng_;
};

std::string Render(const Passage& passage) {
  std::string out;
  for (const auto& sentence : passage) {
    if (!out.empty()) out += ' ';
    for (size_t i = 0; i < sentence.size(); ++i) {
      std::string token = sentence[i];
      if (i == 0) {
        token[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
      } else {
        out += ' ';
      }
      out += token;
    }
    out += '.';
  }
  return out;
}

Passage Slice(const Passage& p, size_t begin, size_t count) {
  return Passage(p.begin() + static_cast<std::ptrdiff_t>(begin),
                 p.begin() + static_cast<std::ptrdiff_t>(std::min(p.size(), begin + count)));
}

struct Pool {
  std::vector<std::string> candidates;
  std::optional<size_t> planted;
};

Pool BuildPool(Generator& gen, const Passage& source, size_t k, Plant plant) {
  const Passage lead = Slice(source, 0, 3);
  Pool pool;
  if (plant == Plant::kUniform) {
    pool.candidates.assign(k, Render(gen.Corrupt(lead, 0.3)));
    return pool;
  }
  const size_t planted = gen.rng().UniformInt(k);
  pool.planted = planted;
  size_t slot = 0;
  for (size_t c = 0; c < k; ++c) {
    if (c == planted) {
      pool.candidates.push_back(
          Render(plant == Plant::kBleuOracle ? lead : gen.EditOnce(lead)));
      continue;
    }
    const size_t type = slot % 5;
    const double p = 0.15 + 0.1 * static_cast<double>((slot / 5) % 3);
    ++slot;
    const size_t later = 3 + gen.rng().UniformInt(source.size() - 3);
    Passage text;
    switch (type) {
      case 0:
        text = gen.Scramble(lead);
        break;
      case 1:
        text = gen.Corrupt(lead, plant == Plant::kBleuOracle ? p : 2 * p);
        break;
      case 2:
        text = plant == Plant::kBleuOracle ? Slice(lead, 0, 2)
                                           : Slice(source, later, 3);
        break;
      case 3:
        text = plant == Plant::kBleuOracle
                   ? gen.Corrupt(Slice(source, later, 3), 0.3)
                   : Slice(source, later, 3);
        break;
      default:
        text = gen.RandomPassage(3);
        break;
    }
    pool.candidates.push_back(Render(text));
  }
  return pool;
}

// The planted candidate must be the unique best on every property the plant
// promises.
bool CheckPlant(const Pool& pool, const std::string& source, Plant plant) {
  if (!pool.planted) return true;
  const size_t planted = *pool.planted;
  const SentenceList sentences = SplitSentences(source);
  const std::string lead3 = Lead3(sentences).text;
  const RougeText target = RougeText::From(lead3, {});
  const BleuReference reference = BleuReference::From(Tokenize(source).tokens);
  std::vector<double> nearness;
  std::vector<double> bleu;
  for (const auto& candidate : pool.candidates) {
    nearness.push_back(ScoreRouge(RougeText::From(candidate, {}), target).Mean());
    bleu.push_back(Bleu(Tokenize(candidate).tokens, reference));
  }
  for (size_t c = 0; c < pool.candidates.size(); ++c) {
    if (c == planted) continue;
    if (!(nearness[planted] > nearness[c])) return false;
    if (plant == Plant::kBleuOracle && !(bleu[planted] > bleu[c])) return false;
  }
  return true;
}

}  // namespace

std::string_view PlantName(Plant plant) {
  switch (plant) {
    case Plant::kBleuOracle:
      return "bleu-oracle";
    case Plant::kLeadBias:
      return "lead-bias";
    case Plant::kUniform:
      return "uniform";
  }
  return "";
}

Plant ParsePlant(std::string_view name) {
  for (Plant p : {Plant::kBleuOracle, Plant::kLeadBias, Plant::kUniform}) {
    if (PlantName(p) == name) return p;
  }
  throw ParameterError("unknown plant \"" + std::string(name) + "\"");
}

SynthCorpus GenerateSynthetic(const SynthOptions& options) {
  if (options.n_docs < 1) throw ParameterError("n_docs must be at least 1");
  if (options.k < 2) throw ParameterError("k must be at least 2");
  if (options.vocab < 8) throw ParameterError("vocab must be at least 8");
  const std::vector<std::string> vocab = MakeVocabulary(options.vocab);

  SynthCorpus out;
  for (size_t d = 0; d < options.n_docs; ++d) {
    Generator gen(vocab, MixSeed(options.seed, d));
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%04zu", d);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      const Passage source = gen.RandomPassage(5 + gen.rng().UniformInt(8));
      const std::string source_text = Render(source);
      Pool pool = BuildPool(gen, source, options.k, options.plant);
      if (!CheckPlant(pool, source_text, options.plant)) continue;
      Document doc;
      doc.id = id;
      doc.source = source_text;
      doc.candidates = std::move(pool.candidates);
      doc.reference = Render(gen.Corrupt(Slice(source, 0, 3), 0.2));
      out.corpus.documents.push_back(std::move(doc));
      out.planted.push_back(pool.planted);
      accepted = true;
    }
    if (!accepted) {
      throw InvariantError(std::string("could not plant a candidate for ") + id);
    }
  }
  return out;
}

std::string SerializePlants(const SynthCorpus& synth) {
  std::string out;
  for (size_t i = 0; i < synth.corpus.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = synth.corpus.documents[i].id;
    if (synth.planted[i]) {
      j["planted_index"] = *synth.planted[i];
    } else {
      j["planted_index"] = nullptr;
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::map<std::string, std::optional<size_t>> ParsePlants(std::string_view jsonl) {
  std::map<std::string, std::optional<size_t>> out;
  size_t start = 0;
  while (start < jsonl.size()) {
    size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto& index = j.at("planted_index");
      out[j.at("id").get<std::string>()] =
          index.is_null() ? std::nullopt
                          : std::optional<size_t>(index.get<size_t>());
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("plant file: ") + e.what());
    }
  }
  return out;
}

void WriteSynthetic(const std::filesystem::path& corpus_path,
                    const std::filesystem::path& plant_path,
                    const SynthCorpus& synth) {
  WriteCorpus(corpus_path, synth.corpus);
  WriteFileAtomic(plant_path, SerializePlants(synth));
}

}  // namespace summrank
