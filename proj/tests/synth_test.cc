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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "oracles/oracles.h"
#include "summrank/errors.h"
#include "summrank/metrics.h"
#include "summrank/synth.h"

namespace summrank {
namespace {

std::vector<oracle::Tokens> SentenceTokens(const std::string& text) {
  std::vector<oracle::Tokens> out;
  for (const auto& s : SplitSentences(text).sentences) {
    out.push_back(Tokenize(s).tokens);
  }
  return out;
}

std::string Lead3Text(const std::string& source) {
  const auto doc = SplitSentences(source);
  std::string text;
  for (size_t i = 0; i < std::min<size_t>(3, doc.size()); ++i) {
    if (!text.empty()) text += " ";
    text += doc.sentences[i];
  }
  return text;
}

TEST(SynthTest, DeterministicAndShaped) {
  SynthOptions options;
  options.n_docs = 12;
  const SynthCorpus a = GenerateSynthetic(options);
  const SynthCorpus b = GenerateSynthetic(options);
  EXPECT_EQ(SerializeCorpus(a.corpus), SerializeCorpus(b.corpus));
  EXPECT_EQ(SerializePlants(a), SerializePlants(b));
  options.seed = 8;
  EXPECT_NE(SerializeCorpus(GenerateSynthetic(options).corpus),
            SerializeCorpus(a.corpus));
  ASSERT_EQ(a.corpus.size(), 12u);
  EXPECT_EQ(a.corpus.documents[3].id, "synth-0003");
  for (const auto& doc : a.corpus.documents) {
    EXPECT_EQ(doc.candidates.size(), 5u);
    EXPECT_TRUE(doc.reference.has_value());
    const auto sentences = SplitSentences(doc.source);
    EXPECT_GE(sentences.size(), 5u);
    EXPECT_LE(sentences.size(), 12u);
    for (const auto& s : sentences.sentences) {
      const size_t len = Tokenize(s).size();
      EXPECT_GE(len, 4u);
      EXPECT_LE(len, 10u);
    }
  }
}

TEST(SynthTest, BleuOraclePlantIsUniqueMaximum) {
  SynthOptions options;
  options.n_docs = 30;
  options.k = 6;
  const SynthCorpus synth = GenerateSynthetic(options);
  for (size_t i = 0; i < synth.corpus.size(); ++i) {
    const auto& doc = synth.corpus.documents[i];
    ASSERT_TRUE(synth.planted[i].has_value());
    const size_t p = *synth.planted[i];
    const auto src = Tokenize(doc.source).tokens;
    const auto lead = SentenceTokens(Lead3Text(doc.source));
    const auto cp = Tokenize(doc.candidates[p]).tokens;
    const double bleu_p = oracle::Bleu(cp, src);
    const double rouge_p = oracle::MeanRouge(SentenceTokens(doc.candidates[p]), lead);
    for (size_t c = 0; c < doc.candidates.size(); ++c) {
      if (c == p) continue;
      EXPECT_LT(oracle::Bleu(Tokenize(doc.candidates[c]).tokens, src), bleu_p)
          << doc.id << " candidate " << c;
      EXPECT_LT(oracle::MeanRouge(SentenceTokens(doc.candidates[c]), lead), rouge_p)
          << doc.id << " candidate " << c;
    }
  }
}

TEST(SynthTest, LeadBiasAndUniformPlants) {
  SynthOptions options;
  options.n_docs = 10;
  options.plant = Plant::kLeadBias;
  const SynthCorpus lead = GenerateSynthetic(options);
  for (size_t i = 0; i < lead.corpus.size(); ++i) {
    ASSERT_TRUE(lead.planted[i].has_value());
  }
  options.plant = Plant::kUniform;
  const SynthCorpus uniform = GenerateSynthetic(options);
  for (size_t i = 0; i < uniform.corpus.size(); ++i) {
    EXPECT_FALSE(uniform.planted[i].has_value());
    const auto& c = uniform.corpus.documents[i].candidates;
    for (const auto& x : c) EXPECT_EQ(x, c[0]);
  }
  const auto plants = ParsePlants(SerializePlants(uniform));
  EXPECT_EQ(plants.size(), 10u);
  EXPECT_FALSE(plants.at("synth-0000").has_value());
  const auto lead_plants = ParsePlants(SerializePlants(lead));
  EXPECT_EQ(lead_plants.at("synth-0004"), lead.planted[4]);
}

TEST(SynthTest, OptionValidation) {
  SynthOptions options;
  options.n_docs = 0;
  EXPECT_THROW(GenerateSynthetic(options), ParameterError);
  options = {};
  options.k = 1;
  EXPECT_THROW(GenerateSynthetic(options), ParameterError);
  options = {};
  options.vocab = 4;
  EXPECT_THROW(GenerateSynthetic(options), ParameterError);
  for (const char* name : {"bleu-oracle", "lead-bias", "uniform"}) {
    EXPECT_EQ(PlantName(ParsePlant(name)), name);
  }
  EXPECT_THROW(ParsePlant("best"), ParameterError);
}

}  // namespace
}  // namespace summrank
