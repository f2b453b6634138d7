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

#include "summrank/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "summrank/errors.h"
#include "summrank/parallel.h"
#include "summrank/random.h"

namespace summrank {
namespace {

const std::vector<std::string>& KnownStrategies() {
  static const std::vector<std::string> kStrategies = {
      "first", "random", "minimum", "oracle", "summscore", "longest"};
  return kStrategies;
}

bool IsMaxFeature(std::string_view strategy) {
  return strategy.starts_with(kMaxFeaturePrefix);
}

std::string Format(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

std::string CsvHeader(const Provenance& provenance) {
  return "# " + ProvenanceLine(provenance) + "\n";
}

const ReferenceTable& NeedReferences(const SelectionContext& context,
                                     std::string_view strategy) {
  if (context.references == nullptr) {
    throw ParameterError("strategy " + std::string(strategy) +
                         " needs references");
  }
  if (context.references->size() != context.corpus->size()) {
    throw ParameterError("reference table does not cover the corpus");
  }
  return *context.references;
}

template <typename Better>
std::vector<size_t> ArgBest(const ReferenceTable& references, Better better) {
  std::vector<size_t> chosen(references.size(), 0);
  for (size_t i = 0; i < references.size(); ++i) {
    const auto& row = references[i];
    for (size_t c = 1; c < row.size(); ++c) {
      if (better(row[c].Mean(), row[chosen[i]].Mean())) chosen[i] = c;
    }
  }
  return chosen;
}

std::vector<size_t> SelectMaxFeature(std::string_view strategy,
                                     const SelectionContext& context) {
  if (context.features == nullptr) {
    throw ParameterError("strategy " + std::string(strategy) +
                         " needs a feature matrix");
  }
  const FeatureMatrix& features = *context.features;
  const size_t column =
      features.spec.IndexOf(strategy.substr(kMaxFeaturePrefix.size()));
  const Corpus& corpus = *context.corpus;
  if (features.documents.size() != corpus.size()) {
    throw ParameterError("feature matrix does not cover the corpus");
  }
  std::vector<size_t> chosen(corpus.size(), 0);
  for (size_t i = 0; i < corpus.size(); ++i) {
    const DocumentFeatures& doc = features.documents[i];
    if (doc.id != corpus.documents[i].id) {
      throw ParameterError("feature matrix is not in corpus order at \"" +
                           doc.id + "\"");
    }
    for (size_t c = 1; c < doc.raw.rows(); ++c) {
      if (doc.raw(c, column) > doc.raw(chosen[i], column)) chosen[i] = c;
    }
  }
  return chosen;
}

std::vector<size_t> SelectSummScore(const SelectionContext& context) {
  if (context.summscore == nullptr) {
    throw ParameterError("strategy summscore needs reranker selections");
  }
  std::unordered_map<std::string, size_t> by_id;
  for (const auto& s : *context.summscore) by_id[s.id] = s.chosen;
  std::vector<size_t> chosen;
  chosen.reserve(context.corpus->size());
  for (const auto& doc : context.corpus->documents) {
    const auto it = by_id.find(doc.id);
    if (it == by_id.end()) {
      throw ParameterError("no selection for document \"" + doc.id + "\"");
    }
    if (it->second >= doc.candidates.size()) {
      throw ParameterError("selection for document \"" + doc.id +
                           "\" is out of range");
    }
    chosen.push_back(it->second);
  }
  return chosen;
}

}  // namespace

std::vector<std::string> DefaultStrategies() { return KnownStrategies(); }

std::vector<std::string> ParseStrategies(std::string_view list) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= list.size()) {
    size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string name(list.substr(start, end - start));
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (!name.empty()) {
      const bool known = std::find(KnownStrategies().begin(),
                                   KnownStrategies().end(),
                                   name) != KnownStrategies().end();
      if (!known && !(IsMaxFeature(name) &&
                      name.size() > kMaxFeaturePrefix.size())) {
        throw ParameterError("unknown strategy \"" + name + "\"");
      }
      if (std::find(out.begin(), out.end(), name) == out.end()) {
        out.push_back(std::move(name));
      }
    }
    start = end + 1;
  }
  if (out.empty()) throw ParameterError("no strategies given");
  return out;
}

ReferenceTable BuildReferenceTable(const Corpus& corpus,
                                   const TokenizerConfig& config, int threads) {
  for (const auto& doc : corpus.documents) {
    if (!doc.reference) {
      throw ParameterError("document \"" + doc.id + "\" has no reference");
    }
  }
  ReferenceTable table(corpus.size());
  ParallelFor(corpus.size(), threads, [&](size_t i) {
    const Document& doc = corpus.documents[i];
    const RougeText reference = RougeText::From(*doc.reference, config);
    table[i].reserve(doc.candidates.size());
    for (const auto& candidate : doc.candidates) {
      table[i].push_back(ScoreRouge(RougeText::From(candidate, config), reference));
    }
  });
  return table;
}

std::vector<size_t> BaselineSelect(std::string_view strategy,
                                   const SelectionContext& context) {
  if (context.corpus == nullptr) throw ParameterError("no corpus given");
  const Corpus& corpus = *context.corpus;
  if (strategy == "first") return std::vector<size_t>(corpus.size(), 0);
  if (strategy == "random") {
    std::vector<size_t> chosen;
    chosen.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
      Rng rng(MixSeed(context.seed, HashString(doc.id)));
      chosen.push_back(rng.UniformInt(doc.candidates.size()));
    }
    return chosen;
  }
  if (strategy == "oracle") {
    return ArgBest(NeedReferences(context, strategy),
                   [](double a, double b) { return a > b; });
  }
  if (strategy == "minimum") {
    return ArgBest(NeedReferences(context, strategy),
                   [](double a, double b) { return a < b; });
  }
  if (strategy == "longest") {
    std::vector<size_t> chosen;
    chosen.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
      size_t best = 0;
      size_t best_len = 0;
      for (size_t c = 0; c < doc.candidates.size(); ++c) {
        const size_t len = Tokenize(doc.candidates[c], context.config).size();
        if (c == 0 || len > best_len) {
          best = c;
          best_len = len;
        }
      }
      chosen.push_back(best);
    }
    return chosen;
  }
  if (strategy == "summscore") return SelectSummScore(context);
  if (IsMaxFeature(strategy)) return SelectMaxFeature(strategy, context);
  throw ParameterError("unknown strategy \"" + std::string(strategy) + "\"");
}

double Gain(double selected, double baseline) {
  if (!(baseline > 0.0)) {
    throw DegenerateInputError("gain is undefined for a baseline of " +
                               Format("%g", baseline));
  }
  return 100.0 * (selected - baseline) / baseline;
}

StrategyResult ScoreStrategy(std::string strategy, std::vector<size_t> chosen,
                             const ReferenceTable& references) {
  if (chosen.size() != references.size()) {
    throw ParameterError("selection does not cover the reference table");
  }
  StrategyResult result;
  result.strategy = std::move(strategy);
  const size_t n = references.size();
  for (size_t i = 0; i < n; ++i) {
    const RougeScores& s = references[i].at(chosen[i]);
    result.rouge1 += s.rouge1.f1;
    result.rouge2 += s.rouge2.f1;
    result.rouge_lsum += s.rouge_lsum.f1;
    result.mean += s.Mean();
  }
  if (n > 0) {
    const double dn = static_cast<double>(n);
    result.rouge1 /= dn;
    result.rouge2 /= dn;
    result.rouge_lsum /= dn;
    result.mean /= dn;
  }
  result.chosen = std::move(chosen);
  return result;
}

std::vector<size_t> RankByScore(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<std::vector<size_t>> OracleSets(const ReferenceTable& references) {
  std::vector<std::vector<size_t>> sets(references.size());
  for (size_t i = 0; i < references.size(); ++i) {
    const auto& row = references[i];
    if (row.empty()) continue;
    double best = row[0].Mean();
    for (const auto& s : row) best = std::max(best, s.Mean());
    for (size_t c = 0; c < row.size(); ++c) {
      if (row[c].Mean() == best) sets[i].push_back(c);
    }
  }
  return sets;
}

double RecallAtK(const std::vector<std::vector<size_t>>& rankings,
                 const std::vector<std::vector<size_t>>& oracle_sets,
                 size_t k) {
  if (k < 1) throw ParameterError("recall@k needs k >= 1");
  if (rankings.size() != oracle_sets.size()) {
    throw ParameterError("rankings and oracle sets differ in length");
  }
  if (rankings.empty()) return 0.0;
  size_t hits = 0;
  for (size_t i = 0; i < rankings.size(); ++i) {
    const auto& oracle = oracle_sets[i];
    if (oracle.empty()) {
      throw ParameterError("empty oracle set for document " + std::to_string(i));
    }
    const size_t top = std::min(k, rankings[i].size());
    for (size_t r = 0; r < top; ++r) {
      if (std::find(oracle.begin(), oracle.end(), rankings[i][r]) !=
          oracle.end()) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(rankings.size());
}

std::vector<size_t> RecallThresholds(size_t max_pool) {
  static const size_t kBase[] = {1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 50, 75};
  std::vector<size_t> out;
  for (size_t k : kBase) {
    if (k < max_pool) out.push_back(k);
  }
  for (size_t k = 100; k < max_pool; k *= 2) out.push_back(k);
  if (max_pool >= 1) out.push_back(max_pool);
  return out;
}

RecallCurve ComputeRecallCurve(
    const std::vector<std::vector<size_t>>& rankings,
    const std::vector<std::vector<size_t>>& oracle_sets) {
  size_t max_pool = 0;
  for (const auto& r : rankings) max_pool = std::max(max_pool, r.size());
  RecallCurve curve;
  curve.k = RecallThresholds(max_pool);
  for (size_t k : curve.k) {
    curve.recall.push_back(RecallAtK(rankings, oracle_sets, k));
  }
  return curve;
}

std::vector<OverlapRow> OverlapDiagnostics(
    const std::vector<size_t>& reference,
    const std::vector<std::pair<std::string, std::vector<size_t>>>& others) {
  std::vector<OverlapRow> rows;
  for (const auto& [name, chosen] : others) {
    if (chosen.size() != reference.size()) {
      throw ParameterError("selection " + name + " covers a different corpus");
    }
    size_t same = 0;
    for (size_t i = 0; i < chosen.size(); ++i) same += chosen[i] == reference[i];
    const double percent =
        reference.empty()
            ? 0.0
            : 100.0 * static_cast<double>(same) /
                  static_cast<double>(reference.size());
    rows.push_back({name, percent});
  }
  return rows;
}

std::optional<double> NovelNgramFraction(
    const std::vector<std::string>& candidate,
    const std::vector<std::string>& source, int n) {
  const NgramMultiset cand = Ngrams(candidate, n);
  const size_t total = cand.total();
  if (total == 0) return std::nullopt;
  const NgramMultiset src = Ngrams(source, n);
  size_t novel = 0;
  for (const auto& [gram, count] : cand.counts) {
    if (!src.counts.contains(gram)) novel += static_cast<size_t>(count);
  }
  return static_cast<double>(novel) / static_cast<double>(total);
}

std::array<double, 3> Abstractiveness(const Corpus& corpus,
                                      const std::vector<size_t>& chosen,
                                      const TokenizerConfig& config) {
  if (chosen.size() != corpus.size()) {
    throw ParameterError("selection does not cover the corpus");
  }
  std::array<double, 3> sums = {0.0, 0.0, 0.0};
  std::array<size_t, 3> counts = {0, 0, 0};
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Document& doc = corpus.documents[i];
    const auto candidate = Tokenize(doc.candidates.at(chosen[i]), config).tokens;
    const auto source = Tokenize(doc.source, config).tokens;
    for (int n = 1; n <= 3; ++n) {
      if (auto f = NovelNgramFraction(candidate, source, n)) {
        sums[n - 1] += *f;
        ++counts[n - 1];
      }
    }
  }
  std::array<double, 3> out = {0.0, 0.0, 0.0};
  for (size_t n = 0; n < 3; ++n) {
    if (counts[n] > 0) out[n] = sums[n] / static_cast<double>(counts[n]);
  }
  return out;
}

EvaluationReport Evaluate(const Corpus& corpus, const FeatureMatrix* features,
                          const std::vector<Selection>* summscore,
                          const TokenizerConfig& config,
                          const EvaluationOptions& options) {
  if (corpus.empty()) throw ParameterError("cannot evaluate an empty corpus");
  const ReferenceTable references =
      BuildReferenceTable(corpus, config, options.threads);
  SelectionContext context{&corpus, &references, features, summscore,
                           options.seed, config};

  EvaluationReport report;
  const StrategyResult baseline =
      ScoreStrategy("first", BaselineSelect("first", context), references);
  for (const auto& strategy : options.strategies) {
    StrategyResult result =
        ScoreStrategy(strategy, BaselineSelect(strategy, context), references);
    if (baseline.mean > 0.0) result.gain_pct = Gain(result.mean, baseline.mean);
    report.strategies.push_back(std::move(result));
  }

  if (summscore != nullptr) {
    const std::vector<size_t> chosen = BaselineSelect("summscore", context);
    std::unordered_map<std::string, const Selection*> by_id;
    for (const auto& s : *summscore) by_id[s.id] = &s;
    std::vector<std::vector<size_t>> rankings;
    rankings.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
      const Selection& s = *by_id.at(doc.id);
      if (s.scores.size() != doc.candidates.size()) {
        throw ParameterError("selection scores for \"" + doc.id +
                             "\" do not match the candidate count");
      }
      rankings.push_back(RankByScore(s.scores));
    }
    report.recall = ComputeRecallCurve(rankings, OracleSets(references));

    std::vector<std::pair<std::string, std::vector<size_t>>> trivial;
    if (features != nullptr) {
      for (const auto& id : features->spec.ids) {
        const std::string name = std::string(kMaxFeaturePrefix) + id;
        trivial.emplace_back(name, BaselineSelect(name, context));
      }
    }
    for (const char* name : {"first", "oracle", "minimum", "longest"}) {
      trivial.emplace_back(name, BaselineSelect(name, context));
    }
    report.overlap = OverlapDiagnostics(chosen, trivial);
    report.abstractiveness_strategy = "summscore";
    report.abstractiveness = Abstractiveness(corpus, chosen, config);
  } else {
    report.abstractiveness_strategy = report.strategies.front().strategy;
    report.abstractiveness =
        Abstractiveness(corpus, report.strategies.front().chosen, config);
  }
  return report;
}

std::string SerializeReportCsv(const EvaluationReport& report,
                               const Provenance& provenance) {
  std::string out = CsvHeader(provenance);
  out += "strategy,r1,r2,rl,mean,gain_pct\n";
  for (const auto& s : report.strategies) {
    out += s.strategy + "," + Format("%.6f", s.rouge1) + "," +
           Format("%.6f", s.rouge2) + "," + Format("%.6f", s.rouge_lsum) + "," +
           Format("%.6f", s.mean) + "," +
           (s.gain_pct ? Format("%.4f", *s.gain_pct) : std::string()) + "\n";
  }
  return out;
}

std::string SerializeRecallCsv(const EvaluationReport& report,
                               const Provenance& provenance) {
  std::string out = CsvHeader(provenance);
  out += "k,recall\n";
  for (size_t i = 0; i < report.recall.k.size(); ++i) {
    out += std::to_string(report.recall.k[i]) + "," +
           Format("%.6f", report.recall.recall[i]) + "\n";
  }
  return out;
}

std::string SerializeOverlapCsv(const EvaluationReport& report,
                                const Provenance& provenance) {
  std::string out = CsvHeader(provenance);
  out += "strategy,percent\n";
  for (const auto& row : report.overlap) {
    out += row.strategy + "," + Format("%.4f", row.percent) + "\n";
  }
  return out;
}

std::string SerializeAbstractivenessCsv(const EvaluationReport& report,
                                        const Provenance& provenance) {
  std::string out = CsvHeader(provenance);
  out += "# selection: " + report.abstractiveness_strategy + "\n";
  out += "n,fraction\n";
  for (size_t n = 0; n < 3; ++n) {
    out += std::to_string(n + 1) + "," +
           Format("%.6f", report.abstractiveness[n]) + "\n";
  }
  return out;
}

std::string SerializeReportTable(const EvaluationReport& report,
                                 const Provenance& provenance) {
  size_t width = 8;
  for (const auto& s : report.strategies) {
    width = std::max(width, s.strategy.size());
  }
  auto pad = [](std::string s, size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::string name_header = "Strategy";
  name_header.resize(width, ' ');
  std::string out = "# " + ProvenanceLine(provenance) + "\n";
  out += name_header + pad("R-1", 8) + pad("R-2", 8) + pad("R-L", 8) +
         pad("Mean", 8) + pad("Gain", 9) + "\n";
  for (const auto& s : report.strategies) {
    std::string name = s.strategy;
    name.resize(width, ' ');
    const std::string gain =
        s.gain_pct ? Format("%+.2f%%", *s.gain_pct) : std::string("n/a");
    out += name + pad(Format("%.2f", 100.0 * s.rouge1), 8) +
           pad(Format("%.2f", 100.0 * s.rouge2), 8) +
           pad(Format("%.2f", 100.0 * s.rouge_lsum), 8) +
           pad(Format("%.2f", 100.0 * s.mean), 8) + pad(gain, 9) + "\n";
  }
  return out;
}

void WriteEvaluationReport(const std::filesystem::path& directory,
                           const EvaluationReport& report,
                           const Provenance& provenance) {
  WriteFileAtomic(directory / "report.csv", SerializeReportCsv(report, provenance));
  WriteFileAtomic(directory / "recall.csv", SerializeRecallCsv(report, provenance));
  WriteFileAtomic(directory / "overlap.csv",
                  SerializeOverlapCsv(report, provenance));
  WriteFileAtomic(directory / "abstractiveness.csv",
                  SerializeAbstractivenessCsv(report, provenance));
  WriteFileAtomic(directory / "report.txt",
                  SerializeReportTable(report, provenance));
}

}  // namespace summrank
