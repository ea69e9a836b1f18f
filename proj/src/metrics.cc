// Copyright 2026 The ttcsw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttcsw/metrics.h"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "json.hpp"
#include "ttcsw/error.h"

namespace ttcsw {
namespace {

struct PreparedTriplet {
  std::vector<std::string> aspect;
  std::vector<std::string> opinion;
  Polarity polarity;
};

PreparedTriplet Prepare(const Triplet& t) {
  return {NormalizedWords(t.aspect), NormalizedWords(t.opinion), t.polarity};
}

std::size_t OverlapWords(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& w : b) ++counts[w];
  std::size_t n = 0;
  for (const auto& w : a) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++n;
    }
  }
  return n;
}

double PreparedSimilarity(const PreparedTriplet& t1, const PreparedTriplet& t2,
                          const MetricsOptions& options) {
  if (!options.ignore_polarity && t1.polarity != t2.polarity) return 0.0;
  const bool has_a = !t1.aspect.empty();
  const bool has_o = !t1.opinion.empty();
  if (!has_a && !has_o) {
    return (t2.aspect.empty() && t2.opinion.empty()) ? 1.0 : 0.0;
  }
  auto part = [](const std::vector<std::string>& x1, const std::vector<std::string>& x2) {
    return static_cast<double>(OverlapWords(x1, x2)) / static_cast<double>(x1.size());
  };
  if (has_a && has_o) {
    return part(t1.opinion, t2.opinion) / 2.0 + part(t1.aspect, t2.aspect) / 2.0;
  }
  const double single =
      has_a ? part(t1.aspect, t2.aspect) : part(t1.opinion, t2.opinion);
  return options.half_weight_single_slot ? single / 2.0 : single;
}

std::vector<PreparedTriplet> PrepareList(const std::vector<Triplet>& list,
                                         bool empty_convention) {
  std::vector<PreparedTriplet> out;
  out.reserve(list.size());
  for (const Triplet& t : list) out.push_back(Prepare(t));
  if (out.empty() && empty_convention) out.push_back(Prepare(EmptyTriplet()));
  return out;
}

double F1(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

std::size_t Overlap(std::string_view a, std::string_view b) {
  return OverlapWords(NormalizedWords(a), NormalizedWords(b));
}

double Similarity(const Triplet& first, const Triplet& second,
                  const MetricsOptions& options) {
  return PreparedSimilarity(Prepare(first), Prepare(second), options);
}

WeightedScore WeightedScores(const TripletLists& predictions, const TripletLists& golds,
                             const MetricsOptions& options) {
  if (predictions.size() != golds.size()) {
    throw std::invalid_argument("WeightedScores: prediction and gold sample counts differ");
  }
  WeightedScore s;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const auto pred = PrepareList(predictions[i], options.empty_list_convention);
    const auto gold = PrepareList(golds[i], options.empty_list_convention);
    s.n_pred_triplets += pred.size();
    s.n_gold_triplets += gold.size();
    for (const auto& p : pred) {
      double best = 0.0;
      for (const auto& g : gold) best = std::max(best, PreparedSimilarity(p, g, options));
      s.precision_sum += best;
    }
    for (const auto& g : gold) {
      double best = 0.0;
      for (const auto& p : pred) best = std::max(best, PreparedSimilarity(g, p, options));
      s.recall_sum += best;
    }
  }
  s.precision = s.n_pred_triplets ? s.precision_sum / static_cast<double>(s.n_pred_triplets) : 0.0;
  s.recall = s.n_gold_triplets ? s.recall_sum / static_cast<double>(s.n_gold_triplets) : 0.0;
  s.f1 = F1(s.precision, s.recall);
  return s;
}

MetricsReport Evaluate(const TripletLists& predictions, const TripletLists& golds,
                       const MetricsOptions& options) {
  MetricsOptions polar = options;
  polar.ignore_polarity = false;
  MetricsOptions non_polar = options;
  non_polar.ignore_polarity = true;
  const WeightedScore p = WeightedScores(predictions, golds, polar);
  const WeightedScore np = WeightedScores(predictions, golds, non_polar);
  MetricsReport r;
  r.wP = p.precision;
  r.wR = p.recall;
  r.wF1 = p.f1;
  r.np_wP = np.precision;
  r.np_wR = np.recall;
  r.np_wF1 = np.f1;
  r.n_pred_triplets = p.n_pred_triplets;
  r.n_gold_triplets = p.n_gold_triplets;
  r.n_samples = golds.size();
  return r;
}

MetricsReport EvaluateById(const std::map<std::string, std::vector<Triplet>>& predictions,
                           const Corpus& gold, const MetricsOptions& options) {
  TripletLists preds;
  TripletLists golds;
  preds.reserve(gold.samples.size());
  golds.reserve(gold.samples.size());
  for (const Sample& s : gold.samples) {
    auto it = predictions.find(s.id);
    if (it == predictions.end()) throw DataError("no prediction for sample id " + s.id);
    preds.push_back(it->second);
    golds.push_back(s.gold);
  }
  if (predictions.size() != gold.samples.size()) {
    throw DataError("predictions contain ids that are not in the gold corpus");
  }
  return Evaluate(preds, golds, options);
}

MetricsReport AllNullBaseline(const Corpus& corpus, const MetricsOptions& options) {
  TripletLists golds;
  golds.reserve(corpus.samples.size());
  for (const Sample& s : corpus.samples) golds.push_back(s.gold);
  return Evaluate(TripletLists(golds.size()), golds, options);
}

std::string FormatMetricsTable(
    const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-20s %6s %6s %6s %6s %6s %6s %8s %8s\n", "dataset",
                "wP", "wR", "wF1", "NP-wP", "NP-wR", "NP-wF1", "#pred", "#gold");
  out += buf;
  for (const auto& [name, r] : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%-20s %6.1f %6.1f %6.1f %6.1f %6.1f %6.1f %8zu %8zu\n",
                  name.c_str(), 100 * r.wP, 100 * r.wR, 100 * r.wF1, 100 * r.np_wP,
                  100 * r.np_wR, 100 * r.np_wF1, r.n_pred_triplets, r.n_gold_triplets);
    out += buf;
  }
  return out;
}

std::string MetricsToJson(const std::vector<std::pair<std::string, MetricsReport>>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [name, r] : rows) {
    arr.push_back({{"dataset", name},
                   {"wP", r.wP},
                   {"wR", r.wR},
                   {"wF1", r.wF1},
                   {"NP_wP", r.np_wP},
                   {"NP_wR", r.np_wR},
                   {"NP_wF1", r.np_wF1},
                   {"n_pred_triplets", r.n_pred_triplets},
                   {"n_gold_triplets", r.n_gold_triplets},
                   {"n_samples", r.n_samples}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace ttcsw
