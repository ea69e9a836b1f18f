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

#ifndef TTCSW_METRICS_H_
#define TTCSW_METRICS_H_

// Weighted-averaged precision / recall / F1 with partial word-overlap credit,
// and the non-polar (NP) variant that ignores the polarity gate.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttcsw/corpus.h"

namespace ttcsw {

struct MetricsOptions {
  // Drop the polarity gate (boundary-only scoring).
  bool ignore_polarity = false;
  // When only one slot of the first triplet is filled, keep the 1/2 factor
  // instead of renormalizing that slot to full weight.
  bool half_weight_single_slot = false;
  // Replace an empty gold or predicted list by a single empty triplet.
  bool empty_list_convention = true;
};

// Size of the multiset intersection of the normalized words of a and b.
std::size_t Overlap(std::string_view a, std::string_view b);

// Asymmetric similarity in [0, 1]; the first triplet's term lengths set the
// denominators.
double Similarity(const Triplet& first, const Triplet& second,
                  const MetricsOptions& options = {});

struct WeightedScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double precision_sum = 0.0;  // numerator of precision
  double recall_sum = 0.0;     // numerator of recall
  std::size_t n_pred_triplets = 0;
  std::size_t n_gold_triplets = 0;
};

using TripletLists = std::vector<std::vector<Triplet>>;

// Scores per-sample prediction lists against gold lists of the same length.
WeightedScore WeightedScores(const TripletLists& predictions,
                             const TripletLists& golds,
                             const MetricsOptions& options = {});

struct MetricsReport {
  double wP = 0.0;
  double wR = 0.0;
  double wF1 = 0.0;
  double np_wP = 0.0;
  double np_wR = 0.0;
  double np_wF1 = 0.0;
  std::size_t n_pred_triplets = 0;
  std::size_t n_gold_triplets = 0;
  std::size_t n_samples = 0;
};

// Polar and non-polar scores in one report. `options.ignore_polarity` is
// overridden for each half.
MetricsReport Evaluate(const TripletLists& predictions, const TripletLists& golds,
                       const MetricsOptions& options = {});

// Matches predictions to gold samples by id; throws DataError when the id
// sets differ.
MetricsReport EvaluateById(const std::map<std::string, std::vector<Triplet>>& predictions,
                           const Corpus& gold, const MetricsOptions& options = {});

// Scores an empty prediction list for every sample.
MetricsReport AllNullBaseline(const Corpus& corpus, const MetricsOptions& options = {});

// Human-readable table (values x100, one decimal) with one row per dataset.
std::string FormatMetricsTable(
    const std::vector<std::pair<std::string, MetricsReport>>& rows);
// Machine-readable rendering of the same rows.
std::string MetricsToJson(
    const std::vector<std::pair<std::string, MetricsReport>>& rows);

}  // namespace ttcsw

#endif  // TTCSW_METRICS_H_
