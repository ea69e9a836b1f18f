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

#ifndef TTCSW_CORPUS_H_
#define TTCSW_CORPUS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/text.h"

namespace ttcsw {

enum class Polarity { kPositive, kNegative, kNeutral, kNone };

// Wire rendering: POS | NEG | NEU | NONE.
std::string_view PolarityCode(Polarity p);
// Accepts the wire codes and the dataset labels (Positive, Negative,
// Neutral), case-insensitively.
std::optional<Polarity> ParsePolarity(std::string_view label);

// (aspect term, opinion term, polarity). Either term may be empty.
struct Triplet {
  std::string aspect;
  std::string opinion;
  Polarity polarity = Polarity::kNone;

  bool IsEmpty() const { return aspect.empty() && opinion.empty(); }
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// The placeholder inserted for empty triplet lists before scoring.
inline Triplet EmptyTriplet() { return {"", "", Polarity::kNone}; }

// Source spans of one gold triplet's terms. Byte offsets into Sample::text;
// several spans when the annotation is discontinuous.
struct TermSpans {
  std::vector<Span> aspect;
  std::vector<Span> opinion;
  friend bool operator==(const TermSpans&, const TermSpans&) = default;
};

struct Sample {
  std::string id;
  std::string text;
  std::string language;
  std::vector<Triplet> gold;
  // Empty, or parallel to `gold`.
  std::vector<TermSpans> spans;

  friend bool operator==(const Sample&, const Sample&) = default;
};

enum class Split { kTrain, kValidation, kTest };
std::string_view SplitName(Split s);
std::optional<Split> ParseSplit(std::string_view name);

struct Corpus {
  std::string name;
  std::string language;
  Split split = Split::kTest;
  bool code_switched = false;
  std::vector<Sample> samples;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct StatsReport {
  std::size_t n_sentences = 0;
  std::size_t n_aspects = 0;   // non-empty aspect slots, per triplet
  std::size_t n_opinions = 0;  // non-empty opinion slots, per triplet
  std::size_t n_triplets = 0;
  double empty_label_rate = 0.0;
  // Alternative counting: distinct (text, span) terms within each sample.
  std::size_t n_unique_aspects = 0;
  std::size_t n_unique_opinions = 0;
};

StatsReport CorpusStats(const Corpus& corpus);

struct IngestDiagnostics {
  std::size_t malformed_records = 0;
  std::size_t unknown_polarity = 0;
  std::size_t empty_triplets = 0;
  std::size_t span_mismatches = 0;
  std::vector<std::string> notes;
};

// File name of a split inside a task data directory (train.json, dev.json,
// test.json).
std::string SplitFileName(Split split);

// Reads one split of a structured-sentiment dataset directory. Target
// becomes the aspect, Polar_expression the opinion; Source and Intensity
// are dropped. Throws DataError when the split file is missing.
Corpus IngestSemeval(const std::string& dir_path, std::string_view language,
                     Split split, IngestDiagnostics* diagnostics = nullptr);

// Same as above for an already-loaded JSON array of records.
Corpus IngestSemevalJson(std::string_view json_text, std::string_view language,
                         Split split, std::string name,
                         IngestDiagnostics* diagnostics = nullptr);

// Normalized corpus file: a header line followed by one JSON record per
// sample. Written atomically.
void ExportCorpus(const Corpus& corpus, const std::string& path,
                  std::uint64_t seed = 0, std::string_view config_digest = "");
Corpus ImportCorpus(const std::string& path);

std::string CorpusToString(const Corpus& corpus, std::uint64_t seed = 0,
                           std::string_view config_digest = "");
Corpus CorpusFromString(std::string_view content);

// Throws DataError if any term contains a serialization control token.
void CheckNoReservedTokens(const Corpus& corpus);

}  // namespace ttcsw

#endif  // TTCSW_CORPUS_H_
