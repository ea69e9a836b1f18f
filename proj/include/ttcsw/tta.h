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

#ifndef TTCSW_TTA_H_
#define TTCSW_TTA_H_

// Test-time augmentation: code-switch the target-language input around
// aligned phrases, predict on every variant, map candidate terms back into
// the target language and vote.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/artifact.h"
#include "ttcsw/backends.h"
#include "ttcsw/corpus.h"
#include "ttcsw/text.h"

namespace ttcsw {

struct TtaConfig {
  std::size_t max_ngram = 3;
  std::size_t top_k_phrases = 10;
  std::size_t n_candidates = 10;
  double vote_threshold = 0.5;
  double min_support_fraction = 0.5;
  std::uint64_t seed = 0;
  // Language of the translated (pivot) sentence.
  std::string source_lang = "en";
  // Abort on backend failure instead of falling back to the plain prediction.
  bool strict = false;

  // Throws std::invalid_argument on out-of-range values.
  void Validate() const;
};

struct Phrase {
  std::string text;  // tokens joined by single spaces
  Span span;         // bytes in the sentence
  std::size_t token_begin = 0;
  std::size_t n_tokens = 0;
};

// Contiguous n-grams with 1 <= n <= max_ngram, by start token then length;
// repeated texts keep their first position.
std::vector<Phrase> EnumeratePhrases(std::string_view sentence, std::size_t max_ngram);

enum class PhraseSide { kSource, kTarget };

struct AlignedPhrase {
  std::string phrase;
  PhraseSide source_side = PhraseSide::kSource;
  Span phrase_span;
  std::string aligned_text;
  // Location of aligned_text in the opposite sentence.
  std::optional<Span> aligned_span;
  std::size_t length_tokens = 0;
  std::size_t position = 0;

  // The source-language / target-language member of the pair.
  const std::string& source_text() const {
    return source_side == PhraseSide::kSource ? phrase : aligned_text;
  }
  const std::string& target_text() const {
    return source_side == PhraseSide::kSource ? aligned_text : phrase;
  }
};

// Queries the aligner with "s_tgt <SEP> phrase" for phrases of s_src and
// "s_src <SEP> phrase" for phrases of s_tgt, keeps non-None answers and
// returns the top_k longest (ties: source side first, then position).
std::vector<AlignedPhrase> SelectCandidates(std::string_view s_tgt, std::string_view s_src,
                                            Backend& aligner, const TtaConfig& config,
                                            std::string_view target_lang);

enum class AugmentationType { kTgtWithSrcPhrase, kSrcWithTgtPhrase };
std::string_view AugmentationTypeName(AugmentationType type);

struct AugmentedInput {
  std::string sentence;
  AugmentationType type = AugmentationType::kTgtWithSrcPhrase;
  AlignedPhrase provenance;
  // Text inserted by the substitution and its bytes in `sentence`.
  std::string substituted;
  Span substituted_span;
};

// One substitution per augmented sentence; both types per phrase in rank
// order, truncated to n_candidates. Phrases whose counterpart cannot be
// located are skipped and reported in `notes`.
std::vector<AugmentedInput> BuildAugmentedInputs(std::string_view s_tgt, std::string_view s_src,
                                                 const std::vector<AlignedPhrase>& phrases,
                                                 std::size_t n_candidates,
                                                 std::vector<std::string>* notes = nullptr);

struct CandidateSet {
  std::vector<Triplet> triplets;
  // Per triplet: aspect / opinion kept untranslated because the aligner
  // answered None.
  std::vector<std::pair<bool, bool>> unalignable;
  std::size_t n_unalignable = 0;
  std::size_t n_aligner_queries = 0;
};

// Maps source-language terms of candidates predicted on `input` into the
// target language. Terms equal to a known phrase pair are mapped through
// `known`; other source-language terms are queried as "s_tgt <SEP> term".
CandidateSet AlignCandidates(const std::vector<Triplet>& raw, const AugmentedInput& input,
                             std::string_view s_tgt, Backend& aligner,
                             const std::vector<AlignedPhrase>& known,
                             std::string_view target_lang);

// Clusters triplets across lists and keeps clusters supported by at least
// ceil(min_support_fraction * K) lists.
std::vector<Triplet> Vote(const std::vector<std::vector<Triplet>>& candidate_lists,
                          const TtaConfig& config);

struct PredictionDiagnostics {
  std::size_t n_augmented = 0;
  std::size_t n_unalignable = 0;
  bool fell_back = false;
  std::vector<std::string> notes;
};

struct Prediction {
  std::string id;
  std::vector<Triplet> triplets;
  PredictionDiagnostics diagnostics;
};

struct TtaBackends {
  Backend* translator = nullptr;
  Backend* aligner = nullptr;
  Backend* generator = nullptr;
};

// Plain prediction: one generation call on the unmodified input.
Prediction PlainPredict(const Sample& sample, Backend& generator, std::string_view target_lang);

Prediction TtaPredict(const Sample& sample, const TtaBackends& backends,
                      const TtaConfig& config, std::string_view target_lang);

std::vector<Prediction> PredictCorpus(const Corpus& corpus, Backend& generator,
                                      std::size_t jobs);
std::vector<Prediction> TtaPredictCorpus(const Corpus& corpus, const TtaBackends& backends,
                                         const TtaConfig& config, std::size_t jobs);

// The header kind is set to "predictions".
std::string PredictionsToString(const std::vector<Prediction>& predictions,
                                ArtifactHeader header);
std::vector<Prediction> PredictionsFromString(std::string_view content);

}  // namespace ttcsw

#endif  // TTCSW_TTA_H_
