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

#ifndef TTCSW_BOUNDARY_CSW_H_
#define TTCSW_BOUNDARY_CSW_H_

// Boundary-aware code-switching. Aspect and opinion spans are wrapped in
// indexed tags (<a1>..</a1>, <o1>..</o1>) before translation so that term
// boundaries survive it; the translated terms give bilingual parallel
// phrases and code-switched training samples. Also the dictionary-based
// code-switching baseline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/backends.h"
#include "ttcsw/corpus.h"
#include "ttcsw/lexicon.h"

namespace ttcsw {

enum class TermKind { kAspect, kOpinion };
std::string_view TermKindName(TermKind kind);

struct TagId {
  TermKind kind = TermKind::kAspect;
  int index = 0;  // 1-based
  friend bool operator==(const TagId&, const TagId&) = default;
  friend auto operator<=>(const TagId&, const TagId&) = default;
};

std::string OpenTag(TagId id);
std::string CloseTag(TagId id);

struct TagEntry {
  TagId id;
  // Byte range of the tagged content inside TaggedSentence::text.
  Span content;
};

// Sentence with inline tags and an index of the tagged terms.
struct TaggedSentence {
  std::string text;
  std::vector<TagEntry> index;

  const TagEntry* Find(TagId id) const;
  // Tagged content; empty when the id is absent.
  std::string Term(TagId id) const;
};

// The sentence with all tags removed, and where each term landed.
struct PlainSentence {
  std::string text;
  std::vector<std::pair<TagId, Span>> spans;

  std::optional<Span> Find(TagId id) const;
};

PlainSentence ToPlain(const TaggedSentence& tagged);
std::string StripTags(const TaggedSentence& tagged);

// Checks canonical tag syntax, balance, nesting, index uniqueness and that
// the index matches the text. On failure `why` receives a reason.
bool ValidateTagged(const TaggedSentence& tagged, std::string* why = nullptr);

// Which tag each gold triplet's terms received (nullopt: empty or untagged).
struct TermRef {
  std::optional<TagId> aspect;
  std::optional<TagId> opinion;
};

struct TaggedSample {
  std::string sample_id;
  TaggedSentence sentence;
  std::vector<TermRef> refs;  // parallel to Sample::gold
  std::vector<std::string> notes;
  std::size_t skipped_overlaps = 0;
  // Some term could not be located; the sample cannot be code-switched.
  bool excluded = false;
  // Some non-empty term has no tag (overlap skip or exclusion).
  bool has_untagged_terms = false;
};

// Wraps each unique aspect / opinion span. Indices are assigned per kind in
// left-to-right span order; duplicate spans are tagged once and shared.
// Overlapping spans keep the earlier-starting (then longer) one.
TaggedSample TagSample(const Sample& sample);

struct RepairResult {
  TaggedSentence sentence;
  // Original ids that did not survive.
  std::vector<TagId> dropped;
  std::vector<std::string> notes;
  bool lossy = false;
};

// Recovers tags from translator output: tag matching is case-insensitive
// and whitespace-tolerant; unmatched, duplicated, crossed or empty pairs
// are dropped. When `original` is given, ids absent from it are dropped
// and missing ones make the result lossy.
RepairResult RepairTags(std::string_view raw, const TaggedSentence* original = nullptr);

// Translates a tagged sentence with tag preservation and repairs the result.
RepairResult TranslateTagged(const TaggedSentence& tagged, Backend& translator,
                             std::string_view source_lang, std::string_view target_lang);

struct ParallelTermPair {
  std::string source_term;
  std::string target_term;
  TermKind kind = TermKind::kAspect;
  std::string sample_id;
  std::string source_lang;
  std::string target_lang;
  friend bool operator==(const ParallelTermPair&, const ParallelTermPair&) = default;
};

// One pair per index present on both sides with non-empty terms.
std::vector<ParallelTermPair> ExtractParallelTerms(const TaggedSentence& original,
                                                   const TaggedSentence& translated,
                                                   std::string_view sample_id,
                                                   std::string_view source_lang,
                                                   std::string_view target_lang);

enum class CswMode { kCT, kCSW, kDictCSW };
std::string_view CswModeName(CswMode mode);

struct SwitchedTerm {
  TermKind kind = TermKind::kAspect;
  std::string source_text;
  std::string target_text;
};

// Per-sample provenance of a code-switched corpus.
struct CswProvenance {
  std::string sample_id;
  CswMode mode = CswMode::kCSW;
  // Language of each gold term, parallel to gold ("" for empty terms).
  std::vector<std::pair<std::string, std::string>> term_languages;
  std::vector<SwitchedTerm> switched;
};

struct CswCorpus {
  Corpus corpus;
  std::vector<CswProvenance> provenance;  // parallel to corpus.samples
};

struct CswBuildOptions {
  // Per-term switch probability.
  double switch_rate = 0.5;
  std::uint64_t seed = 0;
  // Strict mode excludes samples that lost any tag in translation.
  bool strict = true;
  std::size_t jobs = 1;
};

struct CswBuildResult {
  CswCorpus translated;     // CT: full translation with translated gold
  CswCorpus code_switched;  // CSW: source sentences with switched terms
  std::vector<ParallelTermPair> pairs;
  std::vector<std::string> excluded_ids;
  std::size_t n_lossy = 0;
  std::vector<std::string> notes;
};

CswBuildResult BuildCswCorpus(const Corpus& corpus, Backend& translator,
                              std::string_view target_lang, const CswBuildOptions& options);

enum class DictStrategy { kStatic, kDynamic };

struct DictCswOptions {
  double ratio = 0.3;
  DictStrategy strategy = DictStrategy::kStatic;
  std::uint64_t seed = 0;
  // Only used by the dynamic strategy.
  std::uint64_t epoch = 0;
};

// Switches each word with probability `ratio` through the lexicon; gold
// terms are re-derived from the switched sentence.
CswCorpus BuildDictCsw(const Corpus& corpus, const BilingualLexicon& lexicon,
                       const DictCswOptions& options);

// Provenance side-file: one JSON record per sample.
std::string ProvenanceToString(const std::vector<CswProvenance>& provenance,
                               std::uint64_t seed = 0, std::string_view config_digest = "");
std::vector<CswProvenance> ProvenanceFromString(std::string_view content);

std::string PairsToString(const std::vector<ParallelTermPair>& pairs, std::uint64_t seed = 0,
                          std::string_view config_digest = "");
std::vector<ParallelTermPair> PairsFromString(std::string_view content);

}  // namespace ttcsw

#endif  // TTCSW_BOUNDARY_CSW_H_
