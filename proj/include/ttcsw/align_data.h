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

#ifndef TTCSW_ALIGN_DATA_H_
#define TTCSW_ALIGN_DATA_H_

// Training examples for the alignment model: "chunk <SEP> query" mapped to
// the counterpart surface in the chunk, or "None".

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/boundary_csw.h"
#include "ttcsw/corpus.h"

namespace ttcsw {

enum class AlignDirection { kSourceToTarget, kTargetToSource };
std::string_view AlignDirectionName(AlignDirection direction);

struct AlignmentExample {
  std::string input_text;
  std::string label;
  std::string sample_id;
  TermKind kind = TermKind::kAspect;
  AlignDirection direction = AlignDirection::kSourceToTarget;
  bool corrupted = false;

  friend bool operator==(const AlignmentExample&, const AlignmentExample&) = default;
};

// Windows of at most `window` whitespace tokens, `stride` tokens apart; the
// last partial window is kept. Chunks are surface substrings of `text`.
std::vector<std::string> ChunkSentence(std::string_view text, std::size_t window,
                                       std::size_t stride);

struct AlignDataOptions {
  std::size_t window = 128;
  // 0 selects window / 2.
  std::size_t stride = 0;
  double corrupt_rate = 0.1;
  std::uint64_t seed = 0;
};

// Source-language sentences come from `source`, their translations from
// `translated`, both looked up by sample id. Each pair yields examples in
// both directions for every chunk.
std::vector<AlignmentExample> BuildAlignmentExamples(
    const std::vector<ParallelTermPair>& pairs, const Corpus& source,
    const Corpus& translated, const AlignDataOptions& options);

std::string AlignmentExamplesToString(const std::vector<AlignmentExample>& examples,
                                      std::uint64_t seed, std::string_view config_digest);
std::vector<AlignmentExample> AlignmentExamplesFromString(std::string_view content);

}  // namespace ttcsw

#endif  // TTCSW_ALIGN_DATA_H_
