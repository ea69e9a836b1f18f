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

#ifndef TTCSW_TEXT_H_
#define TTCSW_TEXT_H_

// Whitespace tokenization, term normalization and small text utilities used
// by every pipeline stage. All offsets are byte offsets into UTF-8 text.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ttcsw {

// Half-open byte range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool Overlaps(const Span& o) const { return begin < o.end && o.begin < end; }
  bool Contains(const Span& o) const { return begin <= o.begin && o.end <= end; }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

bool IsSpace(char c);

std::string_view Trim(std::string_view s);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view s);

// Maximal runs of non-space bytes.
std::vector<Span> TokenSpans(std::string_view text);
std::vector<std::string> Tokenize(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercases ASCII and the Latin-1 supplement letters (U+00C0..U+00DE),
// which covers the accented letters of the supported languages. Byte length
// is preserved, so offsets into the result are offsets into the input.
std::string ToLower(std::string_view s);

// Strips leading and trailing punctuation (ASCII plus common Unicode
// quotes, inverted marks and ellipsis) from a token.
std::string_view StripPunctuation(std::string_view token);

// Lowercased, punctuation-stripped word tokens; empty words are dropped.
std::vector<std::string> NormalizedWords(std::string_view term);

// Finds `needle` in `haystack` ignoring case and whitespace differences.
// A match must begin at a token start and end at a token end or before
// trailing punctuation. Returns the byte range in `haystack`.
std::optional<Span> FindTerm(std::string_view haystack, std::string_view needle,
                             std::size_t from = 0);

// Converts a code point offset to a byte offset; nullopt past the end.
std::optional<std::size_t> CodepointToByteOffset(std::string_view text,
                                                 std::size_t codepoint);

bool IsValidUtf8(std::string_view s);

// A replacement of `span` in some base text by `text`.
struct Edit {
  Span span;
  std::string text;
};

// Applies non-overlapping edits (any order) to `base`.
std::string ApplyEdits(std::string_view base, std::vector<Edit> edits);

// Maps `range` of the base text through `edits`. Edits must lie fully
// inside or fully outside the range.
Span MapSpan(Span range, const std::vector<Edit>& edits);

// 64-bit FNV-1a, stable across platforms and runs.
std::uint64_t StableHash(std::string_view s);
std::uint64_t MixSeed(std::uint64_t seed, std::string_view salt);

// Deterministic generator; draws do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n); n > 0.
  std::size_t Index(std::size_t n);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ttcsw

#endif  // TTCSW_TEXT_H_
