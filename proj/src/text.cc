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

#include "ttcsw/text.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ttcsw {
namespace {

// Length in bytes of a Unicode punctuation sequence starting at s[i], or 0.
std::size_t UnicodePunctLen(std::string_view s, std::size_t i) {
  static constexpr std::string_view kMarks[] = {
      "\xC2\xA1",      // ¡
      "\xC2\xBF",      // ¿
      "\xC2\xAB",      // «
      "\xC2\xBB",      // »
      "\xE2\x80\x9C",  // “
      "\xE2\x80\x9D",  // ”
      "\xE2\x80\x98",  // ‘
      "\xE2\x80\x99",  // ’
      "\xE2\x80\xA6",  // …
      "\xE2\x80\x93",  // –
      "\xE2\x80\x94",  // —
  };
  for (std::string_view m : kMarks) {
    if (s.substr(i, m.size()) == m) return m.size();
  }
  return 0;
}

bool IsAsciiPunct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

// True when every byte of `s` is punctuation.
bool AllPunctuation(std::string_view s) {
  return StripPunctuation(s).empty();
}

}  // namespace

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string NormalizeWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<Span> TokenSpans(std::string_view text) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    spans.push_back({i, j});
    i = j;
  }
  return spans;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (const Span& s : TokenSpans(text)) {
    tokens.emplace_back(text.substr(s.begin, s.size()));
  }
  return tokens;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      const auto n = static_cast<unsigned char>(out[i + 1]);
      // U+00C0..U+00DE except U+00D7 (multiplication sign).
      if (n >= 0x80 && n <= 0x9E && n != 0x97) {
        out[i + 1] = static_cast<char>(n + 0x20);
      }
      ++i;
    }
  }
  return out;
}

std::string_view StripPunctuation(std::string_view token) {
  bool changed = true;
  while (changed && !token.empty()) {
    changed = false;
    if (IsAsciiPunct(token.front())) {
      token.remove_prefix(1);
      changed = true;
    } else if (std::size_t n = UnicodePunctLen(token, 0); n > 0) {
      token.remove_prefix(n);
      changed = true;
    }
  }
  changed = true;
  while (changed && !token.empty()) {
    changed = false;
    if (IsAsciiPunct(token.back())) {
      token.remove_suffix(1);
      changed = true;
      continue;
    }
    for (std::size_t n : {2u, 3u}) {
      if (token.size() >= n && UnicodePunctLen(token, token.size() - n) == n) {
        token.remove_suffix(n);
        changed = true;
        break;
      }
    }
  }
  return token;
}

std::vector<std::string> NormalizedWords(std::string_view term) {
  std::vector<std::string> words;
  for (const Span& s : TokenSpans(term)) {
    std::string_view core = StripPunctuation(term.substr(s.begin, s.size()));
    if (!core.empty()) words.push_back(ToLower(core));
  }
  return words;
}

std::optional<Span> FindTerm(std::string_view haystack, std::string_view needle,
                             std::size_t from) {
  const std::string lowered_needle = ToLower(needle);
  const std::vector<std::string> want = Tokenize(lowered_needle);
  if (want.empty()) return std::nullopt;
  const std::string hay = ToLower(haystack);
  const std::vector<Span> have = TokenSpans(hay);

  for (std::size_t i = 0; i + want.size() <= have.size(); ++i) {
    if (have[i].begin < from) continue;
    const std::size_t last = want.size() - 1;
    std::size_t match_begin = 0;
    std::size_t match_end = 0;
    bool ok = true;
    for (std::size_t j = 0; j < want.size() && ok; ++j) {
      std::string_view tok(hay.data() + have[i + j].begin, have[i + j].size());
      std::string_view w = want[j];
      std::size_t lead = 0;
      std::size_t trail = 0;
      if (j == 0 && tok.size() > w.size()) {
        // Leading punctuation on the first token is tolerated.
        std::size_t pos = tok.find(w);
        if (pos != std::string_view::npos && AllPunctuation(tok.substr(0, pos))) {
          lead = pos;
        }
      }
      std::string_view rest = tok.substr(lead);
      if (rest.substr(0, w.size()) != w) {
        ok = false;
        break;
      }
      if (rest.size() > w.size()) {
        if (j != last || !AllPunctuation(rest.substr(w.size()))) {
          ok = false;
          break;
        }
        trail = rest.size() - w.size();
      }
      if (j == 0) match_begin = have[i].begin + lead;
      if (j == last) match_end = have[i + j].end - trail;
    }
    if (ok) return Span{match_begin, match_end};
  }
  return std::nullopt;
}

std::optional<std::size_t> CodepointToByteOffset(std::string_view text,
                                                 std::size_t codepoint) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() ||
        (static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      if (seen == codepoint) return i;
      ++seen;
    }
  }
  return std::nullopt;
}

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    if (c < 0x80) n = 0;
    else if ((c & 0xE0) == 0xC0) n = 1;
    else if ((c & 0xF0) == 0xE0) n = 2;
    else if ((c & 0xF8) == 0xF0) n = 3;
    else return false;
    if (n > 0 && i + n >= s.size()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += n + 1;
  }
  return true;
}

std::string ApplyEdits(std::string_view base, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.span < b.span; });
  std::string out;
  std::size_t cursor = 0;
  for (const Edit& e : edits) {
    if (e.span.begin < cursor || e.span.end > base.size()) {
      throw std::invalid_argument("ApplyEdits: overlapping or out-of-range edit");
    }
    out.append(base.substr(cursor, e.span.begin - cursor));
    out.append(e.text);
    cursor = e.span.end;
  }
  out.append(base.substr(cursor));
  return out;
}

Span MapSpan(Span range, const std::vector<Edit>& edits) {
  std::ptrdiff_t shift_begin = 0;
  std::ptrdiff_t shift_end = 0;
  for (const Edit& e : edits) {
    const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(e.text.size()) -
                                 static_cast<std::ptrdiff_t>(e.span.size());
    if (e.span.end <= range.begin && !(e.span.empty() && e.span.begin == range.begin)) {
      shift_begin += delta;
      shift_end += delta;
    } else if (range.Contains(e.span)) {
      shift_end += delta;
    } else if (e.span.begin >= range.end) {
      // after the range
    } else {
      throw std::invalid_argument("MapSpan: edit straddles range boundary");
    }
  }
  return {static_cast<std::size_t>(static_cast<std::ptrdiff_t>(range.begin) + shift_begin),
          static_cast<std::size_t>(static_cast<std::ptrdiff_t>(range.end) + shift_end)};
}

std::uint64_t StableHash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t MixSeed(std::uint64_t seed, std::string_view salt) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed ^ (StableHash(salt) + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t Rng::Index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::Index: n must be positive");
  return static_cast<std::size_t>(Uniform() * static_cast<double>(n)) % n;
}

}  // namespace ttcsw
