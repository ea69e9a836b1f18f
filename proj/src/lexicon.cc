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

#include "ttcsw/lexicon.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "ttcsw/artifact.h"
#include "ttcsw/error.h"
#include "ttcsw/text.h"

namespace ttcsw {
namespace {

const std::vector<std::string>& NoTargets() {
  static const std::vector<std::string> empty;
  return empty;
}

bool IsOpenMarkup(std::string_view t) {
  return t.size() >= 3 && t.front() == '<' && t.back() == '>' && t[1] != '/';
}
bool IsCloseMarkup(std::string_view t) {
  return t.size() >= 4 && t.front() == '<' && t.back() == '>' && t[1] == '/';
}

struct Piece {
  std::string text;
  bool space_before = false;
};

// Splits markup like <a1> or </o2> off neighbouring text and remembers
// whether each piece was preceded by whitespace.
std::vector<Piece> MarkupAwarePieces(std::string_view text) {
  std::vector<Piece> out;
  bool space = false;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back({std::move(current), space});
    current.clear();
    space = false;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      flush();
      space = !out.empty();
      ++i;
      continue;
    }
    if (c == '<') {
      std::size_t j = i + 1;
      if (j < text.size() && text[j] == '/') ++j;
      const std::size_t name_begin = j;
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '>' && j > name_begin) {
        const bool before = current.empty() && space;
        flush();
        out.push_back({std::string(text.substr(i, j + 1 - i)), before});
        i = j + 1;
        continue;
      }
    }
    current += text[i++];
  }
  flush();
  return out;
}

std::string MatchCase(std::string_view source_core, std::string target) {
  if (!source_core.empty() && std::isupper(static_cast<unsigned char>(source_core[0])) &&
      !target.empty() && std::islower(static_cast<unsigned char>(target[0]))) {
    target[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(target[0])));
  }
  return target;
}

}  // namespace

BilingualLexicon BilingualLexicon::FromTsv(std::string_view content) {
  BilingualLexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      // MUSE dictionaries are sometimes space separated.
      tab = line.find(' ');
    }
    if (tab == std::string_view::npos) {
      throw DataError("lexicon line " + std::to_string(line_no) +
                      ": expected source<TAB>target");
    }
    const std::string_view src = Trim(line.substr(0, tab));
    const std::string_view tgt = Trim(line.substr(tab + 1));
    if (src.empty() || tgt.empty()) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": empty entry");
    }
    lex.Add(src, tgt);
  }
  return lex;
}

BilingualLexicon BilingualLexicon::Load(const std::string& path) {
  try {
    return FromTsv(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void BilingualLexicon::Add(std::string_view source, std::string_view target) {
  const std::string key = ToLower(NormalizeWhitespace(source));
  auto& targets = entries_[key];
  const std::string value = NormalizeWhitespace(target);
  if (std::find(targets.begin(), targets.end(), value) == targets.end()) {
    targets.push_back(value);
  }
  max_phrase_tokens_ = std::max(max_phrase_tokens_, Tokenize(key).size());
}

const std::vector<std::string>& BilingualLexicon::Lookup(std::string_view source) const {
  auto it = entries_.find(ToLower(NormalizeWhitespace(source)));
  return it == entries_.end() ? NoTargets() : it->second;
}

BilingualLexicon BilingualLexicon::Reversed() const {
  BilingualLexicon rev;
  for (const auto& [src, targets] : entries_) {
    for (const auto& tgt : targets) rev.Add(tgt, src);
  }
  return rev;
}

std::string BilingualLexicon::TranslateText(std::string_view text) const {
  const std::vector<Piece> pieces = MarkupAwarePieces(text);
  std::string rendered;
  auto emit = [&](const Piece& source, const std::string& value) {
    if (source.space_before && !rendered.empty()) rendered += ' ';
    rendered += value;
  };
  std::size_t i = 0;
  while (i < pieces.size()) {
    if (IsOpenMarkup(pieces[i].text) || IsCloseMarkup(pieces[i].text)) {
      emit(pieces[i], pieces[i].text);
      ++i;
      continue;
    }
    bool matched = false;
    const std::size_t max_len = std::min(max_phrase_tokens_, pieces.size() - i);
    for (std::size_t len = max_len; len >= 1 && !matched; --len) {
      std::vector<std::string> cores;
      bool ok = true;
      for (std::size_t k = i; k < i + len; ++k) {
        if (IsOpenMarkup(pieces[k].text) || IsCloseMarkup(pieces[k].text) ||
            (k > i && !pieces[k].space_before)) {
          ok = false;
          break;
        }
        std::string_view core = StripPunctuation(pieces[k].text);
        if (core.empty()) {
          ok = false;
          break;
        }
        cores.emplace_back(core);
      }
      if (!ok) continue;
      const auto& targets = Lookup(Join(cores, " "));
      if (targets.empty()) continue;
      const std::string& first = pieces[i].text;
      const std::string& last = pieces[i + len - 1].text;
      const std::size_t lead = std::string_view(first).find(cores.front());
      const std::size_t trail_at =
          std::string_view(last).rfind(cores.back()) + cores.back().size();
      emit(pieces[i], first.substr(0, lead) + MatchCase(cores.front(), targets.front()) +
                          last.substr(trail_at));
      i += len;
      matched = true;
    }
    if (!matched) {
      emit(pieces[i], pieces[i].text);
      ++i;
    }
  }
  return rendered;
}

std::string BilingualLexicon::Digest() const {
  std::string blob;
  for (const auto& [src, targets] : entries_) {
    blob += src;
    for (const auto& t : targets) {
      blob += '\t';
      blob += t;
    }
    blob += '\n';
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(StableHash(blob)));
  return buf;
}

}  // namespace ttcsw
