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

#ifndef TTCSW_LEXICON_H_
#define TTCSW_LEXICON_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ttcsw {

// Bilingual word (or phrase) lexicon, MUSE style: one
// `source<TAB>target` entry per line. Keys are lowercased; a source entry
// may list several targets in file order.
class BilingualLexicon {
 public:
  BilingualLexicon() = default;

  static BilingualLexicon FromTsv(std::string_view content);
  static BilingualLexicon Load(const std::string& path);

  void Add(std::string_view source, std::string_view target);

  // Targets for a source word or phrase; empty when absent.
  const std::vector<std::string>& Lookup(std::string_view source) const;
  bool Contains(std::string_view source) const { return !Lookup(source).empty(); }

  // Longest source entry in tokens.
  std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Target -> source lexicon.
  BilingualLexicon Reversed() const;

  // Translates tokens left to right with longest-match phrase lookup
  // (first listed target). Tokens without an entry are kept; surrounding
  // punctuation is preserved.
  std::string TranslateText(std::string_view text) const;

  // Stable digest of the content, for backend ids.
  std::string Digest() const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::size_t max_phrase_tokens_ = 0;
};

}  // namespace ttcsw

#endif  // TTCSW_LEXICON_H_
