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

#ifndef TTCSW_TESTS_SUPPORT_SYNTHETIC_H_
#define TTCSW_TESTS_SUPPORT_SYNTHETIC_H_

// Synthetic English/Spanish review sentences with word-for-word parallel
// translations, a one-to-one lexicon, and oracle backends over them.

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ttcsw/backends.h"
#include "ttcsw/corpus.h"
#include "ttcsw/lexicon.h"

namespace ttcsw::testing {

struct SyntheticBilingual {
  std::string lexicon_tsv;  // english<TAB>spanish
  BilingualLexicon lexicon;
  Corpus source;  // English, with spans
  Corpus target;  // Spanish, same ids, with spans
};

// Sentences are distinct; about one in six has an empty gold list.
SyntheticBilingual MakeSyntheticBilingual(std::size_t n, std::uint64_t seed);

// ASTE generator that recognizes any token-wise mix of a target sentence
// and its translation and answers the gold triplets with each term
// rendered as it appears in the input. Unknown inputs yield "".
class ProjectingOracle : public Backend {
 public:
  explicit ProjectingOracle(const SyntheticBilingual& data);
  std::string Id() const override { return "oracle:projecting"; }

  // Every (input, output) pair answered so far.
  std::map<std::string, std::string> Recorded() const;

 protected:
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  struct Entry {
    std::vector<std::string> target_tokens;
    std::vector<std::string> source_tokens;
    // Per gold triplet: token ranges of aspect and opinion ([b, e)).
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>>
        ranges;
    std::vector<Triplet> gold;
  };
  std::string Answer(const std::string& input) const;

  std::vector<Entry> entries_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> recorded_;
};

// Aligner that always answers "None".
BackendPtr NoneAligner();

// Writes a fixture table (task "aste") for TableBackend::Load.
void WriteAsteFixture(const std::map<std::string, std::string>& table, const std::string& path);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace ttcsw::testing

#endif  // TTCSW_TESTS_SUPPORT_SYNTHETIC_H_
