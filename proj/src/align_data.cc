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

#include "ttcsw/align_data.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "ttcsw/artifact.h"
#include "ttcsw/backends.h"
#include "ttcsw/error.h"
#include "ttcsw/text.h"

namespace ttcsw {
namespace {

constexpr std::string_view kArtifactKind = "alignment-examples";

std::map<std::string, const Sample*> IndexById(const Corpus& corpus) {
  std::map<std::string, const Sample*> index;
  for (const Sample& s : corpus.samples) index.emplace(s.id, &s);
  return index;
}

const Sample& Lookup(const std::map<std::string, const Sample*>& index, const std::string& id,
                     std::string_view corpus_name) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw DataError("sample '" + id + "' missing from corpus '" + std::string(corpus_name) + "'");
  }
  return *it->second;
}

void CheckNoSeparator(std::string_view text, std::string_view what) {
  if (text.find(kSepToken) != std::string_view::npos) {
    throw DataError(std::string(what) + " contains the reserved token " + std::string(kSepToken));
  }
}

}  // namespace

std::string_view AlignDirectionName(AlignDirection direction) {
  return direction == AlignDirection::kSourceToTarget ? "source->target" : "target->source";
}

std::vector<std::string> ChunkSentence(std::string_view text, std::size_t window,
                                       std::size_t stride) {
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  if (stride < 1 || stride > window) throw std::invalid_argument("stride must lie in [1, window]");
  const std::vector<Span> tokens = TokenSpans(text);
  if (tokens.size() <= window) return {std::string(text)};
  std::vector<std::string> chunks;
  for (std::size_t start = 0; start < tokens.size(); start += stride) {
    const std::size_t last = std::min(start + window, tokens.size()) - 1;
    chunks.emplace_back(text.substr(tokens[start].begin, tokens[last].end - tokens[start].begin));
  }
  return chunks;
}

std::vector<AlignmentExample> BuildAlignmentExamples(
    const std::vector<ParallelTermPair>& pairs, const Corpus& source,
    const Corpus& translated, const AlignDataOptions& options) {
  if (!(options.corrupt_rate >= 0.0 && options.corrupt_rate <= 1.0)) {
    throw std::invalid_argument("corrupt_rate must lie in [0, 1]");
  }
  const std::size_t stride = options.stride == 0 ? std::max<std::size_t>(1, options.window / 2)
                                                 : options.stride;
  const auto source_index = IndexById(source);
  const auto translated_index = IndexById(translated);

  std::vector<AlignmentExample> examples;
  auto emit = [&](const std::string& sentence, const std::string& label_term,
                  const std::string& query, const ParallelTermPair& pair,
                  AlignDirection direction) {
    CheckNoSeparator(sentence, "sentence '" + pair.sample_id + "'");
    CheckNoSeparator(query, "term");
    for (const std::string& chunk : ChunkSentence(sentence, options.window, stride)) {
      AlignmentExample ex;
      ex.input_text = AlignmentInput(chunk, query);
      const auto found = FindTerm(chunk, label_term);
      ex.label = found ? chunk.substr(found->begin, found->size()) : std::string(kNoneLabel);
      ex.sample_id = pair.sample_id;
      ex.kind = pair.kind;
      ex.direction = direction;
      examples.push_back(std::move(ex));
    }
  };
  for (const ParallelTermPair& pair : pairs) {
    const Sample& src = Lookup(source_index, pair.sample_id, source.name);
    const Sample& tgt = Lookup(translated_index, pair.sample_id, translated.name);
    emit(src.text, pair.source_term, pair.target_term, pair, AlignDirection::kSourceToTarget);
    emit(tgt.text, pair.target_term, pair.source_term, pair, AlignDirection::kTargetToSource);
  }

  const auto n_corrupt = static_cast<std::size_t>(
      std::llround(options.corrupt_rate * static_cast<double>(examples.size())));
  if (n_corrupt == 0) return examples;

  std::set<std::string> vocab_set;
  for (const Corpus* corpus : {&source, &translated}) {
    for (const Sample& s : corpus->samples) {
      for (std::string& w : NormalizedWords(s.text)) vocab_set.insert(std::move(w));
    }
  }
  vocab_set.erase(std::string(kNoneLabel));
  if (vocab_set.empty()) throw DataError("cannot corrupt queries: the vocabulary is empty");
  const std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());

  Rng rng(MixSeed(options.seed, "align-corrupt"));
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.Index(i)]);
  for (std::size_t k = 0; k < n_corrupt; ++k) {
    AlignmentExample& ex = examples[order[k]];
    const std::size_t sep = ex.input_text.rfind(std::string(" ") + std::string(kSepToken) + " ");
    const std::string chunk = ex.input_text.substr(0, sep);
    ex.input_text = AlignmentInput(chunk, vocab[rng.Index(vocab.size())]);
    ex.label = std::string(kNoneLabel);
    ex.corrupted = true;
  }
  return examples;
}

std::string AlignmentExamplesToString(const std::vector<AlignmentExample>& examples,
                                      std::uint64_t seed, std::string_view config_digest) {
  ArtifactHeader header;
  header.kind = std::string(kArtifactKind);
  header.seed = seed;
  header.config_digest = std::string(config_digest);
  std::string out = HeaderLine(header) + "\n";
  for (const AlignmentExample& ex : examples) {
    nlohmann::ordered_json rec;
    rec["input_text"] = ex.input_text;
    rec["label"] = ex.label;
    rec["meta"] = {{"sample_id", ex.sample_id},
                   {"kind", std::string(TermKindName(ex.kind))},
                   {"direction", std::string(AlignDirectionName(ex.direction))},
                   {"corrupted", ex.corrupted}};
    out += rec.dump() + "\n";
  }
  return out;
}

std::vector<AlignmentExample> AlignmentExamplesFromString(std::string_view content) {
  ArtifactContent art = ParseArtifact(content, kArtifactKind);
  std::vector<AlignmentExample> out;
  for (const auto& [line_no, rec] : art.records) {
    try {
      AlignmentExample ex;
      ex.input_text = rec.at("input_text").get<std::string>();
      ex.label = rec.at("label").get<std::string>();
      const auto& meta = rec.at("meta");
      ex.sample_id = meta.at("sample_id").get<std::string>();
      ex.kind = meta.at("kind").get<std::string>() == "aspect" ? TermKind::kAspect
                                                               : TermKind::kOpinion;
      ex.direction = meta.at("direction").get<std::string>() == "source->target"
                         ? AlignDirection::kSourceToTarget
                         : AlignDirection::kTargetToSource;
      ex.corrupted = meta.value("corrupted", false);
      out.push_back(std::move(ex));
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed example: " + e.what());
    }
  }
  return out;
}

}  // namespace ttcsw
