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

#include "ttcsw/corpus.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <tuple>
#include <unordered_set>

#include "json.hpp"
#include "ttcsw/artifact.h"
#include "ttcsw/error.h"
#include "ttcsw/triplet_serde.h"

namespace ttcsw {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kCorpusArtifact = "corpus";

void Note(IngestDiagnostics* d, std::string msg) {
  if (d != nullptr && d->notes.size() < 200) d->notes.push_back(std::move(msg));
}

// One annotated term: [[texts...], ["b:e", ...]] with code point offsets.
struct RawTerm {
  std::string text;
  std::vector<Span> spans;
  bool spans_ok = true;
};

RawTerm ReadTerm(const json& field, const std::string& sentence) {
  if (!field.is_array() || field.size() != 2 || !field[0].is_array() ||
      !field[1].is_array() || field[0].size() != field[1].size()) {
    throw std::invalid_argument("term field must be [[texts], [offsets]]");
  }
  RawTerm term;
  std::vector<std::string> pieces;
  for (std::size_t i = 0; i < field[0].size(); ++i) {
    const std::string piece = NormalizeWhitespace(field[0][i].get<std::string>());
    const std::string offsets = field[1][i].get<std::string>();
    const std::size_t colon = offsets.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("offset must be 'begin:end': " + offsets);
    }
    const std::size_t cb = std::stoul(offsets.substr(0, colon));
    const std::size_t ce = std::stoul(offsets.substr(colon + 1));
    if (piece.empty() || cb == ce) continue;  // zero-length -> empty term
    pieces.push_back(piece);
    const auto b = CodepointToByteOffset(sentence, cb);
    const auto e = CodepointToByteOffset(sentence, ce);
    if (!b || !e || *b > *e ||
        NormalizeWhitespace(std::string_view(sentence).substr(*b, *e - *b)) !=
            piece) {
      term.spans_ok = false;
    } else {
      term.spans.push_back({*b, *e});
    }
  }
  // Multi-span terms are joined in document order.
  if (term.spans_ok && term.spans.size() > 1) {
    std::vector<std::size_t> order(term.spans.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return term.spans[a] < term.spans[b];
    });
    std::vector<std::string> sorted_pieces;
    std::vector<Span> sorted_spans;
    for (std::size_t i : order) {
      sorted_pieces.push_back(pieces[i]);
      sorted_spans.push_back(term.spans[i]);
    }
    pieces = std::move(sorted_pieces);
    term.spans = std::move(sorted_spans);
  }
  if (!term.spans_ok) term.spans.clear();
  term.text = Join(pieces, " ");
  return term;
}

ordered_json SpansToJson(const std::vector<Span>& spans) {
  ordered_json arr = ordered_json::array();
  for (const Span& s : spans) arr.push_back({s.begin, s.end});
  return arr;
}

std::vector<Span> SpansFromJson(const json& j) {
  std::vector<Span> spans;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("span must be [begin, end]");
    }
    spans.push_back({pair[0].get<std::size_t>(), pair[1].get<std::size_t>()});
  }
  return spans;
}

}  // namespace

std::string_view PolarityCode(Polarity p) {
  switch (p) {
    case Polarity::kPositive:
      return "POS";
    case Polarity::kNegative:
      return "NEG";
    case Polarity::kNeutral:
      return "NEU";
    case Polarity::kNone:
      return "NONE";
  }
  return "NONE";
}

std::optional<Polarity> ParsePolarity(std::string_view label) {
  const std::string l = ToLower(Trim(label));
  if (l == "pos" || l == "positive") return Polarity::kPositive;
  if (l == "neg" || l == "negative") return Polarity::kNegative;
  if (l == "neu" || l == "neutral") return Polarity::kNeutral;
  if (l == "none") return Polarity::kNone;
  return std::nullopt;
}

std::string_view SplitName(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "test";
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "dev") return Split::kValidation;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::string SplitFileName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train.json";
    case Split::kValidation:
      return "dev.json";
    case Split::kTest:
      return "test.json";
  }
  return "test.json";
}

StatsReport CorpusStats(const Corpus& corpus) {
  StatsReport r;
  std::size_t empty = 0;
  for (const Sample& s : corpus.samples) {
    ++r.n_sentences;
    if (s.gold.empty()) ++empty;
    std::set<std::tuple<std::string, std::vector<Span>>> aspects;
    std::set<std::tuple<std::string, std::vector<Span>>> opinions;
    for (std::size_t i = 0; i < s.gold.size(); ++i) {
      const Triplet& t = s.gold[i];
      ++r.n_triplets;
      const TermSpans* spans = i < s.spans.size() ? &s.spans[i] : nullptr;
      if (!t.aspect.empty()) {
        ++r.n_aspects;
        aspects.emplace(t.aspect, spans ? spans->aspect : std::vector<Span>{});
      }
      if (!t.opinion.empty()) {
        ++r.n_opinions;
        opinions.emplace(t.opinion, spans ? spans->opinion : std::vector<Span>{});
      }
    }
    r.n_unique_aspects += aspects.size();
    r.n_unique_opinions += opinions.size();
  }
  r.empty_label_rate =
      r.n_sentences == 0 ? 0.0
                         : static_cast<double>(empty) / static_cast<double>(r.n_sentences);
  return r;
}

Corpus IngestSemevalJson(std::string_view json_text, std::string_view language,
                         Split split, std::string name,
                         IngestDiagnostics* diagnostics) {
  json records;
  try {
    records = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DataError(name + ": not a JSON document: " + e.what());
  }
  if (!records.is_array()) throw DataError(name + ": expected a JSON array");

  Corpus corpus;
  corpus.name = std::move(name);
  corpus.language = std::string(language);
  corpus.split = split;
  std::unordered_set<std::string> seen_ids;

  for (std::size_t r = 0; r < records.size(); ++r) {
    const json& rec = records[r];
    Sample sample;
    bool any_spans = false;
    try {
      if (!rec.is_object()) throw std::invalid_argument("record is not an object");
      sample.id = rec.at("sent_id").get<std::string>();
      sample.text = rec.at("text").get<std::string>();
      sample.language = corpus.language;
      if (!seen_ids.insert(sample.id).second) {
        throw std::invalid_argument("duplicate sent_id " + sample.id);
      }
      const json& opinions = rec.contains("opinions") ? rec["opinions"] : json::array();
      if (!opinions.is_array()) throw std::invalid_argument("opinions is not a list");
      for (const json& op : opinions) {
        RawTerm aspect = ReadTerm(op.at("Target"), sample.text);
        RawTerm opinion = ReadTerm(op.at("Polar_expression"), sample.text);
        const json& pol = op.at("Polarity");
        const auto polarity =
            pol.is_string() ? ParsePolarity(pol.get<std::string>()) : std::nullopt;
        if (!polarity || *polarity == Polarity::kNone) {
          if (diagnostics) ++diagnostics->unknown_polarity;
          Note(diagnostics, sample.id + ": unknown polarity " + pol.dump());
          continue;
        }
        if (aspect.text.empty() && opinion.text.empty()) {
          if (diagnostics) ++diagnostics->empty_triplets;
          Note(diagnostics, sample.id + ": opinion with no target and no expression");
          continue;
        }
        if (!aspect.spans_ok || !opinion.spans_ok) {
          if (diagnostics) ++diagnostics->span_mismatches;
          Note(diagnostics, sample.id + ": span offsets do not match term text");
        }
        sample.gold.push_back({aspect.text, opinion.text, *polarity});
        sample.spans.push_back({aspect.spans, opinion.spans});
        any_spans = any_spans || !aspect.spans.empty() || !opinion.spans.empty();
      }
    } catch (const std::exception& e) {
      if (diagnostics) ++diagnostics->malformed_records;
      Note(diagnostics, "record " + std::to_string(r) + ": " + e.what());
      continue;
    }
    if (!any_spans) sample.spans.clear();
    corpus.samples.push_back(std::move(sample));
  }
  return corpus;
}

Corpus IngestSemeval(const std::string& dir_path, std::string_view language,
                     Split split, IngestDiagnostics* diagnostics) {
  namespace fs = std::filesystem;
  const fs::path dir(dir_path);
  if (!fs::is_directory(dir)) throw DataError("not a dataset directory: " + dir_path);
  const fs::path file = dir / SplitFileName(split);
  if (!fs::exists(file)) throw DataError("missing split file: " + file.string());
  return IngestSemevalJson(ReadFile(file.string()), language, split,
                           dir.filename().string(), diagnostics);
}

std::string CorpusToString(const Corpus& corpus, std::uint64_t seed,
                           std::string_view config_digest) {
  ArtifactHeader header;
  header.kind = std::string(kCorpusArtifact);
  header.seed = seed;
  header.config_digest = std::string(config_digest);
  header.extra["name"] = corpus.name;
  header.extra["language"] = corpus.language;
  header.extra["split"] = std::string(SplitName(corpus.split));
  header.extra["code_switched"] = corpus.code_switched;

  std::string out = HeaderLine(header);
  out.push_back('\n');
  for (const Sample& s : corpus.samples) {
    ordered_json rec;
    rec["id"] = s.id;
    rec["text"] = s.text;
    rec["language"] = s.language;
    ordered_json gold = ordered_json::array();
    for (const Triplet& t : s.gold) {
      gold.push_back({{"aspect", t.aspect},
                      {"opinion", t.opinion},
                      {"polarity", std::string(PolarityCode(t.polarity))}});
    }
    rec["gold"] = std::move(gold);
    if (!s.spans.empty()) {
      ordered_json spans = ordered_json::array();
      for (const TermSpans& ts : s.spans) {
        spans.push_back(
            {{"aspect", SpansToJson(ts.aspect)}, {"opinion", SpansToJson(ts.opinion)}});
      }
      rec["spans"] = std::move(spans);
    }
    out += rec.dump();
    out.push_back('\n');
  }
  return out;
}

Corpus CorpusFromString(std::string_view content) {
  ArtifactContent art = ParseArtifact(content, kCorpusArtifact);
  Corpus corpus;
  try {
    corpus.name = art.header.extra.value("name", std::string());
    corpus.language = art.header.extra.value("language", std::string());
    corpus.code_switched = art.header.extra.value("code_switched", false);
    const auto split = ParseSplit(art.header.extra.value("split", std::string("test")));
    if (!split) throw DataError("header: unknown split");
    corpus.split = *split;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("header: ") + e.what());
  }
  std::unordered_set<std::string> ids;
  for (auto& [line_no, rec] : art.records) {
    try {
      Sample s;
      s.id = rec.at("id").get<std::string>();
      s.text = rec.at("text").get<std::string>();
      s.language = rec.at("language").get<std::string>();
      for (const auto& t : rec.at("gold")) {
        const auto pol = ParsePolarity(t.at("polarity").get<std::string>());
        if (!pol) throw std::invalid_argument("unknown polarity");
        s.gold.push_back({t.at("aspect").get<std::string>(),
                          t.at("opinion").get<std::string>(), *pol});
      }
      if (rec.contains("spans")) {
        for (const auto& ts : rec["spans"]) {
          s.spans.push_back({SpansFromJson(ts.at("aspect")),
                             SpansFromJson(ts.at("opinion"))});
        }
        if (s.spans.size() != s.gold.size()) {
          throw std::invalid_argument("spans not parallel to gold");
        }
      }
      if (!ids.insert(s.id).second) throw std::invalid_argument("duplicate id " + s.id);
      corpus.samples.push_back(std::move(s));
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed record: " +
                      e.what());
    }
  }
  return corpus;
}

void ExportCorpus(const Corpus& corpus, const std::string& path, std::uint64_t seed,
                  std::string_view config_digest) {
  WriteFileAtomic(path, CorpusToString(corpus, seed, config_digest));
}

Corpus ImportCorpus(const std::string& path) {
  try {
    return CorpusFromString(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void CheckNoReservedTokens(const Corpus& corpus) {
  for (const Sample& s : corpus.samples) {
    for (const Triplet& t : s.gold) {
      for (const std::string* term : {&t.aspect, &t.opinion}) {
        if (term->find(kSplitToken) != std::string::npos ||
            term->find(kJoinToken) != std::string::npos) {
          throw DataError("sample " + s.id + ": term '" + *term +
                          "' contains a reserved serialization token");
        }
      }
    }
  }
}

}  // namespace ttcsw
