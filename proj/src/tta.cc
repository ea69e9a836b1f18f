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

#include "ttcsw/tta.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "ttcsw/error.h"
#include "ttcsw/metrics.h"
#include "ttcsw/parallel.h"
#include "ttcsw/triplet_serde.h"

namespace ttcsw {
namespace {

constexpr std::string_view kPredictionsArtifact = "predictions";

std::string NormalizedKey(std::string_view term) { return Join(NormalizedWords(term), " "); }

bool IsNoneAnswer(std::string_view answer) {
  const std::string_view t = Trim(answer);
  return t.empty() || t == kNoneLabel;
}

std::string Substitute(std::string_view sentence, Span span, std::string_view text) {
  std::string out(sentence.substr(0, span.begin));
  out.append(text);
  out.append(sentence.substr(span.end));
  return out;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t Find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void Unite(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

// Most frequent surface; ties by longest, then lexicographically smallest.
std::string PickSurface(const std::map<std::string, std::size_t>& counts) {
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& [surface, count] : counts) {
    if (best == nullptr || count > best_count ||
        (count == best_count && surface.size() > best->size())) {
      best = &surface;
      best_count = count;
    }
  }
  return best == nullptr ? std::string() : *best;
}

nlohmann::ordered_json TripletsToJson(const std::vector<Triplet>& triplets) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const Triplet& t : triplets) {
    out.push_back({{"aspect", t.aspect},
                   {"opinion", t.opinion},
                   {"polarity", std::string(PolarityCode(t.polarity))}});
  }
  return out;
}

}  // namespace

void TtaConfig::Validate() const {
  if (max_ngram < 1) throw std::invalid_argument("max_ngram must be at least 1");
  if (top_k_phrases < 1) throw std::invalid_argument("top_k_phrases must be at least 1");
  if (!(vote_threshold > 0.0 && vote_threshold <= 1.0)) {
    throw std::invalid_argument("vote_threshold must lie in (0, 1]");
  }
  if (!(min_support_fraction >= 0.0 && min_support_fraction <= 1.0)) {
    throw std::invalid_argument("min_support_fraction must lie in [0, 1]");
  }
  if (!IsLanguageCode(source_lang)) throw std::invalid_argument("invalid source language");
}

std::vector<Phrase> EnumeratePhrases(std::string_view sentence, std::size_t max_ngram) {
  if (max_ngram < 1) throw std::invalid_argument("max_ngram must be at least 1");
  const std::vector<Span> tokens = TokenSpans(sentence);
  std::vector<Phrase> phrases;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string text;
    for (std::size_t n = 1; n <= max_ngram && i + n <= tokens.size(); ++n) {
      if (n > 1) text += ' ';
      text.append(sentence.substr(tokens[i + n - 1].begin, tokens[i + n - 1].size()));
      if (!seen.insert(text).second) continue;
      phrases.push_back({text, {tokens[i].begin, tokens[i + n - 1].end}, i, n});
    }
  }
  return phrases;
}

std::vector<AlignedPhrase> SelectCandidates(std::string_view s_tgt, std::string_view s_src,
                                            Backend& aligner, const TtaConfig& config,
                                            std::string_view target_lang) {
  std::vector<AlignedPhrase> survivors;
  auto query = [&](std::string_view own, std::string_view other, PhraseSide side,
                   std::string_view hint) {
    const std::vector<Phrase> phrases = EnumeratePhrases(own, config.max_ngram);
    if (phrases.empty()) return;
    GenerationRequest request;
    request.task = GenerationTask::kAlign;
    request.target_lang_hint = std::string(hint);
    for (const Phrase& p : phrases) request.inputs.push_back(AlignmentInput(other, p.text));
    const BackendResponse response = aligner.Generate(request);
    for (std::size_t i = 0; i < phrases.size(); ++i) {
      if (IsNoneAnswer(response.outputs[i])) continue;
      AlignedPhrase a;
      a.phrase = phrases[i].text;
      a.source_side = side;
      a.phrase_span = phrases[i].span;
      a.aligned_text = std::string(Trim(response.outputs[i]));
      a.aligned_span = FindTerm(other, a.aligned_text);
      a.length_tokens = phrases[i].n_tokens;
      a.position = phrases[i].token_begin;
      survivors.push_back(std::move(a));
    }
  };
  query(s_src, s_tgt, PhraseSide::kSource, target_lang);
  query(s_tgt, s_src, PhraseSide::kTarget, config.source_lang);

  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const AlignedPhrase& a, const AlignedPhrase& b) {
                     if (a.length_tokens != b.length_tokens) {
                       return a.length_tokens > b.length_tokens;
                     }
                     if (a.source_side != b.source_side) {
                       return a.source_side == PhraseSide::kSource;
                     }
                     return a.position < b.position;
                   });
  if (survivors.size() > config.top_k_phrases) survivors.resize(config.top_k_phrases);
  return survivors;
}

std::string_view AugmentationTypeName(AugmentationType type) {
  return type == AugmentationType::kTgtWithSrcPhrase ? "TGT_WITH_SRC_PHRASE"
                                                     : "SRC_WITH_TGT_PHRASE";
}

std::vector<AugmentedInput> BuildAugmentedInputs(std::string_view s_tgt, std::string_view s_src,
                                                 const std::vector<AlignedPhrase>& phrases,
                                                 std::size_t n_candidates,
                                                 std::vector<std::string>* notes) {
  std::vector<AugmentedInput> out;
  for (const AlignedPhrase& p : phrases) {
    if (out.size() >= n_candidates) break;
    if (!p.aligned_span) {
      if (notes != nullptr) {
        notes->push_back("skipped phrase '" + p.phrase + "': aligned text '" + p.aligned_text +
                         "' not found");
      }
      continue;
    }
    const bool from_source = p.source_side == PhraseSide::kSource;
    const Span tgt_span = from_source ? *p.aligned_span : p.phrase_span;
    const Span src_span = from_source ? p.phrase_span : *p.aligned_span;
    const std::string src_text(s_src.substr(src_span.begin, src_span.size()));
    const std::string tgt_text(s_tgt.substr(tgt_span.begin, tgt_span.size()));

    AugmentedInput tgt_with_src;
    tgt_with_src.sentence = Substitute(s_tgt, tgt_span, src_text);
    tgt_with_src.type = AugmentationType::kTgtWithSrcPhrase;
    tgt_with_src.provenance = p;
    tgt_with_src.substituted = src_text;
    tgt_with_src.substituted_span = {tgt_span.begin, tgt_span.begin + src_text.size()};
    out.push_back(std::move(tgt_with_src));
    if (out.size() >= n_candidates) break;

    AugmentedInput src_with_tgt;
    src_with_tgt.sentence = Substitute(s_src, src_span, tgt_text);
    src_with_tgt.type = AugmentationType::kSrcWithTgtPhrase;
    src_with_tgt.provenance = p;
    src_with_tgt.substituted = tgt_text;
    src_with_tgt.substituted_span = {src_span.begin, src_span.begin + tgt_text.size()};
    out.push_back(std::move(src_with_tgt));
  }
  return out;
}

CandidateSet AlignCandidates(const std::vector<Triplet>& raw, const AugmentedInput& input,
                             std::string_view s_tgt, Backend& aligner,
                             const std::vector<AlignedPhrase>& known,
                             std::string_view target_lang) {
  std::map<std::string, std::string> table;
  table.emplace(NormalizedKey(input.provenance.source_text()), input.provenance.target_text());
  for (const AlignedPhrase& p : known) table.emplace(NormalizedKey(p.source_text()), p.target_text());

  auto is_source_language = [&](const std::string& term) {
    if (input.type == AugmentationType::kTgtWithSrcPhrase) {
      return Overlap(term, input.substituted) > 0;
    }
    return !FindTerm(input.substituted, term).has_value();
  };

  CandidateSet out;
  out.triplets = raw;
  out.unalignable.assign(raw.size(), {false, false});

  // Terms to map: (triplet, slot) -> query index.
  std::vector<std::string> queries;
  std::map<std::string, std::size_t> query_index;
  std::vector<std::tuple<std::size_t, bool, std::size_t>> pending;
  for (std::size_t i = 0; i < out.triplets.size(); ++i) {
    for (bool aspect : {true, false}) {
      std::string& term = aspect ? out.triplets[i].aspect : out.triplets[i].opinion;
      if (term.empty() || !is_source_language(term)) continue;
      if (auto it = table.find(NormalizedKey(term)); it != table.end()) {
        term = it->second;
        continue;
      }
      auto [it, inserted] = query_index.emplace(term, queries.size());
      if (inserted) queries.push_back(term);
      pending.emplace_back(i, aspect, it->second);
    }
  }
  if (queries.empty()) return out;

  GenerationRequest request;
  request.task = GenerationTask::kAlign;
  request.target_lang_hint = std::string(target_lang);
  for (const std::string& q : queries) request.inputs.push_back(AlignmentInput(s_tgt, q));
  const BackendResponse response = aligner.Generate(request);
  out.n_aligner_queries = queries.size();
  for (const auto& [i, aspect, q] : pending) {
    const std::string& answer = response.outputs[q];
    if (IsNoneAnswer(answer)) {
      (aspect ? out.unalignable[i].first : out.unalignable[i].second) = true;
      ++out.n_unalignable;
      continue;
    }
    (aspect ? out.triplets[i].aspect : out.triplets[i].opinion) = std::string(Trim(answer));
  }
  return out;
}

std::vector<Triplet> Vote(const std::vector<std::vector<Triplet>>& candidate_lists,
                          const TtaConfig& config) {
  if (candidate_lists.empty()) throw std::invalid_argument("vote needs at least one list");
  const std::size_t k = candidate_lists.size();
  const bool unanimous = std::all_of(candidate_lists.begin(), candidate_lists.end(),
                                     [&](const auto& l) { return l == candidate_lists.front(); });
  if (k == 1 || unanimous) return candidate_lists.front();

  struct Value {
    Triplet normalized;
    std::set<std::size_t> lists;
    std::pair<std::size_t, std::size_t> first;
    std::map<std::string, std::size_t> aspect_surfaces;
    std::map<std::string, std::size_t> opinion_surfaces;
  };
  std::vector<Value> values;
  std::map<std::tuple<Polarity, std::string, std::string>, std::size_t> index;
  for (std::size_t li = 0; li < k; ++li) {
    std::set<std::size_t> seen_here;
    for (std::size_t pos = 0; pos < candidate_lists[li].size(); ++pos) {
      const Triplet& t = candidate_lists[li][pos];
      const auto key = std::make_tuple(t.polarity, NormalizedKey(t.aspect), NormalizedKey(t.opinion));
      auto [it, inserted] = index.emplace(key, values.size());
      if (inserted) {
        values.push_back({{std::get<1>(key), std::get<2>(key), t.polarity}, {}, {li, pos}, {}, {}});
      }
      Value& v = values[it->second];
      v.lists.insert(li);
      if (seen_here.insert(it->second).second) {
        ++v.aspect_surfaces[t.aspect];
        ++v.opinion_surfaces[t.opinion];
      }
    }
  }

  MetricsOptions non_polar;
  non_polar.ignore_polarity = true;
  UnionFind clusters(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      const Value& u = values[a];
      const Value& v = values[b];
      if (u.normalized.polarity != v.normalized.polarity) continue;
      const bool co_occur = std::any_of(u.lists.begin(), u.lists.end(),
                                        [&](std::size_t l) { return v.lists.count(l) > 0; });
      if (co_occur) continue;
      const double sim = std::min(Similarity(u.normalized, v.normalized, non_polar),
                                  Similarity(v.normalized, u.normalized, non_polar));
      if (sim >= config.vote_threshold) clusters.Unite(a, b);
    }
  }

  struct Cluster {
    std::set<std::size_t> lists;
    std::pair<std::size_t, std::size_t> first{SIZE_MAX, SIZE_MAX};
    std::map<std::string, std::size_t> aspect_surfaces;
    std::map<std::string, std::size_t> opinion_surfaces;
    Polarity polarity = Polarity::kNone;
  };
  std::map<std::size_t, Cluster> grouped;
  for (std::size_t a = 0; a < values.size(); ++a) {
    Cluster& c = grouped[clusters.Find(a)];
    const Value& v = values[a];
    c.lists.insert(v.lists.begin(), v.lists.end());
    c.first = std::min(c.first, v.first);
    for (const auto& [s, n] : v.aspect_surfaces) c.aspect_surfaces[s] += n;
    for (const auto& [s, n] : v.opinion_surfaces) c.opinion_surfaces[s] += n;
    c.polarity = v.normalized.polarity;
  }

  const auto required = static_cast<std::size_t>(
      std::ceil(config.min_support_fraction * static_cast<double>(k) - 1e-9));
  std::vector<const Cluster*> kept;
  for (const auto& [root, c] : grouped) {
    if (c.lists.size() >= required) kept.push_back(&c);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Cluster* a, const Cluster* b) { return a->first < b->first; });
  std::vector<Triplet> out;
  for (const Cluster* c : kept) {
    out.push_back({PickSurface(c->aspect_surfaces), PickSurface(c->opinion_surfaces), c->polarity});
  }
  return out;
}

Prediction PlainPredict(const Sample& sample, Backend& generator, std::string_view target_lang) {
  GenerationRequest request;
  request.inputs = {sample.text};
  request.task = GenerationTask::kAste;
  request.target_lang_hint = std::string(target_lang);
  const BackendResponse response = generator.Generate(request);
  ParsedTriplets parsed = ParseTriplets(response.outputs.front());
  Prediction p;
  p.id = sample.id;
  p.triplets = std::move(parsed.triplets);
  for (std::string& n : parsed.diagnostics.notes) p.diagnostics.notes.push_back(std::move(n));
  return p;
}

Prediction TtaPredict(const Sample& sample, const TtaBackends& backends,
                      const TtaConfig& config, std::string_view target_lang) {
  config.Validate();
  if (backends.translator == nullptr || backends.aligner == nullptr ||
      backends.generator == nullptr) {
    throw std::invalid_argument("tta needs translator, aligner and generator backends");
  }
  Prediction plain = PlainPredict(sample, *backends.generator, target_lang);
  std::vector<std::vector<Triplet>> lists = {plain.triplets};
  PredictionDiagnostics diagnostics = plain.diagnostics;
  try {
    TranslationRequest translation;
    translation.texts = {sample.text};
    translation.source_lang = std::string(target_lang);
    translation.target_lang = config.source_lang;
    translation.preserve_tags = false;
    const std::string s_src = backends.translator->Translate(translation).outputs.front();

    const std::vector<AlignedPhrase> phrases =
        SelectCandidates(sample.text, s_src, *backends.aligner, config, target_lang);
    const std::vector<AugmentedInput> augmented = BuildAugmentedInputs(
        sample.text, s_src, phrases, config.n_candidates, &diagnostics.notes);
    if (!augmented.empty()) {
      GenerationRequest request;
      request.task = GenerationTask::kAste;
      request.target_lang_hint = std::string(target_lang);
      for (const AugmentedInput& a : augmented) request.inputs.push_back(a.sentence);
      const BackendResponse response = backends.generator->Generate(request);
      for (std::size_t i = 0; i < augmented.size(); ++i) {
        ParsedTriplets parsed = ParseTriplets(response.outputs[i]);
        for (std::string& n : parsed.diagnostics.notes) diagnostics.notes.push_back(std::move(n));
        CandidateSet aligned = AlignCandidates(parsed.triplets, augmented[i], sample.text,
                                               *backends.aligner, phrases, target_lang);
        diagnostics.n_unalignable += aligned.n_unalignable;
        lists.push_back(std::move(aligned.triplets));
      }
    }
    diagnostics.n_augmented = augmented.size();
  } catch (const BackendError& e) {
    if (config.strict) throw;
    plain.diagnostics.fell_back = true;
    plain.diagnostics.notes.push_back(sample.id + ": augmentation failed, using the plain "
                                      "prediction: " + e.what());
    return plain;
  }

  Prediction out;
  out.id = sample.id;
  out.triplets = Vote(lists, config);
  out.diagnostics = std::move(diagnostics);
  return out;
}

std::vector<Prediction> PredictCorpus(const Corpus& corpus, Backend& generator,
                                      std::size_t jobs) {
  std::vector<Prediction> out(corpus.samples.size());
  ParallelFor(corpus.samples.size(), jobs, [&](std::size_t i) {
    out[i] = PlainPredict(corpus.samples[i], generator, corpus.language);
  });
  return out;
}

std::vector<Prediction> TtaPredictCorpus(const Corpus& corpus, const TtaBackends& backends,
                                         const TtaConfig& config, std::size_t jobs) {
  config.Validate();
  std::vector<Prediction> out(corpus.samples.size());
  ParallelFor(corpus.samples.size(), jobs, [&](std::size_t i) {
    out[i] = TtaPredict(corpus.samples[i], backends, config, corpus.language);
  });
  return out;
}

std::string PredictionsToString(const std::vector<Prediction>& predictions,
                                ArtifactHeader header) {
  header.kind = std::string(kPredictionsArtifact);
  std::string out = HeaderLine(header) + "\n";
  for (const Prediction& p : predictions) {
    nlohmann::ordered_json rec;
    rec["id"] = p.id;
    rec["triplets"] = TripletsToJson(p.triplets);
    rec["diagnostics"] = {{"n_augmented", p.diagnostics.n_augmented},
                          {"n_unalignable", p.diagnostics.n_unalignable},
                          {"fell_back", p.diagnostics.fell_back}};
    out += rec.dump() + "\n";
  }
  return out;
}

std::vector<Prediction> PredictionsFromString(std::string_view content) {
  ArtifactContent art = ParseArtifact(content, kPredictionsArtifact);
  std::vector<Prediction> out;
  std::set<std::string> ids;
  for (const auto& [line_no, rec] : art.records) {
    Prediction p;
    try {
      p.id = rec.at("id").get<std::string>();
      for (const auto& t : rec.at("triplets")) {
        const auto pol = ParsePolarity(t.at("polarity").get<std::string>());
        if (!pol) throw std::invalid_argument("unknown polarity");
        p.triplets.push_back(
            {t.at("aspect").get<std::string>(), t.at("opinion").get<std::string>(), *pol});
      }
      if (rec.contains("diagnostics")) {
        const auto& d = rec.at("diagnostics");
        p.diagnostics.n_augmented = d.value("n_augmented", std::size_t{0});
        p.diagnostics.n_unalignable = d.value("n_unalignable", std::size_t{0});
        p.diagnostics.fell_back = d.value("fell_back", false);
      }
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed prediction: " + e.what());
    }
    if (!ids.insert(p.id).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate prediction id '" + p.id + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ttcsw
