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

#include "ttcsw/boundary_csw.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "json.hpp"
#include "ttcsw/artifact.h"
#include "ttcsw/error.h"
#include "ttcsw/parallel.h"
#include "ttcsw/text.h"

namespace ttcsw {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kProvenanceArtifact = "csw-provenance";
constexpr std::string_view kPairsArtifact = "parallel-terms";

struct RawTag {
  bool close = false;
  TagId id;
  Span range;
  bool canonical = false;
};

// Parses a tag such as <a1>, </O2> or "< / a 1 >" starting at s[i].
std::optional<RawTag> ParseTagAt(std::string_view s, std::size_t i) {
  if (i >= s.size() || s[i] != '<') return std::nullopt;
  std::size_t j = i + 1;
  auto skip_ws = [&] {
    while (j < s.size() && IsSpace(s[j])) ++j;
  };
  RawTag tag;
  skip_ws();
  if (j < s.size() && s[j] == '/') {
    tag.close = true;
    ++j;
    skip_ws();
  }
  if (j >= s.size()) return std::nullopt;
  const char k = static_cast<char>(std::tolower(static_cast<unsigned char>(s[j])));
  if (k != 'a' && k != 'o') return std::nullopt;
  tag.id.kind = k == 'a' ? TermKind::kAspect : TermKind::kOpinion;
  ++j;
  skip_ws();
  const std::size_t digits_begin = j;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) &&
         j - digits_begin < 6) {
    ++j;
  }
  if (j == digits_begin) return std::nullopt;
  const std::string digits(s.substr(digits_begin, j - digits_begin));
  tag.id.index = std::stoi(digits);
  if (tag.id.index < 1) return std::nullopt;
  skip_ws();
  if (j >= s.size() || s[j] != '>') return std::nullopt;
  tag.range = {i, j + 1};
  const std::string expected = tag.close ? CloseTag(tag.id) : OpenTag(tag.id);
  tag.canonical = s.substr(i, j + 1 - i) == expected;
  return tag;
}

struct TagPair {
  TagId id;
  Span plain;         // content range in the plain text
  std::size_t order;  // open order, outer before inner
};

// Renders plain text with non-crossing tag pairs.
TaggedSentence Render(std::string_view plain, std::vector<TagPair> pairs) {
  struct Event {
    std::size_t pos;
    bool open;
    std::size_t pair;
  };
  std::vector<Event> events;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    events.push_back({pairs[p].plain.begin, true, p});
    events.push_back({pairs[p].plain.end, false, p});
  }
  std::sort(events.begin(), events.end(), [&](const Event& a, const Event& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.open != b.open) return !a.open;  // closes first
    const TagPair& pa = pairs[a.pair];
    const TagPair& pb = pairs[b.pair];
    if (a.open) {
      // Outer (longer, then earlier-opened) first.
      if (pa.plain.end != pb.plain.end) return pa.plain.end > pb.plain.end;
      return pa.order < pb.order;
    }
    // Inner (later-starting, then later-opened) first.
    if (pa.plain.begin != pb.plain.begin) return pa.plain.begin > pb.plain.begin;
    return pa.order > pb.order;
  });

  TaggedSentence out;
  std::vector<std::size_t> content_begin(pairs.size(), 0);
  std::vector<std::size_t> entry_of(pairs.size(), 0);
  std::size_t cursor = 0;
  for (const Event& e : events) {
    out.text.append(plain.substr(cursor, e.pos - cursor));
    cursor = e.pos;
    const TagPair& p = pairs[e.pair];
    if (e.open) {
      out.text += OpenTag(p.id);
      content_begin[e.pair] = out.text.size();
      entry_of[e.pair] = out.index.size();
      out.index.push_back({p.id, {}});
    } else {
      out.index[entry_of[e.pair]].content = {content_begin[e.pair], out.text.size()};
      out.text += CloseTag(p.id);
    }
  }
  out.text.append(plain.substr(cursor));
  return out;
}

std::string Describe(TagId id) { return OpenTag(id); }

// Span of a gold term in the sample text, if it has exactly one.
std::optional<Span> LocateTerm(const Sample& sample, std::size_t triplet, TermKind kind,
                               std::string* why) {
  const Triplet& t = sample.gold[triplet];
  const std::string& term = kind == TermKind::kAspect ? t.aspect : t.opinion;
  if (triplet < sample.spans.size()) {
    const auto& spans = kind == TermKind::kAspect ? sample.spans[triplet].aspect
                                                  : sample.spans[triplet].opinion;
    if (spans.size() == 1) return spans.front();
    if (spans.size() > 1) {
      *why = "discontinuous term '" + term + "'";
      return std::nullopt;
    }
  }
  if (auto found = FindTerm(sample.text, term)) return found;
  *why = "term '" + term + "' not found in the sentence";
  return std::nullopt;
}

const std::string& TermOf(const Triplet& t, TermKind kind) {
  return kind == TermKind::kAspect ? t.aspect : t.opinion;
}

std::string MatchLeadingCase(std::string_view source, std::string target) {
  if (!source.empty() && std::isupper(static_cast<unsigned char>(source[0])) &&
      !target.empty() && std::islower(static_cast<unsigned char>(target[0]))) {
    target[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(target[0])));
  }
  return target;
}

}  // namespace

std::string_view TermKindName(TermKind kind) {
  return kind == TermKind::kAspect ? "aspect" : "opinion";
}

std::string OpenTag(TagId id) {
  return std::string("<") + (id.kind == TermKind::kAspect ? 'a' : 'o') +
         std::to_string(id.index) + ">";
}

std::string CloseTag(TagId id) {
  return std::string("</") + (id.kind == TermKind::kAspect ? 'a' : 'o') +
         std::to_string(id.index) + ">";
}

const TagEntry* TaggedSentence::Find(TagId id) const {
  for (const TagEntry& e : index) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string TaggedSentence::Term(TagId id) const {
  const TagEntry* e = Find(id);
  return e == nullptr ? std::string() : text.substr(e->content.begin, e->content.size());
}

std::optional<Span> PlainSentence::Find(TagId id) const {
  for (const auto& [tid, span] : spans) {
    if (tid == id) return span;
  }
  return std::nullopt;
}

PlainSentence ToPlain(const TaggedSentence& tagged) {
  std::vector<Edit> removals;
  for (const TagEntry& e : tagged.index) {
    const std::size_t open_len = OpenTag(e.id).size();
    removals.push_back({{e.content.begin - open_len, e.content.begin}, ""});
    removals.push_back({{e.content.end, e.content.end + CloseTag(e.id).size()}, ""});
  }
  PlainSentence plain;
  plain.text = ApplyEdits(tagged.text, removals);
  for (const TagEntry& e : tagged.index) {
    // Map the content range through the removals that precede / lie inside it.
    std::size_t shift_begin = 0;
    std::size_t shift_end = 0;
    for (const Edit& r : removals) {
      if (r.span.end <= e.content.begin) shift_begin += r.span.size();
      if (r.span.end <= e.content.end) shift_end += r.span.size();
    }
    plain.spans.push_back({e.id, {e.content.begin - shift_begin, e.content.end - shift_end}});
  }
  return plain;
}

std::string StripTags(const TaggedSentence& tagged) { return ToPlain(tagged).text; }

bool ValidateTagged(const TaggedSentence& tagged, std::string* why) {
  auto fail = [&](std::string reason) {
    if (why != nullptr) *why = std::move(reason);
    return false;
  };
  const std::string_view s = tagged.text;
  std::vector<std::pair<TagId, std::size_t>> stack;
  std::set<TagId> seen;
  std::map<TagId, Span> found;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '<') continue;
    auto tag = ParseTagAt(s, i);
    if (!tag) continue;
    if (!tag->canonical) return fail("non-canonical tag at byte " + std::to_string(i));
    if (!tag->close) {
      if (!seen.insert(tag->id).second) return fail("duplicate tag " + Describe(tag->id));
      stack.emplace_back(tag->id, tag->range.end);
    } else {
      if (stack.empty() || stack.back().first != tag->id) {
        return fail("unbalanced or crossing close tag " + CloseTag(tag->id));
      }
      found[tag->id] = {stack.back().second, tag->range.begin};
      stack.pop_back();
    }
    i = tag->range.end - 1;
  }
  if (!stack.empty()) return fail("unclosed tag " + Describe(stack.back().first));
  if (found.size() != tagged.index.size()) return fail("index does not match the tags");
  for (const TagEntry& e : tagged.index) {
    auto it = found.find(e.id);
    if (it == found.end() || it->second != e.content) {
      return fail("index entry " + Describe(e.id) + " does not match the text");
    }
    if (e.content.empty()) return fail("empty term " + Describe(e.id));
  }
  return true;
}

TaggedSample TagSample(const Sample& sample) {
  TaggedSample out;
  out.sample_id = sample.id;
  out.refs.resize(sample.gold.size());

  struct Candidate {
    TermKind kind;
    Span span;
  };
  std::vector<Candidate> candidates;
  std::map<std::pair<int, Span>, std::size_t> unique;
  // (triplet, kind) -> candidate
  std::vector<std::pair<std::pair<std::size_t, TermKind>, std::size_t>> uses;
  for (std::size_t i = 0; i < sample.gold.size(); ++i) {
    for (TermKind kind : {TermKind::kAspect, TermKind::kOpinion}) {
      if (TermOf(sample.gold[i], kind).empty()) continue;
      std::string why;
      const auto span = LocateTerm(sample, i, kind, &why);
      if (!span) {
        out.notes.push_back(sample.id + ": " + why);
        out.excluded = true;
        out.has_untagged_terms = true;
        continue;
      }
      const auto key = std::make_pair(static_cast<int>(kind), *span);
      auto [it, inserted] = unique.emplace(key, candidates.size());
      if (inserted) candidates.push_back({kind, *span});
      uses.push_back({{i, kind}, it->second});
    }
  }
  if (out.excluded) {
    out.sentence.text = sample.text;
    return out;
  }

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Candidate& ca = candidates[a];
    const Candidate& cb = candidates[b];
    if (ca.span.begin != cb.span.begin) return ca.span.begin < cb.span.begin;
    if (ca.span.size() != cb.span.size()) return ca.span.size() > cb.span.size();
    return ca.kind < cb.kind;
  });

  std::vector<std::optional<TagId>> assigned(candidates.size());
  std::vector<TagPair> pairs;
  std::size_t kept_end = 0;
  int next_aspect = 1;
  int next_opinion = 1;
  for (std::size_t c : order) {
    const Candidate& cand = candidates[c];
    if (!pairs.empty() && cand.span.begin < kept_end) {
      ++out.skipped_overlaps;
      out.has_untagged_terms = true;
      out.notes.push_back(sample.id + ": skipped " + std::string(TermKindName(cand.kind)) +
                          " span overlapping an earlier term");
      continue;
    }
    TagId id{cand.kind, cand.kind == TermKind::kAspect ? next_aspect++ : next_opinion++};
    assigned[c] = id;
    pairs.push_back({id, cand.span, pairs.size()});
    kept_end = cand.span.end;
  }
  for (const auto& [use, c] : uses) {
    TermRef& ref = out.refs[use.first];
    (use.second == TermKind::kAspect ? ref.aspect : ref.opinion) = assigned[c];
  }
  out.sentence = Render(sample.text, std::move(pairs));
  return out;
}

RepairResult RepairTags(std::string_view raw, const TaggedSentence* original) {
  RepairResult result;

  struct Piece {
    bool is_tag;
    Span range;
    RawTag tag;
  };
  std::vector<Piece> pieces;
  std::size_t literal_begin = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '<') continue;
    auto tag = ParseTagAt(raw, i);
    if (!tag) continue;
    if (i > literal_begin) pieces.push_back({false, {literal_begin, i}, {}});
    pieces.push_back({true, tag->range, *tag});
    i = tag->range.end - 1;
    literal_begin = tag->range.end;
  }
  if (literal_begin < raw.size()) pieces.push_back({false, {literal_begin, raw.size()}, {}});

  // Plain text and the plain offset of every piece.
  std::string plain;
  std::vector<std::size_t> offset(pieces.size());
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    offset[p] = plain.size();
    if (!pieces[p].is_tag) plain.append(raw.substr(pieces[p].range.begin, pieces[p].range.size()));
  }

  std::vector<std::pair<TagId, std::size_t>> stack;  // id, piece of the open tag
  std::set<TagId> used;
  std::vector<TagPair> pairs;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (!pieces[p].is_tag) continue;
    const RawTag& tag = pieces[p].tag;
    if (original != nullptr && original->Find(tag.id) == nullptr) {
      result.notes.push_back("dropped unexpected tag " + Describe(tag.id));
      continue;
    }
    if (!tag.close) {
      const bool open_now = std::any_of(stack.begin(), stack.end(),
                                        [&](const auto& s) { return s.first == tag.id; });
      if (open_now || used.count(tag.id) > 0) {
        result.notes.push_back("dropped duplicate " + Describe(tag.id));
        continue;
      }
      stack.emplace_back(tag.id, p);
      continue;
    }
    auto it = std::find_if(stack.rbegin(), stack.rend(),
                           [&](const auto& s) { return s.first == tag.id; });
    if (it == stack.rend()) {
      result.notes.push_back("dropped unmatched " + CloseTag(tag.id));
      continue;
    }
    if (it != stack.rbegin()) {
      result.notes.push_back("dropped crossed pair " + Describe(tag.id));
      stack.erase(std::next(it).base());
      continue;
    }
    Span content{offset[it->second], offset[p]};
    while (content.begin < content.end && IsSpace(plain[content.begin])) ++content.begin;
    while (content.end > content.begin && IsSpace(plain[content.end - 1])) --content.end;
    stack.pop_back();
    used.insert(tag.id);
    if (content.empty()) {
      result.notes.push_back("dropped empty pair " + Describe(tag.id));
      continue;
    }
    pairs.push_back({tag.id, content, 0});
  }
  for (const auto& [id, piece] : stack) {
    result.notes.push_back("dropped unclosed " + Describe(id));
  }
  // Open order: by start, then longer first.
  std::sort(pairs.begin(), pairs.end(), [](const TagPair& a, const TagPair& b) {
    if (a.plain.begin != b.plain.begin) return a.plain.begin < b.plain.begin;
    return a.plain.end > b.plain.end;
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].order = i;
  result.sentence = Render(plain, std::move(pairs));

  if (original != nullptr) {
    for (const TagEntry& e : original->index) {
      if (result.sentence.Find(e.id) == nullptr) result.dropped.push_back(e.id);
    }
    result.lossy = !result.dropped.empty();
  }
  return result;
}

RepairResult TranslateTagged(const TaggedSentence& tagged, Backend& translator,
                             std::string_view source_lang, std::string_view target_lang) {
  TranslationRequest request;
  request.texts = {tagged.text};
  request.source_lang = std::string(source_lang);
  request.target_lang = std::string(target_lang);
  request.preserve_tags = true;
  const BackendResponse response = translator.Translate(request);
  return RepairTags(response.outputs.front(), &tagged);
}

std::vector<ParallelTermPair> ExtractParallelTerms(const TaggedSentence& original,
                                                   const TaggedSentence& translated,
                                                   std::string_view sample_id,
                                                   std::string_view source_lang,
                                                   std::string_view target_lang) {
  std::vector<ParallelTermPair> pairs;
  for (const TagEntry& e : original.index) {
    if (translated.Find(e.id) == nullptr) continue;
    std::string src = original.Term(e.id);
    std::string tgt = translated.Term(e.id);
    if (src.empty() || tgt.empty()) continue;
    pairs.push_back({std::move(src), std::move(tgt), e.id.kind, std::string(sample_id),
                     std::string(source_lang), std::string(target_lang)});
  }
  return pairs;
}

std::string_view CswModeName(CswMode mode) {
  switch (mode) {
    case CswMode::kCT:
      return "CT";
    case CswMode::kCSW:
      return "CSW";
    case CswMode::kDictCSW:
      return "DICT_CSW";
  }
  return "CSW";
}

CswBuildResult BuildCswCorpus(const Corpus& corpus, Backend& translator,
                              std::string_view target_lang, const CswBuildOptions& options) {
  if (!(options.switch_rate >= 0.0 && options.switch_rate <= 1.0)) {
    throw std::invalid_argument("switch_rate must lie in [0, 1]");
  }
  CheckNoReservedTokens(corpus);
  const std::string src_lang = corpus.language;
  const std::string tgt_lang(target_lang);

  struct PerSample {
    bool kept = false;
    bool lossy = false;
    Sample ct;
    Sample csw;
    CswProvenance ct_prov;
    CswProvenance csw_prov;
    std::vector<ParallelTermPair> pairs;
    std::vector<std::string> notes;
  };
  std::vector<PerSample> results(corpus.samples.size());

  ParallelFor(corpus.samples.size(), options.jobs, [&](std::size_t idx) {
    const Sample& s = corpus.samples[idx];
    PerSample& r = results[idx];
    TaggedSample tagged = TagSample(s);
    r.notes = tagged.notes;
    if (tagged.excluded) {
      r.notes.push_back(s.id + ": excluded (unlocatable term)");
      return;
    }
    RepairResult translated = TranslateTagged(tagged.sentence, translator, src_lang, tgt_lang);
    for (const auto& n : translated.notes) r.notes.push_back(s.id + ": " + n);
    r.lossy = translated.lossy || tagged.has_untagged_terms;
    if (r.lossy && options.strict) {
      r.notes.push_back(s.id + ": excluded (lossy translation, strict mode)");
      return;
    }
    r.kept = true;
    r.pairs = ExtractParallelTerms(tagged.sentence, translated.sentence, s.id, src_lang,
                                   tgt_lang);
    const bool with_spans = !s.spans.empty();

    // Complete translation.
    const PlainSentence ct_plain = ToPlain(translated.sentence);
    r.ct.id = s.id;
    r.ct.text = ct_plain.text;
    r.ct.language = tgt_lang;
    r.ct_prov.sample_id = s.id;
    r.ct_prov.mode = CswMode::kCT;
    for (std::size_t i = 0; i < s.gold.size(); ++i) {
      const Triplet& g = s.gold[i];
      const TermRef& ref = tagged.refs[i];
      Triplet t{"", "", g.polarity};
      TermSpans spans;
      bool lost = false;
      for (TermKind kind : {TermKind::kAspect, TermKind::kOpinion}) {
        if (TermOf(g, kind).empty()) continue;
        const auto& id = kind == TermKind::kAspect ? ref.aspect : ref.opinion;
        const auto span = id ? ct_plain.Find(*id) : std::nullopt;
        if (!span) {
          lost = true;
          break;
        }
        (kind == TermKind::kAspect ? t.aspect : t.opinion) =
            ct_plain.text.substr(span->begin, span->size());
        (kind == TermKind::kAspect ? spans.aspect : spans.opinion) = {*span};
      }
      if (lost) {
        r.notes.push_back(s.id + ": dropped a translated triplet whose term was lost");
        continue;
      }
      r.ct.gold.push_back(std::move(t));
      if (with_spans) r.ct.spans.push_back(std::move(spans));
      r.ct_prov.term_languages.emplace_back(g.aspect.empty() ? "" : tgt_lang,
                                            g.opinion.empty() ? "" : tgt_lang);
    }

    // Code-switched source sentence.
    const PlainSentence src_plain = ToPlain(tagged.sentence);
    std::vector<TagEntry> entries = tagged.sentence.index;
    std::sort(entries.begin(), entries.end(),
              [](const TagEntry& a, const TagEntry& b) { return a.content < b.content; });
    Rng rng(MixSeed(options.seed, s.id));
    std::vector<Edit> edits;
    std::map<TagId, std::string> switched;
    for (const TagEntry& e : entries) {
      const bool draw = rng.Bernoulli(options.switch_rate);
      const std::string target_term = translated.sentence.Term(e.id);
      if (!draw || target_term.empty()) continue;
      const auto span = src_plain.Find(e.id);
      edits.push_back({*span, target_term});
      switched[e.id] = target_term;
      r.csw_prov.switched.push_back({e.id.kind, tagged.sentence.Term(e.id), target_term});
    }
    r.csw.id = s.id;
    r.csw.text = ApplyEdits(src_plain.text, edits);
    r.csw.language = src_lang;
    r.csw_prov.sample_id = s.id;
    r.csw_prov.mode = CswMode::kCSW;
    for (std::size_t i = 0; i < s.gold.size(); ++i) {
      const Triplet& g = s.gold[i];
      const TermRef& ref = tagged.refs[i];
      Triplet t = g;
      TermSpans spans;
      std::pair<std::string, std::string> langs;
      for (TermKind kind : {TermKind::kAspect, TermKind::kOpinion}) {
        std::string& term = kind == TermKind::kAspect ? t.aspect : t.opinion;
        std::string& lang = kind == TermKind::kAspect ? langs.first : langs.second;
        auto& out_spans = kind == TermKind::kAspect ? spans.aspect : spans.opinion;
        if (term.empty()) continue;
        lang = src_lang;
        const auto& id = kind == TermKind::kAspect ? ref.aspect : ref.opinion;
        if (id) {
          const Span original = *src_plain.Find(*id);
          if (auto it = switched.find(*id); it != switched.end()) {
            term = it->second;
            lang = tgt_lang;
          }
          out_spans = {MapSpan(original, edits)};
        } else if (i < s.spans.size()) {
          const auto& in = kind == TermKind::kAspect ? s.spans[i].aspect : s.spans[i].opinion;
          try {
            for (const Span& sp : in) out_spans.push_back(MapSpan(sp, edits));
          } catch (const std::invalid_argument&) {
            out_spans.clear();
          }
        }
      }
      r.csw.gold.push_back(std::move(t));
      if (with_spans) r.csw.spans.push_back(std::move(spans));
      r.csw_prov.term_languages.push_back(std::move(langs));
    }
  });

  CswBuildResult out;
  out.translated.corpus = {corpus.name + "+ct", tgt_lang, corpus.split, false, {}};
  out.code_switched.corpus = {corpus.name + "+csw", src_lang, corpus.split, true, {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    PerSample& r = results[i];
    out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
    if (r.lossy) ++out.n_lossy;
    if (!r.kept) {
      out.excluded_ids.push_back(corpus.samples[i].id);
      continue;
    }
    out.translated.corpus.samples.push_back(std::move(r.ct));
    out.translated.provenance.push_back(std::move(r.ct_prov));
    out.code_switched.corpus.samples.push_back(std::move(r.csw));
    out.code_switched.provenance.push_back(std::move(r.csw_prov));
    out.pairs.insert(out.pairs.end(), r.pairs.begin(), r.pairs.end());
  }
  return out;
}

CswCorpus BuildDictCsw(const Corpus& corpus, const BilingualLexicon& lexicon,
                       const DictCswOptions& options) {
  if (lexicon.empty()) throw DataError("dictionary code-switching needs a non-empty lexicon");
  if (!(options.ratio >= 0.0 && options.ratio <= 1.0)) {
    throw std::invalid_argument("ratio must lie in [0, 1]");
  }
  const std::uint64_t base_seed =
      options.strategy == DictStrategy::kStatic
          ? options.seed
          : MixSeed(options.seed, "epoch:" + std::to_string(options.epoch));

  CswCorpus out;
  out.corpus = {corpus.name + "+dict-csw", corpus.language, corpus.split, true, {}};
  for (const Sample& s : corpus.samples) {
    CswProvenance prov;
    prov.sample_id = s.id;
    prov.mode = CswMode::kDictCSW;

    // Term spans, per triplet and slot.
    std::vector<std::array<std::vector<Span>, 2>> term_spans(s.gold.size());
    bool locatable = true;
    for (std::size_t i = 0; i < s.gold.size() && locatable; ++i) {
      for (TermKind kind : {TermKind::kAspect, TermKind::kOpinion}) {
        const std::string& term = TermOf(s.gold[i], kind);
        if (term.empty()) continue;
        auto& spans = term_spans[i][static_cast<int>(kind)];
        if (i < s.spans.size()) {
          spans = kind == TermKind::kAspect ? s.spans[i].aspect : s.spans[i].opinion;
        }
        if (spans.empty()) {
          if (auto found = FindTerm(s.text, term)) spans = {*found};
        }
        if (spans.empty()) locatable = false;
      }
    }
    if (!locatable) {
      // Terms that cannot be located would desynchronize; keep the sample as is.
      out.corpus.samples.push_back(s);
      for (const Triplet& t : s.gold) {
        prov.term_languages.emplace_back(t.aspect.empty() ? "" : s.language,
                                         t.opinion.empty() ? "" : s.language);
      }
      out.provenance.push_back(std::move(prov));
      continue;
    }

    Rng rng(MixSeed(base_seed, s.id));
    std::vector<Edit> edits;
    for (const Span& tok : TokenSpans(s.text)) {
      const bool draw = rng.Bernoulli(options.ratio);
      const std::string_view token(s.text.data() + tok.begin, tok.size());
      const std::string_view core = StripPunctuation(token);
      if (core.empty()) continue;
      const auto& targets = lexicon.Lookup(core);
      if (!draw || targets.empty()) continue;
      const std::string& target =
          targets.size() == 1 ? targets.front() : targets[rng.Index(targets.size())];
      const std::size_t core_begin = tok.begin + static_cast<std::size_t>(core.data() - token.data());
      const Span core_span{core_begin, core_begin + core.size()};
      bool straddles = false;
      for (const auto& slots : term_spans) {
        for (const auto& spans : slots) {
          for (const Span& sp : spans) {
            if (core_span.Overlaps(sp) && !sp.Contains(core_span)) straddles = true;
          }
        }
      }
      if (straddles) continue;
      edits.push_back({core_span, MatchLeadingCase(core, target)});
      prov.switched.push_back({TermKind::kAspect, std::string(core), target});
    }
    // Switched words are context words, not terms.
    for (auto& sw : prov.switched) sw.kind = TermKind::kAspect;

    Sample cs;
    cs.id = s.id;
    cs.language = s.language;
    cs.text = ApplyEdits(s.text, edits);
    for (std::size_t i = 0; i < s.gold.size(); ++i) {
      Triplet t{"", "", s.gold[i].polarity};
      TermSpans spans;
      std::pair<std::string, std::string> langs;
      for (TermKind kind : {TermKind::kAspect, TermKind::kOpinion}) {
        const auto& in = term_spans[i][static_cast<int>(kind)];
        if (in.empty()) continue;
        std::vector<std::string> pieces;
        std::vector<Span> mapped;
        bool changed = false;
        for (const Span& sp : in) {
          const Span m = MapSpan(sp, edits);
          mapped.push_back(m);
          pieces.push_back(cs.text.substr(m.begin, m.size()));
          for (const Edit& e : edits) changed = changed || sp.Contains(e.span);
        }
        (kind == TermKind::kAspect ? t.aspect : t.opinion) =
            changed ? Join(pieces, " ") : TermOf(s.gold[i], kind);
        (kind == TermKind::kAspect ? spans.aspect : spans.opinion) = std::move(mapped);
        (kind == TermKind::kAspect ? langs.first : langs.second) =
            changed ? "mixed" : s.language;
      }
      cs.gold.push_back(std::move(t));
      if (!s.spans.empty()) cs.spans.push_back(std::move(spans));
      prov.term_languages.push_back(std::move(langs));
    }
    out.corpus.samples.push_back(std::move(cs));
    out.provenance.push_back(std::move(prov));
  }
  return out;
}

std::string ProvenanceToString(const std::vector<CswProvenance>& provenance,
                               std::uint64_t seed, std::string_view config_digest) {
  ArtifactHeader header;
  header.kind = std::string(kProvenanceArtifact);
  header.seed = seed;
  header.config_digest = std::string(config_digest);
  std::string out = HeaderLine(header) + "\n";
  for (const CswProvenance& p : provenance) {
    ordered_json rec;
    rec["id"] = p.sample_id;
    rec["mode"] = std::string(CswModeName(p.mode));
    ordered_json langs = ordered_json::array();
    for (const auto& [a, o] : p.term_languages) langs.push_back({a, o});
    rec["term_languages"] = std::move(langs);
    ordered_json sw = ordered_json::array();
    for (const SwitchedTerm& t : p.switched) {
      sw.push_back({{"kind", std::string(TermKindName(t.kind))},
                    {"source", t.source_text},
                    {"target", t.target_text}});
    }
    rec["switched"] = std::move(sw);
    out += rec.dump() + "\n";
  }
  return out;
}

std::vector<CswProvenance> ProvenanceFromString(std::string_view content) {
  ArtifactContent art = ParseArtifact(content, kProvenanceArtifact);
  std::vector<CswProvenance> out;
  for (const auto& [line_no, rec] : art.records) {
    try {
      CswProvenance p;
      p.sample_id = rec.at("id").get<std::string>();
      const std::string mode = rec.at("mode").get<std::string>();
      p.mode = mode == "CT" ? CswMode::kCT : mode == "CSW" ? CswMode::kCSW : CswMode::kDictCSW;
      for (const auto& l : rec.at("term_languages")) {
        p.term_languages.emplace_back(l.at(0).get<std::string>(), l.at(1).get<std::string>());
      }
      for (const auto& t : rec.at("switched")) {
        p.switched.push_back({t.at("kind").get<std::string>() == "aspect" ? TermKind::kAspect
                                                                         : TermKind::kOpinion,
                              t.at("source").get<std::string>(),
                              t.at("target").get<std::string>()});
      }
      out.push_back(std::move(p));
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed provenance: " + e.what());
    }
  }
  return out;
}

std::string PairsToString(const std::vector<ParallelTermPair>& pairs, std::uint64_t seed,
                          std::string_view config_digest) {
  ArtifactHeader header;
  header.kind = std::string(kPairsArtifact);
  header.seed = seed;
  header.config_digest = std::string(config_digest);
  std::string out = HeaderLine(header) + "\n";
  for (const ParallelTermPair& p : pairs) {
    ordered_json rec;
    rec["source_term"] = p.source_term;
    rec["target_term"] = p.target_term;
    rec["kind"] = std::string(TermKindName(p.kind));
    rec["sample_id"] = p.sample_id;
    rec["source_lang"] = p.source_lang;
    rec["target_lang"] = p.target_lang;
    out += rec.dump() + "\n";
  }
  return out;
}

std::vector<ParallelTermPair> PairsFromString(std::string_view content) {
  ArtifactContent art = ParseArtifact(content, kPairsArtifact);
  std::vector<ParallelTermPair> out;
  for (const auto& [line_no, rec] : art.records) {
    try {
      out.push_back({rec.at("source_term").get<std::string>(),
                     rec.at("target_term").get<std::string>(),
                     rec.at("kind").get<std::string>() == "aspect" ? TermKind::kAspect
                                                                  : TermKind::kOpinion,
                     rec.at("sample_id").get<std::string>(),
                     rec.at("source_lang").get<std::string>(),
                     rec.at("target_lang").get<std::string>()});
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed term pair: " + e.what());
    }
  }
  return out;
}

}  // namespace ttcsw
