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

// Acceptance suite: one PASS / FAIL / SKIP line per criterion.
//
//   acceptance_test              run every criterion
//   acceptance_test NAME...      run the named criteria
//
// Exit status: 1 if any criterion failed, 77 if every requested criterion
// was skipped, 0 otherwise. Dataset criteria read TTCSW_DATA_DIR.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support/generators.h"
#include "support/metric_oracle.h"
#include "support/synthetic.h"
#include "ttcsw/align_data.h"
#include "ttcsw/artifact.h"
#include "ttcsw/boundary_csw.h"
#include "ttcsw/cli.h"
#include "ttcsw/corpus.h"
#include "ttcsw/metrics.h"
#include "ttcsw/triplet_serde.h"
#include "ttcsw/tta.h"

namespace ttcsw {
namespace {

namespace fs = std::filesystem;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

Outcome Pass(std::string d) { return {Status::kPass, std::move(d)}; }
Outcome Fail(std::string d) { return {Status::kFail, std::move(d)}; }
Outcome Skip(std::string d) { return {Status::kSkip, std::move(d)}; }

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, a);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome MetricOracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  constexpr int kInstances = 10000;
  double worst = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    TripletLists preds;
    TripletLists golds;
    for (int k = 0; k < n; ++k) {
      preds.push_back(testing::RandomTripletList(rng, 5, 10, 3));
      golds.push_back(testing::RandomTripletList(rng, 5, 10, 3));
    }
    for (bool np : {false, true}) {
      MetricsOptions o;
      o.ignore_polarity = np;
      const WeightedScore got = WeightedScores(preds, golds, o);
      const oracle::Scores want = oracle::Weighted(preds, golds, np);
      worst = std::max({worst, std::abs(got.precision - want.p), std::abs(got.recall - want.r),
                        std::abs(got.f1 - want.f1)});
    }
  }
  const double secs = Seconds(start);
  const std::string detail = std::to_string(kInstances) + " instances, max deviation " +
                             Fmt("%.3g", worst) + ", " + Fmt("%.2f", secs) + " s";
  return worst <= 1e-9 && secs < 60.0 ? Pass(detail) : Fail(detail);
}

// ---------------------------------------------------------------------------

struct DatasetInfo {
  const char* dir;
  const char* language;
};

std::optional<std::string> DataDir(const std::vector<DatasetInfo>& needed,
                                   std::string* missing) {
  const char* env = std::getenv("TTCSW_DATA_DIR");
  if (env == nullptr || *env == '\0') {
    *missing = "TTCSW_DATA_DIR is not set";
    return std::nullopt;
  }
  std::vector<std::string> absent;
  for (const auto& d : needed) {
    if (!fs::exists(fs::path(env) / d.dir / SplitFileName(Split::kTest))) absent.push_back(d.dir);
  }
  if (!absent.empty()) {
    *missing = "missing under " + std::string(env) + ": " + Join(absent, ", ");
    return std::nullopt;
  }
  return std::string(env);
}

Outcome AllNull() {
  struct Row {
    DatasetInfo data;
    double wp, wr, wf1;
  };
  const std::vector<Row> rows = {{{"opener_es", "es"}, 11.7, 4.8, 6.8},
                                 {{"multibooked_eu", "eu"}, 21.3, 12.9, 16.1},
                                 {{"multibooked_ca", "ca"}, 16.1, 9.4, 11.8},
                                 {{"norec", "no"}, 47.0, 32.6, 38.5}};
  std::vector<DatasetInfo> needed;
  for (const auto& r : rows) needed.push_back(r.data);
  std::string missing;
  const auto dir = DataDir(needed, &missing);
  if (!dir) return Skip("dataset not available (" + missing + ")");

  const auto start = std::chrono::steady_clock::now();
  struct Variant {
    std::string name;
    MetricsOptions options;
  };
  std::vector<Variant> variants;
  for (bool convention : {true, false}) {
    for (bool half : {false, true}) {
      Variant v;
      v.options.empty_list_convention = convention;
      v.options.half_weight_single_slot = half;
      v.name = std::string(convention ? "empty-convention" : "no-empty-convention") +
               (half ? "+half-weight" : "+renormalized");
      variants.push_back(v);
    }
  }
  std::vector<Corpus> corpora;
  for (const auto& r : rows) {
    corpora.push_back(
        IngestSemeval((fs::path(*dir) / r.data.dir).string(), r.data.language, Split::kTest));
  }
  std::ostringstream detail;
  std::string matching;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    bool all_ok = true;
    detail << (vi == 0 ? "" : "; ") << variants[vi].name << ":";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const MetricsReport m = AllNullBaseline(corpora[i], variants[vi].options);
      const double p = 100 * m.wP, r = 100 * m.wR, f = 100 * m.wF1;
      const bool ok = std::abs(p - rows[i].wp) <= 0.5 && std::abs(r - rows[i].wr) <= 0.5 &&
                      std::abs(f - rows[i].wf1) <= 0.5;
      all_ok = all_ok && ok;
      detail << " " << rows[i].data.language << " " << Fmt("%.1f", p) << "/" << Fmt("%.1f", r)
             << "/" << Fmt("%.1f", f) << (ok ? "" : "(off)");
    }
    if (all_ok && matching.empty()) matching = variants[vi].name;
  }
  const double secs = Seconds(start);
  detail << "; " << Fmt("%.2f", secs) << " s";
  if (matching.empty() || secs >= 60.0) return Fail(detail.str());
  return Pass("matches with " + matching + " | " + detail.str());
}

Outcome DatasetStats() {
  struct Row {
    DatasetInfo data;
    std::size_t s, a, o;
    double empty_pct;  // < 0: not reported
  };
  const std::vector<Row> rows = {{{"opener_en", "en"}, 2494, 3850, 4150, -1},
                                 {{"norec", "no"}, 11437, 8923, 11115, 47.0},
                                 {{"multibooked_eu", "eu"}, 1521, 1775, 2328, 21.3},
                                 {{"multibooked_ca", "ca"}, 1678, 2336, 2756, 16.1},
                                 {{"opener_es", "es"}, 2057, 3980, 4388, 11.7}};
  std::vector<DatasetInfo> needed;
  for (const auto& r : rows) needed.push_back(r.data);
  std::string missing;
  const auto dir = DataDir(needed, &missing);
  if (!dir) return Skip("dataset not available (" + missing + ")");

  bool per_triplet_ok = true;
  bool unique_ok = true;
  bool rates_ok = true;
  std::ostringstream detail;
  for (const auto& r : rows) {
    const std::string path = (fs::path(*dir) / r.data.dir).string();
    Corpus all;
    bool first = true;
    for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
      if (!fs::exists(fs::path(path) / SplitFileName(s))) continue;
      Corpus part = IngestSemeval(path, r.data.language, s);
      if (first) {
        all = std::move(part);
        first = false;
      } else {
        all.samples.insert(all.samples.end(), part.samples.begin(), part.samples.end());
      }
    }
    const StatsReport st = CorpusStats(all);
    per_triplet_ok = per_triplet_ok && st.n_sentences == r.s && st.n_aspects == r.a &&
                     st.n_opinions == r.o;
    unique_ok = unique_ok && st.n_sentences == r.s && st.n_unique_aspects == r.a &&
                st.n_unique_opinions == r.o;
    detail << r.data.dir << " " << st.n_sentences << "/" << st.n_aspects << "("
           << st.n_unique_aspects << ")/" << st.n_opinions << "(" << st.n_unique_opinions << ")";
    if (r.empty_pct >= 0) {
      const double rate = 100 * CorpusStats(IngestSemeval(path, r.data.language, Split::kTest))
                                    .empty_label_rate;
      const bool ok = std::abs(rate - r.empty_pct) <= 0.5;
      rates_ok = rates_ok && ok;
      detail << " empty " << Fmt("%.1f", rate) << "%" << (ok ? "" : "(off)");
    }
    detail << "; ";
  }
  detail << "counting per triplet " << (per_triplet_ok ? "matches" : "differs")
         << ", per unique span " << (unique_ok ? "matches" : "differs");
  return (per_triplet_ok || unique_ok) && rates_ok ? Pass(detail.str()) : Fail(detail.str());
}

// ---------------------------------------------------------------------------

Outcome Serialization() {
  std::mt19937_64 rng(99);
  constexpr int kLists = 10000;
  std::size_t mismatches = 0;
  std::size_t diagnostics = 0;
  for (int i = 0; i < kLists; ++i) {
    const std::vector<Triplet> list = testing::RandomSerdeList(rng);
    const ParsedTriplets parsed = ParseTriplets(EmitTriplets(list));
    if (!parsed.diagnostics.clean()) ++diagnostics;
    if (parsed.triplets != list) ++mismatches;
  }
  std::size_t crashed = 0;
  const auto& malformed = testing::MalformedOutputs();
  for (const std::string& m : malformed) {
    try {
      ParseTriplets(m);
    } catch (...) {
      ++crashed;
    }
  }
  const std::string detail = std::to_string(kLists) + " lists: " + std::to_string(mismatches) +
                             " mismatches, " + std::to_string(diagnostics) +
                             " with diagnostics; " + std::to_string(malformed.size()) +
                             " malformed outputs: " + std::to_string(crashed) + " aborted";
  return mismatches == 0 && diagnostics == 0 && crashed == 0 && malformed.size() >= 20
             ? Pass(detail)
             : Fail(detail);
}

// ---------------------------------------------------------------------------

class TagDeletingTranslator : public Backend {
 public:
  std::string Id() const override { return "mock:tag-deleting"; }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override {
    std::vector<std::string> out;
    for (std::string t : request.texts) {
      for (const char* tag : {"<a1>", "</a1>"}) {
        for (std::size_t at; (at = t.find(tag)) != std::string::npos;) {
          t.erase(at, std::string_view(tag).size());
        }
      }
      out.push_back(std::move(t));
    }
    return out;
  }
};

Outcome BoundaryCsw() {
  const auto data = testing::MakeSyntheticBilingual(500, 11);
  std::vector<std::string> problems;

  // Identity translation reproduces the corpus.
  IdentityTranslator identity;
  CswBuildOptions options;
  options.switch_rate = 1.0;
  options.jobs = 4;
  const CswBuildResult id = BuildCswCorpus(data.source, identity, data.source.language, options);
  std::size_t diffs = 0;
  if (id.translated.corpus.samples.size() != data.source.samples.size()) {
    problems.push_back("identity build dropped samples");
  } else {
    for (std::size_t i = 0; i < data.source.samples.size(); ++i) {
      const Sample& want = data.source.samples[i];
      for (const Sample* got : {&id.translated.corpus.samples[i],
                                &id.code_switched.corpus.samples[i]}) {
        if (got->text != want.text || got->gold != want.gold || got->spans != want.spans) ++diffs;
      }
    }
  }
  if (diffs > 0) problems.push_back(std::to_string(diffs) + " identity samples differ");

  // Every produced tagged sentence validates.
  DictionaryTranslator dict(data.lexicon, "en", "es");
  std::size_t tagged = 0;
  std::size_t invalid = 0;
  for (const Sample& s : data.source.samples) {
    const TaggedSample t = TagSample(s);
    ++tagged;
    if (!ValidateTagged(t.sentence)) ++invalid;
    const RepairResult r = TranslateTagged(t.sentence, dict, "en", "es");
    ++tagged;
    if (!ValidateTagged(r.sentence)) ++invalid;
    if (r.lossy) problems.push_back(s.id + ": dictionary translation reported loss");
  }
  if (invalid > 0) problems.push_back(std::to_string(invalid) + " tagged sentences invalid");

  // Deleting the first aspect tag is reported exactly where it happens.
  TagDeletingTranslator deleting;
  std::size_t expected_lossy = 0;
  std::size_t wrong_diagnostics = 0;
  for (const Sample& s : data.source.samples) {
    const TaggedSample t = TagSample(s);
    const bool has_a1 = t.sentence.Find({TermKind::kAspect, 1}) != nullptr;
    expected_lossy += has_a1;
    const RepairResult r = TranslateTagged(t.sentence, deleting, "en", "es");
    const std::vector<TagId> want =
        has_a1 ? std::vector<TagId>{{TermKind::kAspect, 1}} : std::vector<TagId>{};
    if (r.lossy != has_a1 || r.dropped != want || !ValidateTagged(r.sentence)) {
      ++wrong_diagnostics;
    }
  }
  CswBuildOptions strict;
  const CswBuildResult lossy = BuildCswCorpus(data.source, deleting, "es", strict);
  if (lossy.n_lossy != expected_lossy || lossy.excluded_ids.size() != expected_lossy) {
    problems.push_back("strict build counted " + std::to_string(lossy.n_lossy) + " lossy, want " +
                       std::to_string(expected_lossy));
  }
  if (wrong_diagnostics > 0) {
    problems.push_back(std::to_string(wrong_diagnostics) + " wrong lossy diagnostics");
  }
  const std::string detail = std::to_string(data.source.samples.size()) + " samples, " +
                             std::to_string(tagged) + " tagged sentences validated, " +
                             std::to_string(expected_lossy) + " lossy under tag deletion";
  if (problems.empty()) return Pass(detail);
  return Fail(detail + "; " + Join(problems, "; "));
}

// ---------------------------------------------------------------------------

Outcome AlignQuotas() {
  const auto data = testing::MakeSyntheticBilingual(600, 12);
  DictionaryTranslator dict(data.lexicon, "en", "es");
  std::vector<ParallelTermPair> pairs = BuildCswCorpus(data.source, dict, "es", {}).pairs;
  if (pairs.size() < 1000) return Fail("synthetic set has only " + std::to_string(pairs.size()) + " pairs");
  pairs.resize(1000);
  AlignDataOptions options;
  options.corrupt_rate = 0.1;
  options.seed = 7;
  const auto examples = BuildAlignmentExamples(pairs, data.source, data.target, options);
  const std::string sep = " " + std::string(kSepToken) + " ";
  std::size_t corrupted = 0;
  std::size_t bad_negatives = 0;
  std::size_t positives = 0;
  std::size_t bad_positives = 0;
  for (const auto& e : examples) {
    const std::string chunk = e.input_text.substr(0, e.input_text.rfind(sep));
    if (e.corrupted) {
      ++corrupted;
      bad_negatives += e.label != kNoneLabel;
    } else if (e.label != kNoneLabel) {
      ++positives;
      bad_positives += chunk.find(e.label) == std::string::npos;
    }
  }
  const auto want =
      static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(examples.size())));
  const std::string detail = "1000 pairs, " + std::to_string(examples.size()) + " examples, " +
                             std::to_string(corrupted) + " corrupted (want " +
                             std::to_string(want) + "), " + std::to_string(bad_negatives) +
                             " not None, " + std::to_string(positives) + " positives, " +
                             std::to_string(bad_positives) + " not verbatim";
  return corrupted == want && bad_negatives == 0 && bad_positives == 0 && positives > 0
             ? Pass(detail)
             : Fail(detail);
}

// ---------------------------------------------------------------------------

struct CliRun {
  int code;
  std::string err;
};

CliRun RunCliArgs(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"ttcsw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, err.str()};
}

Outcome EndToEnd() {
  const auto start = std::chrono::steady_clock::now();
  const auto data = testing::MakeSyntheticBilingual(200, 13);
  testing::TempDir dir;
  std::vector<std::string> problems;

  std::ofstream(dir.File("lex.tsv")) << data.lexicon_tsv;
  std::ofstream(dir.File("no-align.jsonl")) << "";
  ExportCorpus(data.target, dir.File("target.jsonl"));

  // Generator fixture: the gold serialization of every input the pipeline
  // sends, recorded from an oracle run.
  testing::ProjectingOracle oracle(data);
  DictionaryTranslator translator(data.lexicon, "en", "es");
  DictionaryAligner aligner(data.lexicon);
  const TtaConfig config;
  TtaPredictCorpus(data.target, {&translator, &aligner, &oracle}, config, 4);
  testing::WriteAsteFixture(oracle.Recorded(), dir.File("generator.jsonl"));

  const std::vector<std::string> backends = {
      "--generator", "fixture:" + dir.File("generator.jsonl"), "--translator",
      "dict:" + dir.File("lex.tsv")};
  auto tta_args = [&](const std::string& aligner_spec, const std::string& out) {
    std::vector<std::string> a = {"tta", "--corpus", dir.File("target.jsonl")};
    a.insert(a.end(), backends.begin(), backends.end());
    a.insert(a.end(), {"--aligner", aligner_spec, "--out", out});
    return a;
  };
  auto with_globals = [](std::vector<std::string> globals, const std::vector<std::string>& rest) {
    globals.insert(globals.end(), rest.begin(), rest.end());
    return globals;
  };

  const std::string cache = dir.File("cache");
  const std::string align_spec = "dict-align:" + dir.File("lex.tsv");
  const CliRun cold = RunCliArgs(with_globals({"--seed", "1", "--jobs", "4", "--cache-dir", cache},
                                              tta_args(align_spec, dir.File("run0.jsonl"))));
  const CliRun warm1 = RunCliArgs(with_globals({"--seed", "1", "--cache-dir", cache, "--replay"},
                                               tta_args(align_spec, dir.File("run1.jsonl"))));
  const CliRun warm2 = RunCliArgs(with_globals({"--seed", "1", "--cache-dir", cache, "--replay"},
                                               tta_args(align_spec, dir.File("run2.jsonl"))));
  if (cold.code != 0 || warm1.code != 0 || warm2.code != 0) {
    return Fail("tta runs failed: " + cold.err + warm1.err + warm2.err);
  }
  const std::string run1 = ReadFile(dir.File("run1.jsonl"));
  const bool identical = run1 == ReadFile(dir.File("run2.jsonl")) &&
                         run1 == ReadFile(dir.File("run0.jsonl"));
  if (!identical) problems.push_back("warm-cache runs are not byte-identical");

  const auto preds = PredictionsFromString(run1);
  std::map<std::string, std::vector<Triplet>> by_id;
  std::size_t augmented = 0;
  for (const auto& p : preds) {
    by_id[p.id] = p.triplets;
    augmented += p.diagnostics.n_augmented;
  }
  const MetricsReport m = EvaluateById(by_id, data.target);
  if (m.wF1 != 1.0) problems.push_back("wF1 " + Fmt("%.6f", m.wF1));
  if (augmented == 0) problems.push_back("no augmented inputs were built");

  // Always-None aligner.
  const CliRun none = RunCliArgs(tta_args("fixture:" + dir.File("no-align.jsonl"),
                                          dir.File("none.jsonl")));
  const CliRun plain =
      RunCliArgs({"predict", "--corpus", dir.File("target.jsonl"), backends[0], backends[1],
                  "--out", dir.File("plain.jsonl")});
  if (none.code != 0 || plain.code != 0) return Fail("predict runs failed: " + none.err + plain.err);
  const auto a = PredictionsFromString(ReadFile(dir.File("none.jsonl")));
  const auto b = PredictionsFromString(ReadFile(dir.File("plain.jsonl")));
  std::size_t differing = a.size() == b.size() ? 0 : std::max(a.size(), b.size());
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    differing += a[i].id != b[i].id || a[i].triplets != b[i].triplets;
  }
  if (differing > 0) {
    problems.push_back(std::to_string(differing) + " None-aligner predictions differ from predict");
  }

  const double secs = Seconds(start);
  if (secs >= 120.0) problems.push_back("took " + Fmt("%.1f", secs) + " s");
  const std::string detail = "200 samples, " + std::to_string(augmented) +
                             " augmented inputs, wF1 " + Fmt("%.4f", m.wF1) +
                             ", None aligner == predict: " + (differing == 0 ? "yes" : "no") +
                             ", warm-cache byte-identical: " + (identical ? "yes" : "no") + ", " +
                             Fmt("%.1f", secs) + " s";
  if (problems.empty()) return Pass(detail);
  return Fail(detail + "; " + Join(problems, "; "));
}

// ---------------------------------------------------------------------------

using TripletKey = std::tuple<Polarity, std::string, std::string>;

std::multiset<TripletKey> AsMultiset(const std::vector<Triplet>& ts) {
  std::multiset<TripletKey> out;
  for (const auto& t : ts) out.emplace(t.polarity, t.aspect, t.opinion);
  return out;
}

Outcome VoteProperties() {
  std::mt19937_64 rng(31);
  constexpr int kSets = 1000;
  std::size_t permutation_failures = 0;
  std::size_t monotone_failures = 0;
  std::size_t non_trivial = 0;
  for (int i = 0; i < kSets; ++i) {
    const int k = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<Triplet> pool;
    for (int j = 0; j < 5; ++j) pool.push_back(testing::RandomTriplet(rng, 6, 3));
    std::vector<std::vector<Triplet>> lists(k);
    for (auto& l : lists) {
      const int n = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int j = 0; j < n; ++j) {
        l.push_back(std::uniform_int_distribution<int>(0, 3)(rng) == 0
                        ? testing::RandomTriplet(rng, 6, 3)
                        : pool[std::uniform_int_distribution<std::size_t>(0, 4)(rng)]);
      }
    }
    TtaConfig config;
    config.vote_threshold = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
    config.min_support_fraction = 0.5;
    const auto base = Vote(lists, config);
    non_trivial += !base.empty();
    for (int p = 0; p < 3; ++p) {
      auto shuffled = lists;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      permutation_failures += AsMultiset(Vote(shuffled, config)) != AsMultiset(base);
    }
    std::set<TripletKey> previous;
    for (int step = 0; step <= 10; ++step) {
      config.min_support_fraction = step / 10.0;
      const auto out = AsMultiset(Vote(lists, config));
      const std::set<TripletKey> now(out.begin(), out.end());
      if (step > 0 && !std::includes(previous.begin(), previous.end(), now.begin(), now.end())) {
        ++monotone_failures;
      }
      previous = now;
    }
  }
  const std::string detail = std::to_string(kSets) + " candidate-list sets (" +
                             std::to_string(non_trivial) + " with output): " +
                             std::to_string(permutation_failures) + " permutation failures, " +
                             std::to_string(monotone_failures) + " monotonicity failures";
  return permutation_failures == 0 && monotone_failures == 0 ? Pass(detail) : Fail(detail);
}

// ---------------------------------------------------------------------------

const std::vector<std::pair<std::string, std::function<Outcome()>>>& Criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
      {"metric_oracle", MetricOracle},   {"all_null", AllNull},
      {"dataset_stats", DatasetStats},   {"serialization", Serialization},
      {"boundary_csw", BoundaryCsw},     {"align_quotas", AlignQuotas},
      {"e2e_tta", EndToEnd},             {"vote_properties", VoteProperties},
  };
  return kCriteria;
}

int Main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    const bool known = std::any_of(Criteria().begin(), Criteria().end(),
                                   [&](const auto& c) { return c.first == w; });
    if (!known) {
      std::cerr << "unknown criterion '" << w << "'; known:";
      for (const auto& c : Criteria()) std::cerr << " " << c.first;
      std::cerr << "\n";
      return 2;
    }
  }
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& [name, run] : Criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
      continue;
    }
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Status::kPass ? "PASS" : o.status == Status::kFail ? "FAIL"
                                                                                     : "SKIP";
    std::cout << "[" << tag << "] " << name << ": " << o.detail << std::endl;
    (o.status == Status::kPass ? passed : o.status == Status::kFail ? failed : skipped)++;
  }
  std::cout << "acceptance: " << passed << " passed, " << failed << " failed, " << skipped
            << " skipped" << std::endl;
  if (failed > 0) return 1;
  if (passed == 0 && skipped > 0) return 77;
  return 0;
}

}  // namespace
}  // namespace ttcsw

int main(int argc, char** argv) { return ttcsw::Main(argc, argv); }
