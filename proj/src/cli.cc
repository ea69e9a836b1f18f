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

#include "ttcsw/cli.h"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttcsw/align_data.h"
#include "ttcsw/artifact.h"
#include "ttcsw/backends.h"
#include "ttcsw/boundary_csw.h"
#include "ttcsw/config.h"
#include "ttcsw/corpus.h"
#include "ttcsw/error.h"
#include "ttcsw/lexicon.h"
#include "ttcsw/metrics.h"
#include "ttcsw/tta.h"

namespace ttcsw {
namespace {

namespace fs = std::filesystem;

struct DatasetInfo {
  std::string_view name;
  std::string_view language;
};

constexpr DatasetInfo kDatasets[] = {
    {"opener_en", "en"},      {"opener_es", "es"}, {"multibooked_eu", "eu"},
    {"multibooked_ca", "ca"}, {"norec", "no"},
};

std::optional<std::string> DatasetLanguage(std::string_view name) {
  for (const DatasetInfo& d : kDatasets) {
    if (d.name == name) return std::string(d.language);
  }
  return std::nullopt;
}

// Options shared by every verb.
struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string cache_dir;
  bool replay = false;
  std::optional<std::size_t> jobs;
  std::optional<bool> strict;
};

Config LoadConfig(const GlobalOptions& g) {
  Config config = g.config_path.empty() ? Config() : Config::Load(g.config_path);
  config.ApplyEnvironment();
  if (g.seed) config.Set("seed", std::to_string(*g.seed));
  if (!g.cache_dir.empty()) config.Set("cache_dir", g.cache_dir);
  if (g.replay) config.Set("replay", "true");
  if (g.jobs) config.Set("jobs", std::to_string(*g.jobs));
  if (g.strict) config.Set("strict", *g.strict ? "true" : "false");
  return config;
}

std::size_t Jobs(const Config& config) { return std::max<std::size_t>(1, config.GetSize("jobs", 1)); }

Split ParseSplitOrThrow(const std::string& name) {
  auto split = ParseSplit(name);
  if (!split) throw UsageError("unknown split '" + name + "' (train, dev or test)");
  return *split;
}

// A corpus given as an artifact file, a dataset name under data.dir or a
// dataset directory.
struct CorpusSource {
  std::string corpus_file;
  std::string dataset;
  std::string path;
  std::string lang;
  std::string split = "test";

  void Register(CLI::App* cmd, bool with_file = true) {
    if (with_file) cmd->add_option("--corpus", corpus_file, "Normalized corpus file");
    cmd->add_option("--dataset", dataset,
                    "Dataset name under data.dir (opener_en, opener_es, multibooked_eu, "
                    "multibooked_ca, norec)");
    cmd->add_option("--path", path, "Dataset directory holding train/dev/test.json");
    cmd->add_option("--lang", lang, "Language code of a dataset directory");
    cmd->add_option("--split", split, "Split of a dataset (train, dev, test, all)");
  }

  bool empty() const { return corpus_file.empty() && dataset.empty() && path.empty(); }

  Corpus Load(const Config& config, std::ostream& err) const {
    const int given = !corpus_file.empty() + !dataset.empty() + !path.empty();
    if (given != 1) throw UsageError("give exactly one of --corpus, --dataset, --path");
    if (!corpus_file.empty()) return ImportCorpus(corpus_file);
    std::string dir = path;
    std::string language = lang;
    if (!dataset.empty()) {
      const auto data_dir = config.Get("data.dir");
      if (!data_dir || data_dir->empty()) {
        throw UsageError("--dataset needs data.dir (config) or TTCSW_DATA_DIR");
      }
      dir = (fs::path(*data_dir) / dataset).string();
      if (language.empty()) language = DatasetLanguage(dataset).value_or("");
    }
    if (language.empty()) language = DatasetLanguage(fs::path(dir).filename().string()).value_or("");
    if (language.empty()) throw UsageError("cannot infer the language of '" + dir + "'; use --lang");
    IngestDiagnostics diag;
    Corpus corpus;
    if (split == "all") {
      // Union of the three splits, reported under the test split.
      bool first = true;
      for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
        Corpus part = IngestSemeval(dir, language, s, &diag);
        if (first) {
          corpus = std::move(part);
          first = false;
        } else {
          corpus.samples.insert(corpus.samples.end(), part.samples.begin(), part.samples.end());
        }
      }
      corpus.split = Split::kTest;
    } else {
      corpus = IngestSemeval(dir, language, ParseSplitOrThrow(split), &diag);
    }
    if (diag.malformed_records + diag.unknown_polarity + diag.span_mismatches > 0) {
      err << "ttcsw: " << corpus.name << ": skipped " << diag.malformed_records
          << " malformed records, " << diag.unknown_polarity << " triplets with unknown polarity, "
          << diag.span_mismatches << " mismatched spans\n";
    }
    return corpus;
  }
};

ArtifactHeader MakeHeader(const Config& config, nlohmann::ordered_json extra = {}) {
  ArtifactHeader header;
  header.seed = config.GetUint64("seed", 0);
  header.config_digest = config.Digest();
  if (!extra.is_null()) header.extra = std::move(extra);
  return header;
}

std::string BackendSpec(const Config& config, const std::string& flag, const std::string& key,
                        const std::string& fallback) {
  if (!flag.empty()) return flag;
  return config.GetString(key, fallback);
}

void ReportCache(const Backend& backend, std::string_view role, std::ostream& err) {
  if (const auto* cached = dynamic_cast<const CachedBackend*>(&backend)) {
    const CacheStats s = cached->stats();
    err << "ttcsw: " << role << " cache: " << s.hits << " hits, " << s.misses << " misses, "
        << s.corrupt << " corrupt, " << s.stores << " stores\n";
    for (const std::string& d : cached->diagnostics()) err << "ttcsw: " << d << "\n";
  }
}

std::string FormatPercent(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << fraction * 100.0;
  return os.str();
}

std::vector<std::size_t> ParseSizeList(const std::string& text, std::string_view what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": expected a comma-separated list of positive integers");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::map<std::string, std::vector<Triplet>> PredictionMap(const std::vector<Prediction>& preds) {
  std::map<std::string, std::vector<Triplet>> out;
  for (const Prediction& p : preds) out[p.id] = p.triplets;
  return out;
}

void WriteOrPrint(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cross-lingual aspect sentiment triplet extraction toolkit"};
  app.name("ttcsw");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Flat key = value configuration file");
  app.add_option("--seed", g.seed, "Random seed recorded in every artifact header");
  app.add_option("--cache-dir", g.cache_dir, "Backend response cache directory");
  app.add_flag("--replay", g.replay, "Serve backend calls from the cache only");
  app.add_option("--jobs", g.jobs, "Concurrent backend requests")->check(CLI::PositiveNumber);
  app.add_flag("--strict,!--lenient", g.strict, "Abort (or exclude samples) on lossy steps");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Convert a dataset split into a corpus file");
  CorpusSource ingest_src;
  std::string ingest_out;
  ingest_src.Register(ingest, false);
  ingest->add_option("--out", ingest_out, "Output corpus file")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  CorpusSource stats_src;
  std::string stats_json;
  stats_src.Register(stats);
  stats->add_option("--json", stats_json, "Also write the statistics as JSON");

  // build-csw
  auto* build_csw = app.add_subcommand("build-csw", "Boundary-aware code-switched corpus");
  CorpusSource csw_src;
  std::string csw_target, csw_translator, csw_out_dir;
  std::optional<double> csw_rate;
  csw_src.Register(build_csw);
  build_csw->add_option("--target-lang", csw_target, "Target language code");
  build_csw->add_option("--translator", csw_translator, "Translation backend");
  build_csw->add_option("--switch-rate", csw_rate, "Per-term switch probability");
  build_csw->add_option("--out-dir", csw_out_dir, "Output directory")->required();

  // build-dict-csw
  auto* build_dict = app.add_subcommand("build-dict-csw", "Dictionary code-switching baseline");
  CorpusSource dict_src;
  std::string dict_lexicon, dict_out, dict_strategy, dict_prov;
  std::optional<double> dict_ratio;
  std::uint64_t dict_epoch = 0;
  dict_src.Register(build_dict);
  build_dict->add_option("--lexicon", dict_lexicon, "Bilingual lexicon (source<TAB>target)")
      ->required();
  build_dict->add_option("--ratio", dict_ratio, "Per-word switch probability");
  build_dict->add_option("--strategy", dict_strategy, "static or dynamic");
  build_dict->add_option("--epoch", dict_epoch, "Epoch number for the dynamic strategy");
  build_dict->add_option("--out", dict_out, "Output corpus file")->required();
  build_dict->add_option("--provenance-out", dict_prov, "Provenance side file");

  // build-align
  auto* build_align = app.add_subcommand("build-align", "Alignment-model training examples");
  std::string align_pairs, align_source, align_translated, align_out;
  std::optional<std::size_t> align_window, align_stride;
  std::optional<double> align_rate;
  build_align->add_option("--pairs", align_pairs, "Parallel term pairs file")->required();
  build_align->add_option("--source", align_source, "Source corpus file")->required();
  build_align->add_option("--translated", align_translated, "Translated (CT) corpus file")
      ->required();
  build_align->add_option("--window", align_window, "Chunk length in tokens");
  build_align->add_option("--stride", align_stride, "Chunk stride in tokens");
  build_align->add_option("--corrupt-rate", align_rate, "Fraction of corrupted queries");
  build_align->add_option("--out", align_out, "Output examples file")->required();

  // predict / tta / sweep share backend and TTA options.
  struct PredictArgs {
    CorpusSource src;
    std::string generator, translator, aligner, out, mode;
    std::optional<std::size_t> max_ngram, top_k, n_candidates;
    std::optional<double> threshold, min_support;
    std::string source_lang;
  };
  auto register_backends = [](CLI::App* cmd, PredictArgs& a, bool tta) {
    a.src.Register(cmd);
    cmd->add_option("--generator", a.generator, "Generation backend");
    cmd->add_option("--mode", a.mode, "Training setting of the generator (CL, CT, CSW)");
    if (!tta) return;
    cmd->add_option("--translator", a.translator, "Translation backend");
    cmd->add_option("--aligner", a.aligner, "Alignment backend");
    cmd->add_option("--max-ngram", a.max_ngram, "Longest phrase in tokens");
    cmd->add_option("--top-k", a.top_k, "Aligned phrases kept");
    cmd->add_option("--n-candidates", a.n_candidates, "Augmented inputs per sample");
    cmd->add_option("--vote-threshold", a.threshold, "Clustering similarity threshold");
    cmd->add_option("--min-support", a.min_support, "Fraction of lists supporting a triplet");
    cmd->add_option("--source-lang", a.source_lang, "Pivot language of the translation");
  };
  auto* predict = app.add_subcommand("predict", "Plain prediction without augmentation");
  PredictArgs pa;
  register_backends(predict, pa, false);
  predict->add_option("--out", pa.out, "Predictions file")->required();

  auto* tta = app.add_subcommand("tta", "Prediction with test-time augmentation");
  PredictArgs ta;
  register_backends(tta, ta, true);
  tta->add_option("--out", ta.out, "Predictions file")->required();

  auto* sweep = app.add_subcommand("sweep", "Grid over max n-gram and candidate count");
  PredictArgs sa;
  std::string sweep_ngrams = "1,2,3";
  std::string sweep_candidates = "5,10";
  register_backends(sweep, sa, true);
  sweep->add_option("--max-ngrams", sweep_ngrams, "Comma-separated max n-gram values");
  sweep->add_option("--candidates", sweep_candidates, "Comma-separated candidate counts");
  sweep->add_option("--out", sa.out, "TSV output (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "Weighted precision / recall / F1");
  std::vector<std::string> eval_gold, eval_datasets, eval_preds;
  std::string eval_split = "test", eval_json;
  bool eval_all_null = false, eval_half = false, eval_no_empty = false;
  eval->add_option("--gold", eval_gold, "Gold corpus file (repeatable)");
  eval->add_option("--dataset", eval_datasets, "Gold dataset under data.dir (repeatable)");
  eval->add_option("--split", eval_split, "Split of --dataset gold");
  eval->add_option("--predictions", eval_preds, "Predictions file per gold source, in order");
  eval->add_flag("--all-null", eval_all_null, "Score an empty prediction for every sample");
  eval->add_flag("--half-weight-single-slot", eval_half, "Keep the 1/2 factor for one-slot gold");
  eval->add_flag("--no-empty-convention", eval_no_empty, "Score empty lists as empty");
  eval->add_option("--json", eval_json, "Also write the report as JSON");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp& e) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "ttcsw: error: " << e.what() << "\n";
      return kExitUsage;
    }
    const Config config = LoadConfig(g);
    const std::uint64_t seed = config.GetUint64("seed", 0);

    if (ingest->parsed()) {
      Corpus corpus = ingest_src.Load(config, err);
      ExportCorpus(corpus, ingest_out, seed, config.Digest());
      err << "ttcsw: wrote " << corpus.samples.size() << " samples to " << ingest_out << "\n";
      return 0;
    }

    if (stats->parsed()) {
      std::vector<std::pair<std::string, StatsReport>> rows;
      if (!stats_src.corpus_file.empty() || !stats_src.dataset.empty() || !stats_src.path.empty()) {
        const Corpus corpus = stats_src.Load(config, err);
        const std::string split =
            stats_src.corpus_file.empty() ? stats_src.split : std::string(SplitName(corpus.split));
        rows.emplace_back(corpus.name + "\t" + split, CorpusStats(corpus));
      } else {
        throw UsageError("stats needs --corpus, --dataset or --path");
      }
      out << "corpus\tsplit\t#s\t#a\t#o\t#triplets\tempty%\n";
      nlohmann::ordered_json json = nlohmann::ordered_json::array();
      for (const auto& [name, s] : rows) {
        out << name << "\t" << s.n_sentences << "\t" << s.n_aspects << "\t" << s.n_opinions
            << "\t" << s.n_triplets << "\t" << FormatPercent(s.empty_label_rate) << "\n";
        const std::size_t tab = name.find('\t');
        json.push_back({{"corpus", name.substr(0, tab)},
                        {"split", name.substr(tab + 1)},
                        {"n_sentences", s.n_sentences},
                        {"n_aspects", s.n_aspects},
                        {"n_opinions", s.n_opinions},
                        {"n_triplets", s.n_triplets},
                        {"empty_label_rate", s.empty_label_rate},
                        {"n_unique_aspects", s.n_unique_aspects},
                        {"n_unique_opinions", s.n_unique_opinions}});
      }
      if (!stats_json.empty()) WriteFileAtomic(stats_json, json.dump(2) + "\n");
      return 0;
    }

    if (build_csw->parsed()) {
      const Corpus corpus = csw_src.Load(config, err);
      const std::string target = csw_target.empty() ? config.GetString("csw.target_lang", "")
                                                    : csw_target;
      if (!IsLanguageCode(target)) throw UsageError("build-csw needs --target-lang");
      BackendPtr translator = MakeBackend(
          BackendSpec(config, csw_translator, "backend.translator", "identity"), config,
          corpus.language, target);
      CswBuildOptions options;
      options.switch_rate = csw_rate.value_or(config.GetDouble("csw.switch_rate", 0.5));
      options.seed = seed;
      options.strict = config.GetBool("strict", true);
      options.jobs = Jobs(config);
      if (!(options.switch_rate >= 0.0 && options.switch_rate <= 1.0)) {
        throw UsageError("--switch-rate must lie in [0, 1]");
      }
      const CswBuildResult result = BuildCswCorpus(corpus, *translator, target, options);
      const std::string digest = config.Digest();
      const fs::path dir(csw_out_dir);
      ExportCorpus(result.translated.corpus, (dir / "ct.jsonl").string(), seed, digest);
      ExportCorpus(result.code_switched.corpus, (dir / "csw.jsonl").string(), seed, digest);
      WriteFileAtomic((dir / "ct.provenance.jsonl").string(),
                      ProvenanceToString(result.translated.provenance, seed, digest));
      WriteFileAtomic((dir / "csw.provenance.jsonl").string(),
                      ProvenanceToString(result.code_switched.provenance, seed, digest));
      WriteFileAtomic((dir / "pairs.jsonl").string(), PairsToString(result.pairs, seed, digest));
      for (const std::string& n : result.notes) err << "ttcsw: " << n << "\n";
      err << "ttcsw: " << result.code_switched.corpus.samples.size() << " samples written, "
          << result.excluded_ids.size() << " excluded, " << result.n_lossy << " lossy, "
          << result.pairs.size() << " term pairs\n";
      ReportCache(*translator, "translator", err);
      return 0;
    }

    if (build_dict->parsed()) {
      const Corpus corpus = dict_src.Load(config, err);
      const BilingualLexicon lexicon = BilingualLexicon::Load(dict_lexicon);
      DictCswOptions options;
      options.ratio = dict_ratio.value_or(config.GetDouble("dict.ratio", 0.3));
      const std::string strategy =
          dict_strategy.empty() ? config.GetString("dict.strategy", "static") : dict_strategy;
      if (strategy == "static") {
        options.strategy = DictStrategy::kStatic;
      } else if (strategy == "dynamic") {
        options.strategy = DictStrategy::kDynamic;
      } else {
        throw UsageError("--strategy must be static or dynamic");
      }
      if (!(options.ratio >= 0.0 && options.ratio <= 1.0)) {
        throw UsageError("--ratio must lie in [0, 1]");
      }
      options.seed = seed;
      options.epoch = dict_epoch;
      const CswCorpus result = BuildDictCsw(corpus, lexicon, options);
      ExportCorpus(result.corpus, dict_out, seed, config.Digest());
      if (!dict_prov.empty()) {
        WriteFileAtomic(dict_prov, ProvenanceToString(result.provenance, seed, config.Digest()));
      }
      return 0;
    }

    if (build_align->parsed()) {
      const std::vector<ParallelTermPair> pairs = PairsFromString(ReadFile(align_pairs));
      const Corpus source = ImportCorpus(align_source);
      const Corpus translated = ImportCorpus(align_translated);
      AlignDataOptions options;
      options.window = align_window.value_or(config.GetSize("align.window", options.window));
      options.stride = align_stride.value_or(config.GetSize("align.stride", options.stride));
      options.corrupt_rate =
          align_rate.value_or(config.GetDouble("align.corrupt_rate", options.corrupt_rate));
      options.seed = seed;
      if (options.window == 0) throw UsageError("--window must be positive");
      if (options.stride > options.window) throw UsageError("--stride must not exceed --window");
      if (!(options.corrupt_rate >= 0.0 && options.corrupt_rate <= 1.0)) {
        throw UsageError("--corrupt-rate must lie in [0, 1]");
      }
      const auto examples = BuildAlignmentExamples(pairs, source, translated, options);
      WriteFileAtomic(align_out, AlignmentExamplesToString(examples, seed, config.Digest()));
      err << "ttcsw: wrote " << examples.size() << " alignment examples\n";
      return 0;
    }

    auto tta_config = [&](const PredictArgs& a) {
      Config c = config;
      if (a.max_ngram) c.Set("tta.max_ngram", std::to_string(*a.max_ngram));
      if (a.top_k) c.Set("tta.top_k_phrases", std::to_string(*a.top_k));
      if (a.n_candidates) c.Set("tta.n_candidates", std::to_string(*a.n_candidates));
      if (a.threshold) c.Set("tta.vote_threshold", std::to_string(*a.threshold));
      if (a.min_support) c.Set("tta.min_support_fraction", std::to_string(*a.min_support));
      if (!a.source_lang.empty()) c.Set("tta.source_lang", a.source_lang);
      if (!a.mode.empty()) c.Set("mode", a.mode);
      return c;
    };
    auto check_mode = [](const Config& c) {
      const std::string mode = c.GetString("mode", "CL");
      if (mode != "CL" && mode != "CT" && mode != "CSW") {
        throw UsageError("--mode must be CL, CT or CSW");
      }
      return mode;
    };

    if (predict->parsed()) {
      const Config c = tta_config(pa);
      const std::string mode = check_mode(c);
      const Corpus corpus = pa.src.Load(c, err);
      BackendPtr generator = MakeBackend(BackendSpec(c, pa.generator, "backend.generator", "echo"),
                                         c, c.GetString("tta.source_lang", "en"), corpus.language);
      const auto preds = PredictCorpus(corpus, *generator, Jobs(c));
      WriteFileAtomic(pa.out, PredictionsToString(
                                  preds, MakeHeader(c, {{"command", "predict"},
                                                        {"mode", mode},
                                                        {"corpus", corpus.name},
                                                        {"generator", generator->Id()}})));
      ReportCache(*generator, "generator", err);
      return 0;
    }

    if (tta->parsed() || sweep->parsed()) {
      PredictArgs& a = tta->parsed() ? ta : sa;
      Config c = tta_config(a);
      const std::string mode = check_mode(c);
      const Corpus corpus = a.src.Load(c, err);
      const std::string src_lang = c.GetString("tta.source_lang", "en");
      BackendPtr generator = MakeBackend(BackendSpec(c, a.generator, "backend.generator", "echo"),
                                         c, src_lang, corpus.language);
      BackendPtr translator =
          MakeBackend(BackendSpec(c, a.translator, "backend.translator", "identity"), c, src_lang,
                      corpus.language);
      BackendPtr aligner = MakeBackend(BackendSpec(c, a.aligner, "backend.aligner", "echo"), c,
                                       src_lang, corpus.language);
      const TtaBackends backends{translator.get(), aligner.get(), generator.get()};

      if (tta->parsed()) {
        const TtaConfig cfg = TtaConfigFrom(c);
        const auto preds = TtaPredictCorpus(corpus, backends, cfg, Jobs(c));
        std::size_t fell_back = 0;
        for (const Prediction& p : preds) {
          fell_back += p.diagnostics.fell_back;
          for (const std::string& n : p.diagnostics.notes) err << "ttcsw: " << n << "\n";
        }
        WriteFileAtomic(a.out, PredictionsToString(
                                   preds, MakeHeader(c, {{"command", "tta"},
                                                         {"mode", mode},
                                                         {"corpus", corpus.name},
                                                         {"generator", generator->Id()},
                                                         {"translator", translator->Id()},
                                                         {"aligner", aligner->Id()}})));
        if (fell_back > 0) {
          err << "ttcsw: " << fell_back << " samples fell back to the plain prediction\n";
        }
      } else {
        const auto ngrams = ParseSizeList(sweep_ngrams, "--max-ngrams");
        const auto candidates = ParseSizeList(sweep_candidates, "--candidates");
        const MetricsOptions metrics = MetricsOptionsFrom(c);
        std::ostringstream table;
        table << "max_ngram\tn_candidates\twP\twR\twF1\tNP_wF1\n";
        for (std::size_t n : ngrams) {
          for (std::size_t k : candidates) {
            Config cell = c;
            cell.Set("tta.max_ngram", std::to_string(n));
            cell.Set("tta.n_candidates", std::to_string(k));
            const auto preds =
                TtaPredictCorpus(corpus, backends, TtaConfigFrom(cell), Jobs(cell));
            const MetricsReport r = EvaluateById(PredictionMap(preds), corpus, metrics);
            table << n << "\t" << k << "\t" << FormatPercent(r.wP) << "\t" << FormatPercent(r.wR)
                  << "\t" << FormatPercent(r.wF1) << "\t" << FormatPercent(r.np_wF1) << "\n";
          }
        }
        WriteOrPrint(a.out, table.str(), out);
      }
      ReportCache(*generator, "generator", err);
      ReportCache(*translator, "translator", err);
      ReportCache(*aligner, "aligner", err);
      return 0;
    }

    if (eval->parsed()) {
      MetricsOptions metrics = MetricsOptionsFrom(config);
      if (eval_half) metrics.half_weight_single_slot = true;
      if (eval_no_empty) metrics.empty_list_convention = false;
      std::vector<Corpus> golds;
      for (const std::string& f : eval_gold) golds.push_back(ImportCorpus(f));
      for (const std::string& d : eval_datasets) {
        CorpusSource s;
        s.dataset = d;
        s.split = eval_split;
        golds.push_back(s.Load(config, err));
      }
      if (golds.empty()) throw UsageError("eval needs --gold or --dataset");
      if (!eval_all_null && eval_preds.size() != golds.size()) {
        throw UsageError("give one --predictions file per gold source (or --all-null)");
      }
      if (eval_all_null && !eval_preds.empty()) {
        throw UsageError("--all-null and --predictions are exclusive");
      }
      std::vector<std::pair<std::string, MetricsReport>> rows;
      for (std::size_t i = 0; i < golds.size(); ++i) {
        const std::string name = golds[i].name;
        if (eval_all_null) {
          rows.emplace_back(name, AllNullBaseline(golds[i], metrics));
        } else {
          const auto preds = PredictionsFromString(ReadFile(eval_preds[i]));
          rows.emplace_back(name, EvaluateById(PredictionMap(preds), golds[i], metrics));
        }
      }
      out << FormatMetricsTable(rows);
      if (!eval_json.empty()) WriteFileAtomic(eval_json, MetricsToJson(rows));
      return 0;
    }
    throw UsageError("no command given");
  } catch (const Error& e) {
    err << "ttcsw: error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::invalid_argument& e) {
    err << "ttcsw: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ttcsw: error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace ttcsw
