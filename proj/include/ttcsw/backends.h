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

#ifndef TTCSW_BACKENDS_H_
#define TTCSW_BACKENDS_H_

// Translation, structural generation and alignment prediction behind one
// interface. Remote calls use the JSON wire protocol:
//
//   POST /v1/translate {"texts":[...],"source_lang":"en","target_lang":"es",
//                       "preserve_tags":true}        -> {"translations":[...]}
//   POST /v1/generate  {"inputs":[...],"task":"aste"|"align",
//                       "target_lang_hint":"es"|null} -> {"outputs":[...]}
//   GET  /health                                     -> {"status":"ok","model_id":"..."}

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/lexicon.h"

namespace ttcsw {

// Separator between a sentence chunk and a query term in alignment inputs.
inline constexpr std::string_view kSepToken = "<SEP>";
// Alignment output meaning "no counterpart in this sentence".
inline constexpr std::string_view kNoneLabel = "None";

struct TranslationRequest {
  std::vector<std::string> texts;
  std::string source_lang;
  std::string target_lang;
  bool preserve_tags = true;
};

enum class GenerationTask { kAste, kAlign };
std::string_view TaskName(GenerationTask task);
std::optional<GenerationTask> ParseTask(std::string_view name);

struct GenerationRequest {
  std::vector<std::string> inputs;
  GenerationTask task = GenerationTask::kAste;
  std::optional<std::string> target_lang_hint;
};

struct BackendResponse {
  std::vector<std::string> outputs;
  std::chrono::duration<double> latency{0};
  std::string backend_id;
};

// Exact request bodies of the wire protocol.
std::string TranslationRequestBody(const TranslationRequest& request);
std::string GenerationRequestBody(const GenerationRequest& request);

// Two-letter lowercase ISO 639-1 code.
bool IsLanguageCode(std::string_view code);

// Builds "chunk <SEP> term".
std::string AlignmentInput(std::string_view chunk, std::string_view term);

// Implementations override DoTranslate / DoGenerate. The public entry
// points check preconditions and positional integrity, and time the call.
// Implementations must be safe to call concurrently.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string Id() const = 0;

  BackendResponse Translate(const TranslationRequest& request);
  BackendResponse Generate(const GenerationRequest& request);

 protected:
  virtual std::vector<std::string> DoTranslate(const TranslationRequest& request);
  virtual std::vector<std::string> DoGenerate(const GenerationRequest& request);
};

using BackendPtr = std::shared_ptr<Backend>;

// Returns its input.
class IdentityTranslator : public Backend {
 public:
  std::string Id() const override { return "mock:identity"; }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
};

// Echoes inputs for both capabilities.
class EchoBackend : public Backend {
 public:
  std::string Id() const override { return "mock:echo"; }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;
};

// Word/phrase lookup translation; inline tags are passed through. The
// lexicon translates source_lang -> target_lang; requests in the opposite
// direction use the reversed lexicon.
class DictionaryTranslator : public Backend {
 public:
  DictionaryTranslator(BilingualLexicon lexicon, std::string source_lang,
                       std::string target_lang);
  std::string Id() const override;

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;

 private:
  BilingualLexicon forward_;
  BilingualLexicon backward_;
  std::string source_lang_;
  std::string target_lang_;
};

// Alignment mock: for "sentence <SEP> term" finds the term, or its
// dictionary translation in either direction, in the sentence and returns
// the matched surface; otherwise "None".
class DictionaryAligner : public Backend {
 public:
  explicit DictionaryAligner(BilingualLexicon lexicon);
  std::string Id() const override;

 protected:
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  BilingualLexicon forward_;
  BilingualLexicon backward_;
};

// Lookup tables keyed by input text. Misses return "None" for the align
// task and the empty string otherwise.
class TableBackend : public Backend {
 public:
  struct Tables {
    std::map<std::string, std::string> translate;
    std::map<std::string, std::string> aste;
    std::map<std::string, std::string> align;
  };

  explicit TableBackend(Tables tables, std::string id = "mock:table");

  // JSON lines {"task": "translate"|"aste"|"align", "input": .., "output": ..}.
  static std::shared_ptr<TableBackend> Load(const std::string& path);

  std::string Id() const override { return id_; }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  Tables tables_;
  std::string id_;
};

// Wraps callables; an unset callable makes that capability unsupported.
class FunctionBackend : public Backend {
 public:
  using TranslateFn = std::function<std::vector<std::string>(const TranslationRequest&)>;
  using GenerateFn = std::function<std::vector<std::string>(const GenerationRequest&)>;

  FunctionBackend(std::string id, TranslateFn translate, GenerateFn generate)
      : id_(std::move(id)), translate_(std::move(translate)), generate_(std::move(generate)) {}
  std::string Id() const override { return id_; }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  std::string id_;
  TranslateFn translate_;
  GenerateFn generate_;
};

// Counts calls reaching the wrapped backend.
class CountingBackend : public Backend {
 public:
  explicit CountingBackend(BackendPtr inner) : inner_(std::move(inner)) {}
  std::string Id() const override { return inner_->Id(); }
  std::size_t calls() const { return calls_.load(); }

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  BackendPtr inner_;
  std::atomic<std::size_t> calls_{0};
};

struct RemoteOptions {
  std::string base_url = "http://127.0.0.1:8080";
  std::string auth_token;
  double timeout_seconds = 60.0;
  // Total attempts per request, including the first.
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::size_t max_batch_size = 16;
};

// HTTP client for the wire protocol. Requests larger than max_batch_size
// are split and reassembled in order.
class RemoteBackend : public Backend {
 public:
  explicit RemoteBackend(RemoteOptions options);
  std::string Id() const override { return "remote:" + options_.base_url; }

  // GET /health; returns model_id. Throws on transport or protocol errors.
  std::string Health();

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  std::string Post(const std::string& path, const std::string& body);

  RemoteOptions options_;
};

enum class CacheMode { kReadWrite, kReplay };

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t corrupt = 0;
  std::size_t stores = 0;
};

// Content-addressed on-disk response cache. Key: SHA-256 of the backend id,
// the endpoint and the exact request body. Replay mode raises
// CacheMissError instead of calling the wrapped backend.
class CachedBackend : public Backend {
 public:
  CachedBackend(BackendPtr inner, std::string cache_dir, CacheMode mode);
  std::string Id() const override { return inner_->Id(); }

  CacheStats stats() const;
  std::vector<std::string> diagnostics() const;

 protected:
  std::vector<std::string> DoTranslate(const TranslationRequest& request) override;
  std::vector<std::string> DoGenerate(const GenerationRequest& request) override;

 private:
  std::vector<std::string> Lookup(
      std::string_view endpoint, const std::string& body, std::size_t n_inputs,
      const std::function<std::vector<std::string>()>& call);

  BackendPtr inner_;
  std::string dir_;
  CacheMode mode_;
  static constexpr std::size_t kStripes = 64;
  std::mutex stripes_[kStripes];
  mutable std::mutex stats_mu_;
  CacheStats stats_;
  std::vector<std::string> diagnostics_;
};

std::shared_ptr<CachedBackend> WithCache(BackendPtr backend, const std::string& cache_dir,
                                         CacheMode mode = CacheMode::kReadWrite);

std::string Sha256Hex(std::string_view data);

}  // namespace ttcsw

#endif  // TTCSW_BACKENDS_H_
