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

#include "ttcsw/backends.h"

#include <openssl/evp.h>

#include <filesystem>
#include <functional>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "ttcsw/artifact.h"
#include "ttcsw/error.h"
#include "ttcsw/text.h"

namespace ttcsw {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

BackendError Unsupported(const std::string& id, std::string_view what) {
  return BackendError("backend " + id + " does not support " + std::string(what));
}

std::vector<std::string> ParseOutputs(const std::string& body, std::string_view key,
                                      std::size_t expected) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError("response is not JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains(key) || !j[std::string(key)].is_array()) {
    throw ProtocolError("response lacks a '" + std::string(key) + "' array");
  }
  std::vector<std::string> out;
  for (const auto& v : j[std::string(key)]) {
    if (!v.is_string()) throw ProtocolError("non-string entry in '" + std::string(key) + "'");
    out.push_back(v.get<std::string>());
  }
  if (out.size() != expected) {
    throw ProtocolError("response has " + std::to_string(out.size()) + " outputs for " +
                        std::to_string(expected) + " inputs");
  }
  return out;
}

// Splits "sentence <SEP> term" at the last separator.
std::pair<std::string, std::string> SplitAlignmentInput(std::string_view input) {
  const std::size_t sep = input.rfind(kSepToken);
  if (sep == std::string_view::npos) return {std::string(Trim(input)), ""};
  return {std::string(Trim(input.substr(0, sep))),
          std::string(Trim(input.substr(sep + kSepToken.size())))};
}

}  // namespace

std::string_view TaskName(GenerationTask task) {
  return task == GenerationTask::kAste ? "aste" : "align";
}

std::optional<GenerationTask> ParseTask(std::string_view name) {
  if (name == "aste") return GenerationTask::kAste;
  if (name == "align") return GenerationTask::kAlign;
  return std::nullopt;
}

std::string TranslationRequestBody(const TranslationRequest& request) {
  ordered_json j;
  j["texts"] = request.texts;
  j["source_lang"] = request.source_lang;
  j["target_lang"] = request.target_lang;
  j["preserve_tags"] = request.preserve_tags;
  return j.dump();
}

std::string GenerationRequestBody(const GenerationRequest& request) {
  ordered_json j;
  j["inputs"] = request.inputs;
  j["task"] = std::string(TaskName(request.task));
  if (request.target_lang_hint) {
    j["target_lang_hint"] = *request.target_lang_hint;
  } else {
    j["target_lang_hint"] = nullptr;
  }
  return j.dump();
}

bool IsLanguageCode(std::string_view code) {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' &&
         code[1] <= 'z';
}

std::string AlignmentInput(std::string_view chunk, std::string_view term) {
  std::string out(chunk);
  out += ' ';
  out += kSepToken;
  out += ' ';
  out += term;
  return out;
}

BackendResponse Backend::Translate(const TranslationRequest& request) {
  if (request.texts.empty()) {
    throw std::invalid_argument("translate: texts must be a non-empty list");
  }
  if (!IsLanguageCode(request.source_lang) || !IsLanguageCode(request.target_lang)) {
    throw std::invalid_argument("translate: language codes must be ISO 639-1");
  }
  const auto start = std::chrono::steady_clock::now();
  BackendResponse r;
  r.outputs = DoTranslate(request);
  r.latency = std::chrono::steady_clock::now() - start;
  r.backend_id = Id();
  if (r.outputs.size() != request.texts.size()) {
    throw ProtocolError(Id() + ": translate returned " + std::to_string(r.outputs.size()) +
                        " outputs for " + std::to_string(request.texts.size()) + " inputs");
  }
  return r;
}

BackendResponse Backend::Generate(const GenerationRequest& request) {
  if (request.inputs.empty()) {
    throw std::invalid_argument("generate: inputs must be a non-empty list");
  }
  if (request.target_lang_hint && !IsLanguageCode(*request.target_lang_hint)) {
    throw std::invalid_argument("generate: target_lang_hint must be ISO 639-1");
  }
  const auto start = std::chrono::steady_clock::now();
  BackendResponse r;
  r.outputs = DoGenerate(request);
  r.latency = std::chrono::steady_clock::now() - start;
  r.backend_id = Id();
  if (r.outputs.size() != request.inputs.size()) {
    throw ProtocolError(Id() + ": generate returned " + std::to_string(r.outputs.size()) +
                        " outputs for " + std::to_string(request.inputs.size()) + " inputs");
  }
  return r;
}

std::vector<std::string> Backend::DoTranslate(const TranslationRequest&) {
  throw Unsupported(Id(), "translation");
}

std::vector<std::string> Backend::DoGenerate(const GenerationRequest&) {
  throw Unsupported(Id(), "generation");
}

std::vector<std::string> IdentityTranslator::DoTranslate(const TranslationRequest& request) {
  return request.texts;
}

std::vector<std::string> EchoBackend::DoTranslate(const TranslationRequest& request) {
  return request.texts;
}

std::vector<std::string> EchoBackend::DoGenerate(const GenerationRequest& request) {
  return request.inputs;
}

DictionaryTranslator::DictionaryTranslator(BilingualLexicon lexicon, std::string source_lang,
                                           std::string target_lang)
    : forward_(std::move(lexicon)),
      source_lang_(std::move(source_lang)),
      target_lang_(std::move(target_lang)) {
  backward_ = forward_.Reversed();
}

std::string DictionaryTranslator::Id() const {
  return "mock:dict:" + source_lang_ + "-" + target_lang_ + ":" + forward_.Digest();
}

std::vector<std::string> DictionaryTranslator::DoTranslate(const TranslationRequest& request) {
  const BilingualLexicon* lex = nullptr;
  if (request.source_lang == source_lang_ && request.target_lang == target_lang_) {
    lex = &forward_;
  } else if (request.source_lang == target_lang_ && request.target_lang == source_lang_) {
    lex = &backward_;
  } else {
    throw BackendError(Id() + ": no lexicon for " + request.source_lang + "->" +
                       request.target_lang);
  }
  std::vector<std::string> out;
  out.reserve(request.texts.size());
  for (const auto& t : request.texts) out.push_back(lex->TranslateText(t));
  return out;
}

DictionaryAligner::DictionaryAligner(BilingualLexicon lexicon) : forward_(std::move(lexicon)) {
  backward_ = forward_.Reversed();
}

std::string DictionaryAligner::Id() const { return "mock:dict-align:" + forward_.Digest(); }

std::vector<std::string> DictionaryAligner::DoGenerate(const GenerationRequest& request) {
  if (request.task != GenerationTask::kAlign) throw Unsupported(Id(), "the aste task");
  std::vector<std::string> out;
  out.reserve(request.inputs.size());
  for (const auto& input : request.inputs) {
    const auto [sentence, term] = SplitAlignmentInput(input);
    std::string answer(kNoneLabel);
    if (!term.empty()) {
      for (const std::string& candidate :
           {term, forward_.TranslateText(term), backward_.TranslateText(term)}) {
        if (auto span = FindTerm(sentence, candidate)) {
          answer = sentence.substr(span->begin, span->size());
          break;
        }
      }
    }
    out.push_back(std::move(answer));
  }
  return out;
}

TableBackend::TableBackend(Tables tables, std::string id)
    : tables_(std::move(tables)), id_(std::move(id)) {}

std::shared_ptr<TableBackend> TableBackend::Load(const std::string& path) {
  const std::string content = ReadFile(path);
  Tables tables;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) nl = content.size();
    const std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string task = j.at("task").get<std::string>();
      auto& table = task == "translate" ? tables.translate
                    : task == "aste"    ? tables.aste
                    : task == "align"   ? tables.align
                                        : throw std::invalid_argument("unknown task " + task);
      table[j.at("input").get<std::string>()] = j.at("output").get<std::string>();
    } catch (const std::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": bad fixture entry: " +
                      e.what());
    }
  }
  return std::make_shared<TableBackend>(std::move(tables),
                                        "mock:table:" + Sha256Hex(content).substr(0, 16));
}

std::vector<std::string> TableBackend::DoTranslate(const TranslationRequest& request) {
  std::vector<std::string> out;
  for (const auto& t : request.texts) {
    auto it = tables_.translate.find(t);
    out.push_back(it == tables_.translate.end() ? std::string() : it->second);
  }
  return out;
}

std::vector<std::string> TableBackend::DoGenerate(const GenerationRequest& request) {
  const bool align = request.task == GenerationTask::kAlign;
  const auto& table = align ? tables_.align : tables_.aste;
  std::vector<std::string> out;
  for (const auto& in : request.inputs) {
    auto it = table.find(in);
    if (it != table.end()) {
      out.push_back(it->second);
    } else {
      out.push_back(align ? std::string(kNoneLabel) : std::string());
    }
  }
  return out;
}

std::vector<std::string> FunctionBackend::DoTranslate(const TranslationRequest& request) {
  if (!translate_) throw Unsupported(id_, "translation");
  return translate_(request);
}

std::vector<std::string> FunctionBackend::DoGenerate(const GenerationRequest& request) {
  if (!generate_) throw Unsupported(id_, "generation");
  return generate_(request);
}

std::vector<std::string> CountingBackend::DoTranslate(const TranslationRequest& request) {
  ++calls_;
  return inner_->Translate(request).outputs;
}

std::vector<std::string> CountingBackend::DoGenerate(const GenerationRequest& request) {
  ++calls_;
  return inner_->Generate(request).outputs;
}

RemoteBackend::RemoteBackend(RemoteOptions options) : options_(std::move(options)) {
  if (options_.max_batch_size == 0) options_.max_batch_size = 1;
  if (options_.attempts < 1) options_.attempts = 1;
}

std::string RemoteBackend::Post(const std::string& path, const std::string& body) {
  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    httplib::Client client(options_.base_url);
    const auto timeout = std::chrono::duration<double>(options_.timeout_seconds);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    httplib::Headers headers;
    if (!options_.auth_token.empty()) {
      headers.emplace("Authorization", "Bearer " + options_.auth_token);
    }
    auto res = path == "/health" ? client.Get(path, headers)
                                 : client.Post(path, headers, body, "application/json");
    if (res && res->status == 200) return res->body;
    if (res && res->status == 422) {
      throw ProtocolError(Id() + path + ": request rejected (422): " + res->body);
    }
    if (res && res->status != 503) {
      throw ProtocolError(Id() + path + ": unexpected HTTP status " +
                          std::to_string(res->status));
    }
    last_error = res ? "model unavailable (503)" : httplib::to_string(res.error());
    if (attempt < options_.attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw TransportError(Id() + path + ": giving up after " +
                       std::to_string(options_.attempts) + " attempt(s): " + last_error);
}

std::string RemoteBackend::Health() {
  const std::string body = Post("/health", "");
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError("health response is not JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || j.value("status", std::string()) != "ok") {
    throw ProtocolError("health status is not ok: " + body);
  }
  return j.value("model_id", std::string());
}

std::vector<std::string> RemoteBackend::DoTranslate(const TranslationRequest& request) {
  std::vector<std::string> out;
  out.reserve(request.texts.size());
  for (std::size_t i = 0; i < request.texts.size(); i += options_.max_batch_size) {
    TranslationRequest batch = request;
    const std::size_t end = std::min(request.texts.size(), i + options_.max_batch_size);
    batch.texts.assign(request.texts.begin() + i, request.texts.begin() + end);
    auto part = ParseOutputs(Post("/v1/translate", TranslationRequestBody(batch)),
                             "translations", batch.texts.size());
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<std::string> RemoteBackend::DoGenerate(const GenerationRequest& request) {
  std::vector<std::string> out;
  out.reserve(request.inputs.size());
  for (std::size_t i = 0; i < request.inputs.size(); i += options_.max_batch_size) {
    GenerationRequest batch = request;
    const std::size_t end = std::min(request.inputs.size(), i + options_.max_batch_size);
    batch.inputs.assign(request.inputs.begin() + i, request.inputs.begin() + end);
    auto part = ParseOutputs(Post("/v1/generate", GenerationRequestBody(batch)), "outputs",
                             batch.inputs.size());
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

CachedBackend::CachedBackend(BackendPtr inner, std::string cache_dir, CacheMode mode)
    : inner_(std::move(inner)), dir_(std::move(cache_dir)), mode_(mode) {
  std::filesystem::create_directories(dir_);
}

CacheStats CachedBackend::stats() const {
  std::lock_guard<std::mutex> lock(stats_mu_);
  return stats_;
}

std::vector<std::string> CachedBackend::diagnostics() const {
  std::lock_guard<std::mutex> lock(stats_mu_);
  return diagnostics_;
}

std::vector<std::string> CachedBackend::Lookup(
    std::string_view endpoint, const std::string& body, std::size_t n_inputs,
    const std::function<std::vector<std::string>()>& call) {
  namespace fs = std::filesystem;
  const std::string id = inner_->Id();
  const std::string key =
      Sha256Hex(id + "\n" + std::string(endpoint) + "\n" + body);
  const fs::path path = fs::path(dir_) / key.substr(0, 2) / (key + ".json");
  std::lock_guard<std::mutex> key_lock(stripes_[StableHash(key) % kStripes]);

  std::error_code ec;
  if (fs::exists(path, ec)) {
    try {
      const json entry = json::parse(ReadFile(path.string()));
      if (entry.at("backend_id").get<std::string>() != id ||
          entry.at("endpoint").get<std::string>() != endpoint ||
          entry.at("request").get<std::string>() != body) {
        throw std::invalid_argument("entry does not match its key");
      }
      auto outputs = entry.at("outputs").get<std::vector<std::string>>();
      if (outputs.size() != n_inputs) throw std::invalid_argument("wrong output count");
      std::lock_guard<std::mutex> lock(stats_mu_);
      ++stats_.hits;
      return outputs;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(stats_mu_);
      ++stats_.corrupt;
      diagnostics_.push_back("corrupt cache entry " + path.string() + " treated as miss: " +
                             e.what());
    }
  }
  {
    std::lock_guard<std::mutex> lock(stats_mu_);
    ++stats_.misses;
  }
  if (mode_ == CacheMode::kReplay) {
    throw CacheMissError("replay mode: no cached response for " + std::string(endpoint) +
                         " request " + key);
  }
  std::vector<std::string> outputs = call();
  ordered_json entry;
  entry["backend_id"] = id;
  entry["endpoint"] = std::string(endpoint);
  entry["request"] = body;
  entry["outputs"] = outputs;
  WriteFileAtomic(path.string(), entry.dump());
  std::lock_guard<std::mutex> lock(stats_mu_);
  ++stats_.stores;
  return outputs;
}

std::vector<std::string> CachedBackend::DoTranslate(const TranslationRequest& request) {
  return Lookup("/v1/translate", TranslationRequestBody(request), request.texts.size(),
                [&] { return inner_->Translate(request).outputs; });
}

std::vector<std::string> CachedBackend::DoGenerate(const GenerationRequest& request) {
  return Lookup("/v1/generate", GenerationRequestBody(request), request.inputs.size(),
                [&] { return inner_->Generate(request).outputs; });
}

std::shared_ptr<CachedBackend> WithCache(BackendPtr backend, const std::string& cache_dir,
                                         CacheMode mode) {
  return std::make_shared<CachedBackend>(std::move(backend), cache_dir, mode);
}

}  // namespace ttcsw
