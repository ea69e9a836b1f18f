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

#include "ttcsw/config.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>

#include "ttcsw/artifact.h"
#include "ttcsw/error.h"
#include "ttcsw/lexicon.h"
#include "ttcsw/text.h"

namespace ttcsw {
namespace {

constexpr std::array<std::string_view, 30> kKnownKeys = {
    "seed",
    "jobs",
    "strict",
    "cache_dir",
    "replay",
    "data.dir",
    "backend.translator",
    "backend.generator",
    "backend.aligner",
    "remote.base_url",
    "remote.auth_token",
    "remote.timeout",
    "remote.retries",
    "remote.max_batch_size",
    "tta.max_ngram",
    "tta.top_k_phrases",
    "tta.n_candidates",
    "tta.vote_threshold",
    "tta.min_support_fraction",
    "tta.source_lang",
    "csw.switch_rate",
    "csw.target_lang",
    "dict.ratio",
    "dict.strategy",
    "align.window",
    "align.stride",
    "align.corrupt_rate",
    "metrics.half_weight_single_slot",
    "metrics.empty_list_convention",
    "mode",
};

constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kEnvironment = {{
    {"TTCSW_BASE_URL", "remote.base_url"},
    {"TTCSW_AUTH_TOKEN", "remote.auth_token"},
    {"TTCSW_TIMEOUT", "remote.timeout"},
    {"TTCSW_RETRIES", "remote.retries"},
    {"TTCSW_DATA_DIR", "data.dir"},
}};

[[noreturn]] void BadValue(const std::string& key, const std::string& value, std::string_view want) {
  throw UsageError("config key '" + key + "': expected " + std::string(want) + ", got '" + value +
                   "'");
}

}  // namespace

bool Config::IsKnownKey(std::string_view key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

Config Config::Parse(std::string_view text) {
  Config config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (!IsKnownKey(key)) {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    config.Set(key, std::string(Trim(line.substr(eq + 1))));
  }
  return config;
}

Config Config::Load(const std::string& path) {
  try {
    return Parse(ReadFile(path));
  } catch (const DataError& e) {
    throw UsageError(std::string("cannot read config: ") + e.what());
  }
}

void Config::Set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

std::optional<std::string> Config::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::GetString(const std::string& key, std::string fallback) const {
  auto v = Get(key);
  return v ? *v : fallback;
}

double Config::GetDouble(const std::string& key, double fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used == v->size()) return d;
  } catch (const std::exception&) {
  }
  BadValue(key, *v, "a number");
}

std::size_t Config::GetSize(const std::string& key, std::size_t fallback) const {
  return static_cast<std::size_t>(GetUint64(key, fallback));
}

std::uint64_t Config::GetUint64(const std::string& key, std::uint64_t fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    if (!v->empty() && v->front() != '-') {
      const unsigned long long n = std::stoull(*v, &used);
      if (used == v->size()) return n;
    }
  } catch (const std::exception&) {
  }
  BadValue(key, *v, "a non-negative integer");
}

bool Config::GetBool(const std::string& key, bool fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  const std::string s = ToLower(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  BadValue(key, *v, "a boolean");
}

void Config::ApplyEnvironment() {
  for (const auto& [env, key] : kEnvironment) {
    if (const char* v = std::getenv(std::string(env).c_str()); v != nullptr && *v != '\0') {
      Set(std::string(key), v);
    }
  }
}

std::string Config::Digest() const {
  std::string canonical;
  for (const auto& [k, v] : values_) {
    if (k == "remote.auth_token" || k == "cache_dir" || k == "replay" || k == "jobs") continue;
    canonical += k + "=" + v + "\n";
  }
  return Sha256Hex(canonical).substr(0, 16);
}

TtaConfig TtaConfigFrom(const Config& config) {
  TtaConfig tta;
  tta.max_ngram = config.GetSize("tta.max_ngram", tta.max_ngram);
  tta.top_k_phrases = config.GetSize("tta.top_k_phrases", tta.top_k_phrases);
  tta.n_candidates = config.GetSize("tta.n_candidates", tta.n_candidates);
  tta.vote_threshold = config.GetDouble("tta.vote_threshold", tta.vote_threshold);
  tta.min_support_fraction = config.GetDouble("tta.min_support_fraction", tta.min_support_fraction);
  tta.source_lang = config.GetString("tta.source_lang", tta.source_lang);
  tta.seed = config.GetUint64("seed", tta.seed);
  tta.strict = config.GetBool("strict", tta.strict);
  try {
    tta.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return tta;
}

RemoteOptions RemoteOptionsFrom(const Config& config) {
  RemoteOptions options;
  options.base_url = config.GetString("remote.base_url", options.base_url);
  options.auth_token = config.GetString("remote.auth_token", options.auth_token);
  options.timeout_seconds = config.GetDouble("remote.timeout", options.timeout_seconds);
  options.attempts = static_cast<int>(
      config.GetSize("remote.retries", static_cast<std::size_t>(options.attempts - 1)) + 1);
  options.max_batch_size = config.GetSize("remote.max_batch_size", options.max_batch_size);
  if (options.max_batch_size == 0) throw UsageError("remote.max_batch_size must be positive");
  return options;
}

MetricsOptions MetricsOptionsFrom(const Config& config) {
  MetricsOptions options;
  options.half_weight_single_slot =
      config.GetBool("metrics.half_weight_single_slot", options.half_weight_single_slot);
  options.empty_list_convention =
      config.GetBool("metrics.empty_list_convention", options.empty_list_convention);
  return options;
}

BackendPtr MakeBackend(std::string_view spec, const Config& config,
                       std::string_view source_lang, std::string_view target_lang) {
  const std::size_t colon = spec.find(':');
  const std::string kind(spec.substr(0, colon));
  const std::string arg = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  BackendPtr backend;
  if (kind == "identity") {
    backend = std::make_shared<IdentityTranslator>();
  } else if (kind == "echo") {
    backend = std::make_shared<EchoBackend>();
  } else if (kind == "dict" || kind == "dict-align") {
    if (arg.empty()) throw UsageError("backend '" + kind + "' needs a lexicon path");
    BilingualLexicon lexicon = BilingualLexicon::Load(arg);
    if (kind == "dict") {
      backend = std::make_shared<DictionaryTranslator>(std::move(lexicon), std::string(source_lang),
                                                       std::string(target_lang));
    } else {
      backend = std::make_shared<DictionaryAligner>(std::move(lexicon));
    }
  } else if (kind == "fixture") {
    if (arg.empty()) throw UsageError("backend 'fixture' needs a table path");
    backend = TableBackend::Load(arg);
  } else if (kind == "remote") {
    RemoteOptions options = RemoteOptionsFrom(config);
    if (!arg.empty()) options.base_url = arg;
    backend = std::make_shared<RemoteBackend>(options);
  } else {
    throw UsageError("unknown backend '" + std::string(spec) + "'");
  }
  if (auto dir = config.Get("cache_dir"); dir && !dir->empty()) {
    const CacheMode mode = config.GetBool("replay", false) ? CacheMode::kReplay : CacheMode::kReadWrite;
    backend = WithCache(std::move(backend), *dir, mode);
  } else if (config.GetBool("replay", false)) {
    throw UsageError("--replay needs a cache directory");
  }
  return backend;
}

}  // namespace ttcsw
