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

#ifndef TTCSW_CONFIG_H_
#define TTCSW_CONFIG_H_

// Flat "key = value" run configuration; '#' starts a comment line.
//
// Precedence, lowest first: built-in defaults, config file, environment
// (TTCSW_BASE_URL, TTCSW_AUTH_TOKEN, TTCSW_TIMEOUT, TTCSW_RETRIES,
// TTCSW_DATA_DIR), command-line flags.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ttcsw/backends.h"
#include "ttcsw/metrics.h"
#include "ttcsw/tta.h"

namespace ttcsw {

class Config {
 public:
  // Throws UsageError on a malformed line or an unknown key.
  static Config Parse(std::string_view text);
  static Config Load(const std::string& path);

  void Set(const std::string& key, std::string value);
  std::optional<std::string> Get(const std::string& key) const;

  std::string GetString(const std::string& key, std::string fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  std::size_t GetSize(const std::string& key, std::size_t fallback) const;
  std::uint64_t GetUint64(const std::string& key, std::uint64_t fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;

  // Copies TTCSW_* environment variables into their keys.
  void ApplyEnvironment();

  // SHA-256 over the sorted key/value pairs, excluding secrets and settings
  // that cannot change results (cache_dir, replay, jobs).
  std::string Digest() const;

  const std::map<std::string, std::string>& values() const { return values_; }

  static bool IsKnownKey(std::string_view key);

 private:
  std::map<std::string, std::string> values_;
};

TtaConfig TtaConfigFrom(const Config& config);
RemoteOptions RemoteOptionsFrom(const Config& config);
MetricsOptions MetricsOptionsFrom(const Config& config);

// Backend specifications:
//   identity | echo | dict:<lexicon.tsv> | dict-align:<lexicon.tsv> |
//   fixture:<table.jsonl> | remote[:<base url>]
// `source_lang` / `target_lang` give the lexicon direction for dict:.
// With a cache directory the backend is wrapped in the response cache.
BackendPtr MakeBackend(std::string_view spec, const Config& config,
                       std::string_view source_lang, std::string_view target_lang);

}  // namespace ttcsw

#endif  // TTCSW_CONFIG_H_
