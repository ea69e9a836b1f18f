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

#ifndef TTCSW_ARTIFACT_H_
#define TTCSW_ARTIFACT_H_

// Line-oriented artifact files. Every artifact starts with a JSON header
// line {"artifact": kind, "version": N, "seed": S, "config_digest": D, ...}
// followed by one JSON record per line.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ttcsw {

inline constexpr int kArtifactVersion = 1;

struct ArtifactHeader {
  std::string kind;
  int version = kArtifactVersion;
  std::uint64_t seed = 0;
  std::string config_digest;
  // Kind-specific header fields.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

std::string HeaderLine(const ArtifactHeader& header);

struct ArtifactContent {
  ArtifactHeader header;
  // Non-blank record lines with their 1-based line numbers.
  std::vector<std::pair<std::size_t, nlohmann::json>> records;
};

// Parses an artifact; throws DataError on a missing or foreign header, a
// version mismatch, or a malformed line (with its line number).
ArtifactContent ParseArtifact(std::string_view content,
                              std::string_view expected_kind);

std::string ReadFile(const std::string& path);
// Writes to a temporary sibling then renames over `path`.
void WriteFileAtomic(const std::string& path, std::string_view content);

}  // namespace ttcsw

#endif  // TTCSW_ARTIFACT_H_
