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

#include "ttcsw/artifact.h"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ttcsw/error.h"
#include "ttcsw/text.h"

namespace ttcsw {

std::string HeaderLine(const ArtifactHeader& header) {
  nlohmann::ordered_json j;
  j["artifact"] = header.kind;
  j["version"] = header.version;
  j["seed"] = header.seed;
  j["config_digest"] = header.config_digest;
  for (const auto& [key, value] : header.extra.items()) j[key] = value;
  return j.dump();
}

ArtifactContent ParseArtifact(std::string_view content,
                              std::string_view expected_kind) {
  ArtifactContent out;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (Trim(line).empty()) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON: " +
                      e.what());
    }
    if (!have_header) {
      if (!j.is_object() || !j.contains("artifact") || !j["artifact"].is_string()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": missing artifact header");
      }
      out.header.kind = j["artifact"].get<std::string>();
      if (out.header.kind != expected_kind) {
        throw DataError("line " + std::to_string(line_no) + ": expected a '" +
                        std::string(expected_kind) + "' artifact, found '" +
                        out.header.kind + "'");
      }
      if (!j.contains("version") || !j["version"].is_number_integer() ||
          j["version"].get<int>() != kArtifactVersion) {
        throw DataError("line " + std::to_string(line_no) +
                        ": unsupported artifact version (expected " +
                        std::to_string(kArtifactVersion) + ")");
      }
      out.header.version = j["version"].get<int>();
      out.header.seed = j.value("seed", std::uint64_t{0});
      out.header.config_digest = j.value("config_digest", std::string());
      for (const auto& [key, value] : j.items()) {
        if (key == "artifact" || key == "version" || key == "seed" ||
            key == "config_digest") {
          continue;
        }
        out.header.extra[key] = value;
      }
      have_header = true;
      continue;
    }
    out.records.emplace_back(line_no, std::move(j));
  }
  if (!have_header) throw DataError("empty artifact: no header line");
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid()) + "." +
                       std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot rename " + tmp.string() + " to " + path + ": " +
                    ec.message());
  }
}

}  // namespace ttcsw
