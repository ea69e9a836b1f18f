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

#ifndef TTCSW_TRIPLET_SERDE_H_
#define TTCSW_TRIPLET_SERDE_H_

// Structural prediction format exchanged with the generation backend:
//   (a1<split>o1<split>POS) <join> (a2<split>o2<split>NEG)

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ttcsw/corpus.h"

namespace ttcsw {

inline constexpr std::string_view kSplitToken = "<split>";
inline constexpr std::string_view kJoinToken = "<join>";

struct ParseDiagnostics {
  std::size_t dropped_triplets = 0;
  std::size_t repaired_triplets = 0;
  std::vector<std::string> notes;

  bool clean() const { return dropped_triplets == 0 && repaired_triplets == 0; }
};

struct ParsedTriplets {
  std::vector<Triplet> triplets;
  ParseDiagnostics diagnostics;
};

std::string EmitTriplets(const std::vector<Triplet>& triplets);

// Total over arbitrary text; malformed segments become diagnostics.
ParsedTriplets ParseTriplets(std::string_view text);

}  // namespace ttcsw

#endif  // TTCSW_TRIPLET_SERDE_H_
