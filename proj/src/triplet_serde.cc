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

#include "ttcsw/triplet_serde.h"

namespace ttcsw {
namespace {

std::vector<std::string_view> SplitOn(std::string_view text, std::string_view token) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(token, pos);
    if (hit == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, hit - pos));
    pos = hit + token.size();
  }
}

std::string Preview(std::string_view s) {
  constexpr std::size_t kMax = 60;
  return s.size() <= kMax ? std::string(s) : std::string(s.substr(0, kMax)) + "...";
}

}  // namespace

std::string EmitTriplets(const std::vector<Triplet>& triplets) {
  std::string out;
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    if (i > 0) {
      out += ' ';
      out += kJoinToken;
      out += ' ';
    }
    const Triplet& t = triplets[i];
    out += '(';
    out += t.aspect;
    out += kSplitToken;
    out += t.opinion;
    out += kSplitToken;
    out += PolarityCode(t.polarity);
    out += ')';
  }
  return out;
}

ParsedTriplets ParseTriplets(std::string_view text) {
  ParsedTriplets result;
  ParseDiagnostics& diag = result.diagnostics;
  if (Trim(text).empty()) return result;

  auto drop = [&](std::string_view segment, const std::string& why) {
    ++diag.dropped_triplets;
    diag.notes.push_back("dropped '" + Preview(segment) + "': " + why);
  };

  for (std::string_view segment : SplitOn(text, kJoinToken)) {
    segment = Trim(segment);
    if (segment.empty()) {
      drop(segment, "empty segment");
      continue;
    }
    std::string_view body = segment;
    if (body.front() == '(') body.remove_prefix(1);
    if (!body.empty() && body.back() == ')') body.remove_suffix(1);

    std::vector<std::string_view> fields = SplitOn(body, kSplitToken);
    for (auto& f : fields) f = Trim(f);

    if (fields.size() < 3) {
      drop(segment, fields.size() == 2 ? "polarity missing" : "no <split> fields");
      continue;
    }
    std::string opinion(fields[1]);
    if (fields.size() > 3) {
      std::vector<std::string> middle;
      for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
        if (!fields[i].empty()) middle.emplace_back(fields[i]);
      }
      opinion = Join(middle, " ");
    }
    const auto polarity = ParsePolarity(fields.back());
    Triplet t{std::string(fields[0]), std::move(opinion), Polarity::kNone};
    if (!polarity) {
      drop(segment, "unknown polarity '" + Preview(fields.back()) + "'");
      continue;
    }
    t.polarity = *polarity;
    if ((t.polarity == Polarity::kNone) != t.IsEmpty()) {
      drop(segment, "NONE polarity is reserved for the empty triplet");
      continue;
    }
    if (fields.size() > 3) {
      ++diag.repaired_triplets;
      diag.notes.push_back("rejoined " + std::to_string(fields.size() - 3) +
                           " extra field(s) into the opinion of '" +
                           Preview(segment) + "'");
    }
    result.triplets.push_back(std::move(t));
  }
  return result;
}

}  // namespace ttcsw
