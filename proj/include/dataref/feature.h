// Copyright 2026 The dataref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATAREF_FEATURE_H_
#define DATAREF_FEATURE_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dataref {

enum class FeatureKind { kAbbreviation, kPhrase };

std::string_view KindName(FeatureKind kind);
// Accepts "abbreviation"/"abbrev" and "phrase". Throws ParseError otherwise.
FeatureKind ParseKind(std::string_view name);

// A characteristic feature of dataset titles: an abbreviation such as
// "ALLBUS" or a special phrase such as "Exit Poll".
struct Feature {
  std::string text;
  FeatureKind kind = FeatureKind::kAbbreviation;
  std::set<std::string> source_titles;  // DOIs the feature was extracted from

  // Identity is (kind, text); provenance does not participate.
  bool operator==(const Feature &other) const {
    return kind == other.kind && text == other.text;
  }
  std::weak_ordering operator<=>(const Feature &other) const {
    if (kind != other.kind) return kind <=> other.kind;
    return text <=> other.text;
  }
};

struct MatchSpan {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const MatchSpan &) const = default;
};

// All non-overlapping occurrences of `feature` in `text`, left to right.
// Abbreviations match case-sensitively, phrases case-insensitively; both
// must sit on token boundaries (no letter or digit directly before or after).
std::vector<MatchSpan> MatchFeature(std::string_view text,
                                    const Feature &feature);
std::vector<MatchSpan> MatchFeature(std::string_view text,
                                    std::string_view feature_text,
                                    FeatureKind kind);

}  // namespace dataref

#endif  // DATAREF_FEATURE_H_
