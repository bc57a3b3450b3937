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

#include "dataref/feature.h"

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

std::string_view KindName(FeatureKind kind) {
  return kind == FeatureKind::kAbbreviation ? "abbreviation" : "phrase";
}

FeatureKind ParseKind(std::string_view name) {
  if (name == "abbreviation" || name == "abbrev") {
    return FeatureKind::kAbbreviation;
  }
  if (name == "phrase") return FeatureKind::kPhrase;
  throw ParseError("unknown feature kind '" + std::string(name) + "'");
}

namespace {

bool AlnumBefore(std::string_view text, size_t pos) {
  if (pos == 0) return false;
  size_t start = pos - 1;
  while (start > 0 && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
    --start;
  }
  return IsAlnum(DecodeUtf8(text, start));
}

bool AlnumAt(std::string_view text, size_t pos) {
  if (pos >= text.size()) return false;
  return IsAlnum(DecodeUtf8(text, pos));
}

}  // namespace

std::vector<MatchSpan> MatchFeature(std::string_view text,
                                    std::string_view feature_text,
                                    FeatureKind kind) {
  std::vector<MatchSpan> matches;
  if (feature_text.empty()) return matches;

  std::string folded_text, folded_feature;
  std::string_view haystack = text, needle = feature_text;
  if (kind == FeatureKind::kPhrase) {
    folded_text = FoldCase(text);
    folded_feature = FoldCase(feature_text);
    haystack = folded_text;
    needle = folded_feature;
  }

  size_t from = 0;
  while (from <= haystack.size()) {
    size_t hit = haystack.find(needle, from);
    if (hit == std::string_view::npos) break;
    size_t end = hit + needle.size();
    if (!AlnumBefore(text, hit) && !AlnumAt(text, end)) {
      matches.push_back({hit, end});
      from = end;
    } else {
      // Advance by one code point.
      size_t next = hit;
      DecodeUtf8(haystack, next);
      from = next;
    }
  }
  return matches;
}

std::vector<MatchSpan> MatchFeature(std::string_view text,
                                    const Feature &feature) {
  return MatchFeature(text, feature.text, feature.kind);
}

}  // namespace dataref
