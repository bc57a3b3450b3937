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

#ifndef DATAREF_DETECTOR_H_
#define DATAREF_DETECTOR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataref/dictionary.h"
#include "dataref/feature.h"

namespace dataref {

struct ArticleText {
  std::string article_id;
  std::string fulltext;
  std::optional<std::string> language;
};

// Throws PreconditionError if the id or the text is empty.
void ValidateArticle(const ArticleText &article);

struct Sentence {
  std::string_view text;  // view into the full text
  MatchSpan span;         // byte offsets into the full text
};

// Sentence boundaries: '.', '!' or '?' (optionally followed by closing
// quotes/brackets) then whitespace and an uppercase letter or digit; also
// blank lines. No split after a known abbreviation (z.B., e.g., Dr., et al.,
// ...) or inside an open parenthesis. Leading/trailing whitespace is not part
// of any sentence, so the gaps between spans are whitespace only.
std::vector<Sentence> SplitSentences(std::string_view fulltext);

// A detected in-text dataset reference.
struct ReferenceCandidate {
  std::string article_id;
  std::string sentence;  // the segment text
  MatchSpan span;        // segment offsets into the full text
  MatchSpan match;       // feature occurrence offsets into the full text
  Feature feature;       // provenance stripped
  size_t segment_index = 0;

  bool operator==(const ReferenceCandidate &) const = default;
};

// For each sentence and each live feature occurring in it: one candidate if
// the feature occurs once, otherwise the sentence is cut at the midpoints
// between consecutive occurrences (snapped to whitespace inside the gap)
// and each piece becomes a candidate. Output is ordered by span start, then
// segment index, then feature.
std::vector<ReferenceCandidate> FindReferences(const ArticleText &article,
                                               const FeatureDictionary &dict);

// Same, against an explicit feature list.
std::vector<ReferenceCandidate> FindReferences(
    const ArticleText &article, const std::vector<Feature> &features);

}  // namespace dataref

#endif  // DATAREF_DETECTOR_H_
