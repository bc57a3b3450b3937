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

#include "dataref/detector.h"

#include <algorithm>
#include <array>
#include <tuple>

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

namespace {

// Lowercased words after which a period does not end a sentence.
constexpr std::array<std::string_view, 30> kNoBreakAfter = {
    "z.b.", "bzw.", "e.g.", "i.e.", "dr.",  "vs.",  "al.",   "ca.",
    "vgl.", "d.h.", "u.a.", "s.",   "nr.",  "no.",  "prof.", "fig.",
    "abb.", "tab.", "cf.",  "mr.",  "mrs.", "ms.",  "st.",   "jr.",
    "hrsg.", "ggf.", "evtl.", "bspw.", "inkl.", "pp."};

bool IsClosing(char32_t ch) {
  return ch == '"' || ch == '\'' || ch == ')' || ch == ']' || ch == 0x00BB ||
         ch == 0x201D || ch == 0x2019 || ch == 0x201C;
}

bool IsOpening(char32_t ch) {
  return ch == '"' || ch == '\'' || ch == '(' || ch == '[' || ch == 0x00AB ||
         ch == 0x201E || ch == 0x201C || ch == 0x2018;
}

// The whitespace-delimited word ending just after `dot`, lowercased.
std::string WordEndingAt(std::string_view text, size_t dot) {
  size_t start = dot;
  while (start > 0 && !std::isspace(static_cast<unsigned char>(text[start - 1]))) {
    --start;
  }
  return FoldCase(text.substr(start, dot + 1 - start));
}

bool NoBreakWord(std::string_view text, size_t dot) {
  std::string word = WordEndingAt(text, dot);
  // Strip opening punctuation such as "(" or quotes.
  while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word[0])) &&
         static_cast<unsigned char>(word[0]) < 0x80) {
    word.erase(0, 1);
  }
  return std::find(kNoBreakAfter.begin(), kNoBreakAfter.end(), word) !=
         kNoBreakAfter.end();
}

// Position of the first character of the next sentence if a boundary
// follows the terminator ending at `after`, else npos.
size_t NextSentenceStart(std::string_view text, size_t after) {
  size_t pos = after;
  if (pos >= text.size()) return std::string_view::npos;
  size_t probe = pos;
  if (!IsSpace(DecodeUtf8(text, probe))) return std::string_view::npos;
  while (pos < text.size()) {
    size_t next = pos;
    if (!IsSpace(DecodeUtf8(text, next))) break;
    pos = next;
  }
  if (pos >= text.size()) return std::string_view::npos;
  size_t next = pos;
  char32_t ch = DecodeUtf8(text, next);
  if (IsOpening(ch) && next < text.size()) {
    size_t after_open = next;
    ch = DecodeUtf8(text, after_open);
  }
  if (IsUpper(ch) || IsDigit(ch)) return pos;
  return std::string_view::npos;
}

// Blank line starting at the newline at `pos`: returns the position after
// the second newline, or npos.
size_t BlankLineEnd(std::string_view text, size_t pos) {
  size_t i = pos + 1;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
    ++i;
  }
  if (i < text.size() && text[i] == '\n') return i + 1;
  return std::string_view::npos;
}

void Emit(std::string_view text, size_t begin, size_t end,
          std::vector<Sentence> *out) {
  std::string_view piece = Trim(text.substr(begin, end - begin));
  if (piece.empty()) return;
  size_t offset = piece.data() - text.data();
  out->push_back({piece, {offset, offset + piece.size()}});
}

}  // namespace

void ValidateArticle(const ArticleText &article) {
  if (article.article_id.empty()) throw PreconditionError("empty article id");
  if (Trim(article.fulltext).empty()) {
    throw PreconditionError("article " + article.article_id + " has no text");
  }
}

std::vector<Sentence> SplitSentences(std::string_view text) {
  std::vector<Sentence> sentences;
  size_t start = 0;
  int depth = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t here = pos;
    char32_t ch = DecodeUtf8(text, pos);
    if (ch == '\n') {
      size_t blank_end = BlankLineEnd(text, here);
      if (blank_end != std::string_view::npos) {
        Emit(text, start, here, &sentences);
        start = blank_end;
        pos = blank_end;
        depth = 0;
      }
      continue;
    }
    if (ch == '(' || ch == '[') {
      ++depth;
      continue;
    }
    if (ch == ')' || ch == ']') {
      depth = std::max(0, depth - 1);
      continue;
    }
    if (ch != '.' && ch != '!' && ch != '?') continue;
    if (depth > 0) continue;
    if (ch == '.' && NoBreakWord(text, here)) continue;

    // Absorb closing quotes and brackets that belong to this sentence.
    size_t end = pos;
    while (end < text.size()) {
      size_t next = end;
      char32_t closing = DecodeUtf8(text, next);
      if (closing != '.' && closing != '!' && closing != '?' &&
          !IsClosing(closing)) {
        break;
      }
      end = next;
    }
    size_t next_start = NextSentenceStart(text, end);
    if (next_start == std::string_view::npos) continue;
    Emit(text, start, end, &sentences);
    start = next_start;
    pos = next_start;
  }
  Emit(text, start, text.size(), &sentences);
  return sentences;
}

namespace {

// Cut position inside the gap [gap_begin, gap_end) between two occurrences:
// the whitespace character nearest to the midpoint, or the midpoint itself
// moved to a code point boundary.
size_t CutPoint(std::string_view text, size_t gap_begin, size_t gap_end) {
  size_t mid = gap_begin + (gap_end - gap_begin) / 2;
  size_t best = std::string_view::npos;
  size_t best_distance = std::string_view::npos;
  for (size_t i = gap_begin; i < gap_end; ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) continue;
    size_t distance = i > mid ? i - mid : mid - i;
    if (distance < best_distance) {
      best = i;
      best_distance = distance;
    }
  }
  if (best != std::string_view::npos) return best;
  while (mid < gap_end &&
         (static_cast<unsigned char>(text[mid]) & 0xC0) == 0x80) {
    ++mid;
  }
  return mid;
}

ReferenceCandidate MakeCandidate(const ArticleText &article, size_t begin,
                                 size_t end, MatchSpan match,
                                 const Feature &feature, size_t segment) {
  std::string_view text = article.fulltext;
  std::string_view piece = Trim(text.substr(begin, end - begin));
  size_t offset = piece.data() - text.data();
  ReferenceCandidate candidate;
  candidate.article_id = article.article_id;
  candidate.sentence = std::string(piece);
  candidate.span = {offset, offset + piece.size()};
  candidate.match = match;
  candidate.feature = {feature.text, feature.kind, {}};
  candidate.segment_index = segment;
  return candidate;
}

}  // namespace

std::vector<ReferenceCandidate> FindReferences(
    const ArticleText &article, const std::vector<Feature> &features) {
  std::vector<ReferenceCandidate> out;
  std::string_view text = article.fulltext;
  for (const auto &sentence : SplitSentences(text)) {
    for (const auto &feature : features) {
      auto matches = MatchFeature(sentence.text, feature);
      if (matches.empty()) continue;
      size_t base = sentence.span.begin;
      for (auto &m : matches) {
        m.begin += base;
        m.end += base;
      }
      size_t segment_begin = sentence.span.begin;
      for (size_t i = 0; i < matches.size(); ++i) {
        size_t segment_end = sentence.span.end;
        if (i + 1 < matches.size()) {
          segment_end = CutPoint(text, matches[i].end, matches[i + 1].begin);
        }
        out.push_back(MakeCandidate(article, segment_begin, segment_end,
                                    matches[i], feature, i));
        segment_begin = segment_end;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ReferenceCandidate &a, const ReferenceCandidate &b) {
                     return std::tie(a.span.begin, a.segment_index, a.feature) <
                            std::tie(b.span.begin, b.segment_index, b.feature);
                   });
  return out;
}

std::vector<ReferenceCandidate> FindReferences(const ArticleText &article,
                                               const FeatureDictionary &dict) {
  return FindReferences(article, dict.Features());
}

}  // namespace dataref
