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

// Feature dictionaries built from dataset titles.
//
// Abbreviations come from a fixed rule cascade over mixed-case titles plus
// the non-word tokens of all-caps titles; phrases are compounds around a
// curated list of base terms ("survey", "poll", "studie", ...). An expert
// prunes both lists through false-positive lists that persist across
// rebuilds.

#ifndef DATAREF_DICTIONARY_H_
#define DATAREF_DICTIONARY_H_

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dataref/feature.h"
#include "dataref/registry.h"

namespace dataref {

// Pruning resources, stored lowercase.
struct Wordlists {
  std::unordered_set<std::string> english;
  std::unordered_set<std::string> german;
  std::unordered_set<std::string> countries;
  std::unordered_set<std::string> stopwords;

  // English or German word, or country name. Expects lowercase input.
  bool IsWord(const std::string &lowercase) const;
  bool IsStopword(const std::string &lowercase) const;

  // Reads english.txt, german.txt, countries.txt, stopwords_en.txt and
  // stopwords_de.txt from `dir`. Missing files yield empty sets.
  static Wordlists Load(const std::string &dir);
};

// Lists shipped under resources/wordlists, loaded once.
const Wordlists &DefaultWordlists();
std::string DefaultResourceDir();

// The curated base terms that signal dataset phrases, lowercase.
std::set<std::string> DefaultBaseTerms();

struct FeatureDictionary {
  std::set<Feature> abbreviations;
  std::set<Feature> phrases;
  std::set<std::string> fp_abbreviations;
  std::set<std::string> fp_phrases;
  std::set<std::string> base_terms;

  // Live abbreviations followed by live phrases.
  std::vector<Feature> Features() const;
  bool empty() const { return abbreviations.empty() && phrases.empty(); }
  bool IsFalsePositive(std::string_view text, FeatureKind kind) const;

  bool operator==(const FeatureDictionary &) const = default;
};

// A title together with the DOI of its record (may be empty).
struct SourceTitle {
  std::string_view text;
  std::string_view doi;
};

struct PreprocessedTitles {
  std::vector<SourceTitle> mixed_case;  // cut at the first ':'
  std::vector<SourceTitle> allcaps;
};

PreprocessedTitles PreprocessTitles(const std::vector<SourceTitle> &titles);

// Abbreviation rules over mixed-case titles, in order:
//  1. tokenize;
//  2. keep tokens with an uppercase letter after the first one that are not
//     digits/punctuation only, not Roman numerals, not digit-initial;
//  3. also keep single-token segments followed by '(' or a standalone dash;
//  4. drop candidates with punctuation other than . - / * &;
//  5. drop candidates with '/' or '-' whose parts are partially lowercase
//     beyond their first letter;
//  6. drop English/German words and country names unless capitalized beyond
//     the first letter.
// Candidates shorter than two code points are dropped. Output is sorted by
// text with provenance merged.
std::vector<Feature> ExtractAbbreviations(const std::vector<SourceTitle> &titles,
                                          const Wordlists &wordlists);

// Tokens of all-caps titles that are not dictionary words or numbers, in
// their original (uppercase) form.
std::vector<Feature> ExtractAllcapsTokens(
    const std::vector<SourceTitle> &allcaps_titles, const Wordlists &wordlists);

// Three phrase shapes, base terms matched case-insensitively:
//  (a) a single token containing a base term plus at least three more
//      characters ("Singularisierungsstudie");
//  (b) "Survey of" / "Study of" followed by a non-stopword token;
//  (c) a non-stopword token directly followed by a base term ("Exit Poll").
// Phrases are verbatim title substrings, deduplicated case-insensitively
// (first spelling wins).
std::vector<Feature> ExtractPhrases(const std::vector<SourceTitle> &titles,
                                    const std::set<std::string> &base_terms,
                                    const Wordlists &wordlists);

// Convenience overloads for plain title strings.
std::vector<SourceTitle> AsSourceTitles(const std::vector<std::string> &titles);

// Adds the entries to the false-positive lists and removes them from the
// live sets. Phrase entries compare case-insensitively. Idempotent.
FeatureDictionary ApplyFalsePositives(
    FeatureDictionary dict,
    const std::vector<std::pair<std::string, FeatureKind>> &additions);

// Full dictionary build over registry records. Existing false-positive lists in
// `previous` are carried over and applied.
FeatureDictionary BuildDictionary(const std::vector<DatasetRecord> &records,
                                  const Wordlists &wordlists,
                                  const std::set<std::string> &base_terms,
                                  const FeatureDictionary *previous = nullptr);

struct PatternStats {
  double abbrev_pct = 0;        // titles with >= 1 abbreviation
  double phrase_pct = 0;        // titles with >= 1 phrase
  double intersection_pct = 0;  // titles with both
  double filename_pct = 0;      // titles with a name.EXT token
  size_t titles = 0;
};

PatternStats ComputePatternStats(const std::vector<std::string> &titles,
                                 const FeatureDictionary &dict);

// True for tokens shaped like a data file name, e.g. "VIRGPT2.DAT".
bool IsFilenameToken(std::string_view token);

// Dictionary directory layout: abbreviations.txt, phrases.txt,
// fp_abbreviations.txt, fp_phrases.txt, base_terms.txt; UTF-8, one entry
// per line.
void SaveDictionary(const FeatureDictionary &dict, const std::string &dir);
FeatureDictionary LoadDictionary(const std::string &dir);

}  // namespace dataref

#endif  // DATAREF_DICTIONARY_H_
