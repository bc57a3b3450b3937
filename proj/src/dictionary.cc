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

#include "dataref/dictionary.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

namespace fs = std::filesystem;

namespace {

void LoadWordFile(const fs::path &path, std::unordered_set<std::string> *out) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    auto word = Trim(line);
    if (!word.empty()) out->insert(FoldCase(word));
  }
}

size_t CodePointCount(std::string_view text) {
  size_t count = 0, pos = 0;
  while (pos < text.size()) {
    DecodeUtf8(text, pos);
    ++count;
  }
  return count;
}

bool OnlyWhitelistedPunct(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t ch = DecodeUtf8(text, pos);
    if (!IsAlnum(ch) && !IsAbbreviationPunct(ch)) return false;
  }
  return true;
}

// Rule 5: any '/'- or '-'-separated part with a lowercase letter after its
// first character disqualifies the candidate.
bool PartiallyLowercaseCompound(std::string_view text) {
  if (text.find_first_of("/-") == std::string_view::npos) return false;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find_first_of("/-", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    size_t pos = 0;
    if (!part.empty()) DecodeUtf8(part, pos);
    while (pos < part.size()) {
      if (IsLower(DecodeUtf8(part, pos))) return true;
    }
    start = end + 1;
  }
  return false;
}

bool PassesShapeFilters(std::string_view token) {
  return CodePointCount(token) >= 2 && !IsDigitsAndPunctuation(token) &&
         !IsRomanNumeral(token) && !StartsWithDigit(token);
}

// Rules 4-6 applied to one candidate.
bool SurvivesPruning(std::string_view candidate, const Wordlists &wordlists) {
  if (!OnlyWhitelistedPunct(candidate)) return false;
  if (PartiallyLowercaseCompound(candidate)) return false;
  if (!HasUppercaseAfterFirst(candidate) &&
      wordlists.IsWord(FoldCase(candidate))) {
    return false;
  }
  return true;
}

bool IsDashChunk(std::string_view chunk) {
  if (chunk.empty()) return false;
  size_t pos = 0;
  while (pos < chunk.size()) {
    char32_t ch = DecodeUtf8(chunk, pos);
    if (ch != '-' && ch != 0x2013 && ch != 0x2014) return false;
  }
  return true;
}

// Rule 3: single-token segments that end at '(' or at a standalone dash.
// Parenthesized segments (containing ')') are skipped.
std::vector<std::string_view> DelimitedSingleTokens(std::string_view title) {
  std::vector<std::string_view> out;
  size_t segment_start = 0;
  auto close_segment = [&](size_t end) {
    std::string_view segment = title.substr(segment_start, end - segment_start);
    if (segment.find(')') != std::string_view::npos) return;
    auto tokens = Tokenize(segment);
    if (tokens.size() == 1) out.push_back(tokens.front().text);
  };
  size_t pos = 0;
  bool after_space = true;
  while (pos < title.size()) {
    size_t here = pos;
    char32_t ch = DecodeUtf8(title, pos);
    bool chunk_start = after_space;
    after_space = IsSpace(ch);
    if (ch == '(') {
      close_segment(here);
      segment_start = pos;
      continue;
    }
    if (!after_space && chunk_start) {
      size_t end = pos;
      while (end < title.size()) {
        size_t probe = end;
        if (IsSpace(DecodeUtf8(title, probe))) break;
        end = probe;
      }
      if (IsDashChunk(title.substr(here, end - here))) {
        close_segment(here);
        segment_start = end;
        pos = end;
      }
    }
  }
  return out;
}

void AddFeature(std::map<std::string, Feature> &features, std::string_view text,
                FeatureKind kind, std::string_view doi) {
  auto [it, inserted] = features.try_emplace(std::string(text));
  if (inserted) {
    it->second.text = std::string(text);
    it->second.kind = kind;
  }
  if (!doi.empty()) it->second.source_titles.insert(std::string(doi));
}

std::vector<Feature> Values(std::map<std::string, Feature> &features) {
  std::vector<Feature> out;
  out.reserve(features.size());
  for (auto &[text, feature] : features) out.push_back(std::move(feature));
  return out;
}

bool OnlyWhitespace(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    if (!IsSpace(DecodeUtf8(text, pos))) return false;
  }
  return true;
}

bool HasLetter(std::string_view text) { return !IsDigitsAndPunctuation(text); }

}  // namespace

bool Wordlists::IsWord(const std::string &lowercase) const {
  return english.contains(lowercase) || german.contains(lowercase) ||
         countries.contains(lowercase);
}

bool Wordlists::IsStopword(const std::string &lowercase) const {
  return stopwords.contains(lowercase);
}

Wordlists Wordlists::Load(const std::string &dir) {
  Wordlists lists;
  fs::path base(dir);
  LoadWordFile(base / "english.txt", &lists.english);
  LoadWordFile(base / "german.txt", &lists.german);
  LoadWordFile(base / "countries.txt", &lists.countries);
  LoadWordFile(base / "stopwords_en.txt", &lists.stopwords);
  LoadWordFile(base / "stopwords_de.txt", &lists.stopwords);
  return lists;
}

std::string DefaultResourceDir() {
  if (const char *env = std::getenv("DATAREF_RESOURCES")) return env;
  return DATAREF_RESOURCE_DIR;
}

const Wordlists &DefaultWordlists() {
  static const Wordlists lists =
      Wordlists::Load(DefaultResourceDir() + "/wordlists");
  return lists;
}

std::set<std::string> DefaultBaseTerms() {
  return {"barometer", "befragung",  "census",     "cohort",     "database",
          "datenbank", "election",   "erhebung",   "fragebogen", "interview",
          "inventory", "kohorte",    "microdata",  "mikrodaten", "monitor",
          "panel",     "poll",       "questionnaire", "register", "sample",
          "statistics", "statistik", "stichprobe", "studie",     "study",
          "survey",    "trend",      "umfrage",    "wahl",       "zensus"};
}

std::vector<Feature> FeatureDictionary::Features() const {
  std::vector<Feature> out(abbreviations.begin(), abbreviations.end());
  out.insert(out.end(), phrases.begin(), phrases.end());
  return out;
}

bool FeatureDictionary::IsFalsePositive(std::string_view text,
                                        FeatureKind kind) const {
  if (kind == FeatureKind::kAbbreviation) {
    return fp_abbreviations.contains(std::string(text));
  }
  std::string folded = FoldCase(text);
  return std::any_of(fp_phrases.begin(), fp_phrases.end(),
                     [&](const std::string &fp) { return FoldCase(fp) == folded; });
}

std::vector<SourceTitle> AsSourceTitles(const std::vector<std::string> &titles) {
  std::vector<SourceTitle> out;
  out.reserve(titles.size());
  for (const auto &title : titles) out.push_back({title, {}});
  return out;
}

PreprocessedTitles PreprocessTitles(const std::vector<SourceTitle> &titles) {
  PreprocessedTitles out;
  for (const auto &title : titles) {
    if (IsAllCaps(title.text)) {
      out.allcaps.push_back(title);
      continue;
    }
    std::string_view head = title.text.substr(0, title.text.find(':'));
    head = Trim(head);
    if (!head.empty()) out.mixed_case.push_back({head, title.doi});
  }
  return out;
}

std::vector<Feature> ExtractAbbreviations(const std::vector<SourceTitle> &titles,
                                          const Wordlists &wordlists) {
  std::map<std::string, Feature> features;
  for (const auto &title : titles) {
    std::vector<std::string_view> candidates;
    for (const auto &token : Tokenize(title.text)) {
      if (!IsLowercaseAfterFirst(token.text) && PassesShapeFilters(token.text)) {
        candidates.push_back(token.text);
      }
    }
    for (auto token : DelimitedSingleTokens(title.text)) {
      if (PassesShapeFilters(token)) candidates.push_back(token);
    }
    for (auto candidate : candidates) {
      if (SurvivesPruning(candidate, wordlists)) {
        AddFeature(features, candidate, FeatureKind::kAbbreviation, title.doi);
      }
    }
  }
  return Values(features);
}

std::vector<Feature> ExtractAllcapsTokens(
    const std::vector<SourceTitle> &allcaps_titles, const Wordlists &wordlists) {
  std::map<std::string, Feature> features;
  for (const auto &title : allcaps_titles) {
    // Folding preserves byte offsets, so token offsets index the original.
    std::string lower = FoldCase(title.text);
    for (const auto &token : Tokenize(lower)) {
      std::string_view original = title.text.substr(token.offset, token.text.size());
      if (!PassesShapeFilters(original)) continue;
      if (!OnlyWhitelistedPunct(original)) continue;
      if (wordlists.IsWord(std::string(token.text))) continue;
      AddFeature(features, original, FeatureKind::kAbbreviation, title.doi);
    }
  }
  return Values(features);
}

std::vector<Feature> ExtractPhrases(const std::vector<SourceTitle> &titles,
                                    const std::set<std::string> &base_terms,
                                    const Wordlists &wordlists) {
  std::map<std::string, Feature> by_folded;
  std::vector<std::string> order;
  auto add = [&](std::string_view text, std::string_view doi) {
    std::string folded = FoldCase(text);
    auto [it, inserted] = by_folded.try_emplace(folded);
    if (inserted) {
      it->second.text = std::string(text);
      it->second.kind = FeatureKind::kPhrase;
    }
    if (!doi.empty()) it->second.source_titles.insert(std::string(doi));
  };
  auto content_word = [&](std::string_view token) {
    return HasLetter(token) && !StartsWithDigit(token) &&
           !wordlists.IsStopword(FoldCase(token));
  };

  for (const auto &title : titles) {
    auto tokens = Tokenize(title.text);
    std::vector<std::string> folded;
    folded.reserve(tokens.size());
    for (const auto &token : tokens) folded.push_back(FoldCase(token.text));

    auto span = [&](size_t first, size_t last) {
      size_t begin = tokens[first].offset;
      size_t end = tokens[last].offset + tokens[last].text.size();
      return title.text.substr(begin, end - begin);
    };
    auto adjacent = [&](size_t left) {
      size_t gap_begin = tokens[left].offset + tokens[left].text.size();
      return OnlyWhitespace(
          title.text.substr(gap_begin, tokens[left + 1].offset - gap_begin));
    };

    for (size_t i = 0; i < tokens.size(); ++i) {
      // (a) base term embedded in a longer token.
      for (const auto &base : base_terms) {
        if (folded[i].size() >= base.size() + 3 &&
            folded[i].find(base) != std::string::npos && HasLetter(tokens[i].text)) {
          add(tokens[i].text, title.doi);
          break;
        }
      }
      // (b) "Survey of X" / "Study of X".
      if ((folded[i] == "survey" || folded[i] == "study") &&
          i + 2 < tokens.size() && folded[i + 1] == "of" && adjacent(i) &&
          adjacent(i + 1) && content_word(tokens[i + 2].text)) {
        add(span(i, i + 2), title.doi);
      }
      // (c) "<modifier> <base term>".
      if (i > 0 && base_terms.contains(folded[i]) && adjacent(i - 1) &&
          content_word(tokens[i - 1].text)) {
        add(span(i - 1, i), title.doi);
      }
    }
  }
  std::vector<Feature> out;
  out.reserve(by_folded.size());
  for (auto &[folded, feature] : by_folded) out.push_back(std::move(feature));
  std::sort(out.begin(), out.end());
  return out;
}

FeatureDictionary ApplyFalsePositives(
    FeatureDictionary dict,
    const std::vector<std::pair<std::string, FeatureKind>> &additions) {
  for (const auto &[text, kind] : additions) {
    if (text.empty()) continue;
    if (kind == FeatureKind::kAbbreviation) {
      dict.fp_abbreviations.insert(text);
      std::erase_if(dict.abbreviations,
                    [&](const Feature &f) { return f.text == text; });
    } else {
      std::string folded = FoldCase(text);
      bool known = std::any_of(
          dict.fp_phrases.begin(), dict.fp_phrases.end(),
          [&](const std::string &fp) { return FoldCase(fp) == folded; });
      if (!known) dict.fp_phrases.insert(text);
      std::erase_if(dict.phrases, [&](const Feature &f) {
        return FoldCase(f.text) == folded;
      });
    }
  }
  return dict;
}

FeatureDictionary BuildDictionary(const std::vector<DatasetRecord> &records,
                                  const Wordlists &wordlists,
                                  const std::set<std::string> &base_terms,
                                  const FeatureDictionary *previous) {
  std::vector<SourceTitle> titles;
  titles.reserve(records.size());
  for (const auto &record : records) titles.push_back({record.title, record.doi});

  auto split = PreprocessTitles(titles);
  std::map<std::string, Feature> abbreviations;
  for (auto &group : {ExtractAbbreviations(split.mixed_case, wordlists),
                      ExtractAllcapsTokens(split.allcaps, wordlists)}) {
    for (const auto &feature : group) {
      auto &slot = abbreviations[feature.text];
      slot.text = feature.text;
      slot.kind = FeatureKind::kAbbreviation;
      slot.source_titles.insert(feature.source_titles.begin(),
                                feature.source_titles.end());
    }
  }

  FeatureDictionary dict;
  dict.base_terms = base_terms;
  for (auto &[text, feature] : abbreviations) {
    dict.abbreviations.insert(std::move(feature));
  }
  for (auto &feature : ExtractPhrases(titles, base_terms, wordlists)) {
    dict.phrases.insert(std::move(feature));
  }

  if (previous) {
    std::vector<std::pair<std::string, FeatureKind>> fps;
    for (const auto &fp : previous->fp_abbreviations) {
      fps.emplace_back(fp, FeatureKind::kAbbreviation);
    }
    for (const auto &fp : previous->fp_phrases) {
      fps.emplace_back(fp, FeatureKind::kPhrase);
    }
    dict = ApplyFalsePositives(std::move(dict), fps);
  }
  return dict;
}

bool IsFilenameToken(std::string_view token) {
  size_t dot = token.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  std::string_view name = token.substr(0, dot);
  std::string_view ext = token.substr(dot + 1);
  if (ext.size() < 2 || ext.size() > 4) return false;
  for (char c : ext) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

PatternStats ComputePatternStats(const std::vector<std::string> &titles,
                                 const FeatureDictionary &dict) {
  PatternStats stats;
  stats.titles = titles.size();
  if (titles.empty()) return stats;

  // Index the titles under synthetic identifiers so each feature is matched
  // through the token index instead of a full scan.
  std::vector<DatasetRecord> records;
  records.reserve(titles.size());
  for (size_t i = 0; i < titles.size(); ++i) {
    if (Trim(titles[i]).empty()) continue;
    DatasetRecord record;
    record.doi = std::to_string(i);
    record.title = titles[i];
    records.push_back(std::move(record));
  }
  RegistryIndex index(std::move(records));

  std::vector<char> has_abbrev(titles.size()), has_phrase(titles.size());
  for (const auto &feature : dict.abbreviations) {
    for (const auto &record : index.TitlesContaining(feature)) {
      has_abbrev[std::stoul(record.doi)] = 1;
    }
  }
  for (const auto &feature : dict.phrases) {
    for (const auto &record : index.TitlesContaining(feature)) {
      has_phrase[std::stoul(record.doi)] = 1;
    }
  }

  size_t abbrev = 0, phrase = 0, both = 0, filename = 0;
  for (size_t i = 0; i < titles.size(); ++i) {
    abbrev += has_abbrev[i];
    phrase += has_phrase[i];
    both += has_abbrev[i] && has_phrase[i];
    auto tokens = Tokenize(titles[i]);
    filename += std::any_of(tokens.begin(), tokens.end(), [](const Token &t) {
      return IsFilenameToken(t.text);
    });
  }
  double n = static_cast<double>(titles.size());
  stats.abbrev_pct = abbrev / n;
  stats.phrase_pct = phrase / n;
  stats.intersection_pct = both / n;
  stats.filename_pct = filename / n;
  return stats;
}

namespace {

void WriteLines(const fs::path &path, const std::set<std::string> &lines) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto &line : lines) out << line << '\n';
}

std::set<std::string> ReadLines(const fs::path &path) {
  std::set<std::string> lines;
  std::ifstream in(path);
  if (!in) return lines;
  std::string line;
  while (std::getline(in, line)) {
    auto text = Trim(line);
    if (!text.empty()) lines.insert(std::string(text));
  }
  return lines;
}

std::set<std::string> Texts(const std::set<Feature> &features) {
  std::set<std::string> out;
  for (const auto &f : features) out.insert(f.text);
  return out;
}

}  // namespace

void SaveDictionary(const FeatureDictionary &dict, const std::string &dir) {
  fs::create_directories(dir);
  fs::path base(dir);
  WriteLines(base / "abbreviations.txt", Texts(dict.abbreviations));
  WriteLines(base / "phrases.txt", Texts(dict.phrases));
  WriteLines(base / "fp_abbreviations.txt", dict.fp_abbreviations);
  WriteLines(base / "fp_phrases.txt", dict.fp_phrases);
  WriteLines(base / "base_terms.txt", dict.base_terms);
}

FeatureDictionary LoadDictionary(const std::string &dir) {
  fs::path base(dir);
  if (!fs::is_directory(base)) throw Error("no dictionary directory " + dir);
  FeatureDictionary dict;
  dict.fp_abbreviations = ReadLines(base / "fp_abbreviations.txt");
  dict.fp_phrases = ReadLines(base / "fp_phrases.txt");
  for (const auto &base_term : ReadLines(base / "base_terms.txt")) {
    dict.base_terms.insert(FoldCase(base_term));
  }
  for (const auto &text : ReadLines(base / "abbreviations.txt")) {
    if (!dict.IsFalsePositive(text, FeatureKind::kAbbreviation)) {
      dict.abbreviations.insert({text, FeatureKind::kAbbreviation, {}});
    }
  }
  for (const auto &text : ReadLines(base / "phrases.txt")) {
    if (!dict.IsFalsePositive(text, FeatureKind::kPhrase)) {
      dict.phrases.insert({text, FeatureKind::kPhrase, {}});
    }
  }
  return dict;
}

}  // namespace dataref
