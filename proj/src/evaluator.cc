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

#include "dataref/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <boost/tokenizer.hpp>

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

FeatureRef MakeFeatureRef(std::string article_id, std::string_view feature,
                          FeatureKind kind) {
  std::string text(Trim(feature));
  if (kind == FeatureKind::kPhrase) text = FoldCase(text);
  return {std::move(article_id), kind, std::move(text)};
}

void GoldStandard::AddArticle(const std::string &article_id) {
  if (article_id.empty()) throw PreconditionError("empty article id");
  articles_.insert(article_id);
}

void GoldStandard::AddRow(const std::string &article_id,
                          std::string_view feature, FeatureKind kind,
                          std::set<std::string> acceptable_dois) {
  AddArticle(article_id);
  if (Trim(feature).empty()) throw PreconditionError("empty gold feature");
  if (acceptable_dois.empty()) {
    throw PreconditionError("gold row for '" + std::string(feature) +
                            "' has no acceptable DOI");
  }
  rows_.push_back(
      {MakeFeatureRef(article_id, feature, kind), std::move(acceptable_dois)});
}

std::set<FeatureRef> GoldStandard::Features() const {
  std::set<FeatureRef> out;
  for (const auto &row : rows_) out.insert(row.key);
  return out;
}

GoldStandard ReadGoldStandard(std::istream &in) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  boost::escaped_list_separator<char> separator("", ",", "\"");
  GoldStandard gold;
  std::string line;
  size_t number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells;
    try {
      Tokenizer tokens(line, separator);
      cells.assign(tokens.begin(), tokens.end());
    } catch (const boost::escaped_list_error &e) {
      throw ParseError(e.what(), number);
    }
    if (header) {
      header = false;
      if (cells.size() >= 1 && Trim(cells[0]) == "article_id") continue;
    }
    if (cells.size() != 4) {
      throw ParseError("expected 4 columns, got " + std::to_string(cells.size()),
                       number);
    }
    std::string article(Trim(cells[0]));
    if (article.empty()) throw ParseError("empty article_id", number);
    if (Trim(cells[1]).empty()) {
      gold.AddArticle(article);
      continue;
    }
    std::set<std::string> dois;
    boost::char_separator<char> semicolon(";");
    boost::tokenizer<boost::char_separator<char>> parts(cells[3], semicolon);
    for (const auto &part : parts) {
      std::string doi(Trim(part));
      if (!doi.empty()) dois.insert(doi);
    }
    try {
      gold.AddRow(article, cells[1], ParseKind(Trim(cells[2])), std::move(dois));
    } catch (const Error &e) {
      throw ParseError(e.what(), number);
    }
  }
  return gold;
}

GoldStandard LoadGoldStandard(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold standard " + path);
  return ReadGoldStandard(in);
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kDetection:
      return "detection";
    case Phase::kMatching:
      return "matching";
    case Phase::kCombined:
      return "combined";
  }
  return "?";
}

double FMeasure(double p, double r) {
  if (p + r == 0) return 0;
  return 2 * p * r / (p + r);
}

EvaluationReport MakeReport(Phase phase, size_t tp, size_t fp, size_t fn) {
  EvaluationReport report;
  report.phase = phase;
  report.tp = tp;
  report.fp = fp;
  report.fn = fn;
  if (tp + fp == 0) {
    report.precision_undefined = true;
  } else {
    report.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    report.recall_undefined = true;
  } else {
    report.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  report.f_measure = FMeasure(report.precision, report.recall);
  return report;
}

EvaluationReport EvaluateDetection(const DetectedFeatures &detected,
                                   const GoldStandard &gold) {
  for (const auto &key : detected) {
    if (!gold.HasArticle(key.article_id)) {
      throw PreconditionError("article " + key.article_id +
                              " is not in the gold standard");
    }
  }
  auto truth = gold.Features();
  size_t tp = 0;
  for (const auto &key : detected) tp += truth.contains(key);
  return MakeReport(Phase::kDetection, tp, detected.size() - tp,
                    truth.size() - tp);
}

namespace {

bool Hit(const GoldRow &row, const std::vector<std::string> &suggested) {
  return std::any_of(suggested.begin(), suggested.end(),
                     [&](const std::string &doi) {
                       return row.acceptable_dois.contains(doi);
                     });
}

}  // namespace

EvaluationReport EvaluateMatching(const Suggestions &suggestions,
                                  const GoldStandard &gold) {
  size_t tp = 0, miss = 0;
  for (const auto &row : gold.rows()) {
    auto it = suggestions.find(row.key);
    if (it == suggestions.end()) continue;
    if (Hit(row, it->second)) {
      ++tp;
    } else {
      ++miss;
    }
  }
  return MakeReport(Phase::kMatching, tp, miss, miss);
}

EvaluationReport EvaluateCombined(const DetectedFeatures &detected,
                                  const Suggestions &suggestions,
                                  const GoldStandard &gold) {
  auto truth = gold.Features();
  size_t tp = 0, fp = 0, fn = 0;
  for (const auto &key : detected) fp += !truth.contains(key);
  static const std::vector<std::string> kNone;
  for (const auto &row : gold.rows()) {
    if (!detected.contains(row.key)) {
      ++fn;
      continue;
    }
    auto it = suggestions.find(row.key);
    if (Hit(row, it == suggestions.end() ? kNone : it->second)) {
      ++tp;
    } else {
      ++fp;
      ++fn;
    }
  }
  return MakeReport(Phase::kCombined, tp, fp, fn);
}

DetectedFeatures DetectedFromReferences(
    const std::vector<ReferenceCandidate> &refs) {
  DetectedFeatures out;
  for (const auto &ref : refs) {
    out.insert(MakeFeatureRef(ref.article_id, ref.feature.text, ref.feature.kind));
  }
  return out;
}

namespace {

void AppendUnique(std::vector<std::string> &list, const std::string &doi) {
  if (std::find(list.begin(), list.end(), doi) == list.end()) list.push_back(doi);
}

}  // namespace

Suggestions SuggestionsFromRanked(
    const std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>>
        &ranked) {
  Suggestions out;
  for (const auto &[ref, matches] : ranked) {
    auto &list = out[MakeFeatureRef(ref.article_id, ref.feature.text,
                                    ref.feature.kind)];
    for (const auto &match : matches) AppendUnique(list, match.doi);
  }
  return out;
}

Suggestions SuggestionsFromGroups(const std::string &article_id,
                                  const FeatureGroups &groups) {
  Suggestions out;
  for (const auto &[key, matches] : groups) {
    auto &list = out[MakeFeatureRef(article_id, key.text, key.kind)];
    for (const auto &match : matches) AppendUnique(list, match.doi);
  }
  return out;
}

std::string FormatReports(const std::vector<EvaluationReport> &reports) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %6s %6s %6s %9s %9s %9s\n", "phase",
                "tp", "fp", "fn", "precision", "recall", "f");
  out += line;
  for (const auto &r : reports) {
    std::snprintf(line, sizeof line, "%-10s %6zu %6zu %6zu %8.4f%s %8.4f%s %9.4f\n",
                  std::string(PhaseName(r.phase)).c_str(), r.tp, r.fp, r.fn,
                  r.precision, r.precision_undefined ? "*" : " ", r.recall,
                  r.recall_undefined ? "*" : " ", r.f_measure);
    out += line;
  }
  bool undefined = std::any_of(reports.begin(), reports.end(), [](const auto &r) {
    return r.precision_undefined || r.recall_undefined;
  });
  if (undefined) out += "* undefined (no predictions or no gold items), shown as 0\n";
  return out;
}

}  // namespace dataref
