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

// Two-phase evaluation against a gold standard: detection (was feature F
// flagged in article A), matching (does the suggestion list of a detected
// feature contain an acceptable DOI) and both combined.

#ifndef DATAREF_EVALUATOR_H_
#define DATAREF_EVALUATOR_H_

#include <compare>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dataref/detector.h"
#include "dataref/feature.h"
#include "dataref/ranker.h"

namespace dataref {

// Detection is scored per article and feature. Phrases are compared
// case-insensitively, so their text is stored lowercased.
struct FeatureRef {
  std::string article_id;
  FeatureKind kind = FeatureKind::kAbbreviation;
  std::string feature;

  auto operator<=>(const FeatureRef &) const = default;
};

FeatureRef MakeFeatureRef(std::string article_id, std::string_view feature,
                          FeatureKind kind);

// One gold reference: a feature in an article and the DOIs that count as a
// correct match for it.
struct GoldRow {
  FeatureRef key;
  std::set<std::string> acceptable_dois;
};

class GoldStandard {
 public:
  // Registers an article, possibly without references.
  void AddArticle(const std::string &article_id);
  // Throws PreconditionError if `acceptable_dois` is empty.
  void AddRow(const std::string &article_id, std::string_view feature,
              FeatureKind kind, std::set<std::string> acceptable_dois);

  const std::set<std::string> &articles() const { return articles_; }
  const std::vector<GoldRow> &rows() const { return rows_; }
  std::set<FeatureRef> Features() const;
  bool HasArticle(const std::string &article_id) const {
    return articles_.contains(article_id);
  }

 private:
  std::set<std::string> articles_;
  std::vector<GoldRow> rows_;
};

// CSV with header "article_id,feature,kind,acceptable_dois"; DOIs are
// ';'-separated. A row with an empty feature only registers the article.
// Throws ParseError with the line number.
GoldStandard ReadGoldStandard(std::istream &in);
GoldStandard LoadGoldStandard(const std::string &path);

enum class Phase { kDetection, kMatching, kCombined };
std::string_view PhaseName(Phase phase);

struct EvaluationReport {
  Phase phase = Phase::kDetection;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f_measure = 0;
  // Set when tp + fp (resp. tp + fn) is 0; the value is then reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

// 0 if p + r is 0, else 2pr / (p + r).
double FMeasure(double p, double r);

// Fills precision, recall and f_measure from the counts.
EvaluationReport MakeReport(Phase phase, size_t tp, size_t fp, size_t fn);

using DetectedFeatures = std::set<FeatureRef>;
// Suggested DOIs per detected feature.
using Suggestions = std::map<FeatureRef, std::vector<std::string>>;

// Throws PreconditionError for a detected feature whose article is not in
// the gold standard.
EvaluationReport EvaluateDetection(const DetectedFeatures &detected,
                                   const GoldStandard &gold);

// Scores every gold row whose feature has a suggestion list: a hit is a TP,
// a miss is one FP and one FN. Suggestions for features absent from the
// gold standard are ignored.
EvaluationReport EvaluateMatching(const Suggestions &suggestions,
                                  const GoldStandard &gold);

// Detection FPs stay FPs, every gold row of a missed feature is an FN and
// the rows of detected gold features are scored by the matching rule.
EvaluationReport EvaluateCombined(const DetectedFeatures &detected,
                                  const Suggestions &suggestions,
                                  const GoldStandard &gold);

DetectedFeatures DetectedFromReferences(
    const std::vector<ReferenceCandidate> &refs);

// Union of the suggested DOIs per feature, in first-seen order.
Suggestions SuggestionsFromRanked(
    const std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>>
        &ranked);
Suggestions SuggestionsFromGroups(const std::string &article_id,
                                  const FeatureGroups &groups);

// "phase  tp  fp  fn  precision  recall  f" table.
std::string FormatReports(const std::vector<EvaluationReport> &reports);

}  // namespace dataref

#endif  // DATAREF_EVALUATOR_H_
