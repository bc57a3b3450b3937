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

// Candidate ranking for detected references.
//
// For one reference the corpus is every sentence of the article plus every
// registry title that contains the reference's feature. Terms are
// case-folded tokens; weights are (1 + log10 tf) * log10(N / df). Titles
// are scored by the cosine between their weight vector and the weight
// vector of the reference segment, then titles sharing a year with the
// segment are boosted.

#ifndef DATAREF_RANKER_H_
#define DATAREF_RANKER_H_

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dataref/detector.h"
#include "dataref/registry.h"

namespace dataref {

// Sparse term -> weight map. Zero weights are never stored.
class WeightVector {
 public:
  WeightVector() = default;

  // Stores `weight` for `term`; zero erases. Throws PreconditionError for
  // negative or non-finite weights.
  void Set(const std::string &term, double weight);
  double Get(const std::string &term) const;

  const std::map<std::string, double> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double Norm() const;
  double Dot(const WeightVector &other) const;

 private:
  std::map<std::string, double> entries_;
};

// Case-folded tokens containing at least one letter or digit.
std::vector<std::string> Terms(std::string_view text);

class RankingCorpus {
 public:
  RankingCorpus() = default;
  explicit RankingCorpus(const std::vector<std::string> &documents);

  void AddDocument(std::string_view text);

  size_t N() const { return n_; }
  // Document frequency; unseen terms report 1.
  size_t DocumentFrequency(const std::string &term) const;
  const std::unordered_map<std::string, size_t> &df() const { return df_; }

  // tf-idf weight vector of an arbitrary text against this corpus.
  WeightVector Weigh(std::string_view text) const;

 private:
  size_t n_ = 0;
  std::unordered_map<std::string, size_t> df_;
};

// 0 for count 0, else 1 + log10(count).
double TfWeight(size_t count);

// log10(N / df). Throws PreconditionError unless 1 <= df <= N.
double Idf(size_t n, size_t df);

// Sum over shared terms of TfWeight(count in doc) * idf(term).
double TfidfScore(std::string_view query, std::string_view doc,
                  const RankingCorpus &corpus);

// dot(q, d) / (|q| |d|); 0 if either vector is zero.
double Cosine(const WeightVector &q, const WeightVector &d);

enum class SetMetric { kMatching, kDice, kOverlap, kJaccard };

// Matching |d∩q|, Dice 2|d∩q|/(|d|+|q|), Overlap |d∩q|/min(|d|,|q|),
// Jaccard |d∩q|/|d∪q|. Dice and Jaccard of two empty sets are 0; Overlap
// with an empty set throws PreconditionError.
double SetSimilarity(SetMetric metric, const std::set<std::string> &q,
                     const std::set<std::string> &d);

struct RankedMatch {
  std::string doi;
  std::string title;
  double score = 0;
  size_t rank = 0;  // 1-based
  bool year_match = false;

  bool operator==(const RankedMatch &) const = default;
};

struct RankerConfig {
  double year_boost_factor = 1.5;
  size_t top_k_reference = 5;
  size_t top_k_feature = 6;
  double score_threshold = 0;
};

// Multiplies the score of every match whose title shares a 1900-2099 year
// with the segment by `factor`, then re-sorts by score (stable) and
// renumbers ranks. Leaves the list untouched when the segment has no year.
std::vector<RankedMatch> YearBoost(std::string_view segment,
                                   std::vector<RankedMatch> matches,
                                   double factor = 1.5);

// Scores every registry title containing the reference's feature against
// the reference segment, applies the year boost, drops scores below the
// threshold and keeps the top_k_reference. Ties break on year match, then
// DOI ascending.
std::vector<RankedMatch> RankCandidates(const ReferenceCandidate &ref,
                                        const RegistryIndex &index,
                                        const ArticleText &article,
                                        const RankerConfig &config = {});

struct FeatureKey {
  std::string text;
  FeatureKind kind = FeatureKind::kAbbreviation;
  auto operator<=>(const FeatureKey &) const = default;
};

// Reuses the sentence list of one article across many references and the
// per-feature corpora across references sharing a feature. Thread-safe.
class ArticleRanker {
 public:
  ArticleRanker(const RegistryIndex &index, const ArticleText &article,
                RankerConfig config = {});

  // All boosted matches before truncation, best first.
  std::vector<RankedMatch> ScoreAll(const ReferenceCandidate &ref) const;
  std::vector<RankedMatch> Rank(const ReferenceCandidate &ref) const;

 private:
  struct FeatureCorpus {
    std::vector<DatasetRecord> titles;
    RankingCorpus corpus;
  };
  const FeatureCorpus &CorpusFor(const Feature &feature) const;

  const RegistryIndex &index_;
  RankerConfig config_;
  RankingCorpus sentence_corpus_;
  mutable std::mutex mutex_;
  mutable std::map<FeatureKey, FeatureCorpus> cache_;
};

using FeatureGroups = std::map<FeatureKey, std::vector<RankedMatch>>;

// Groups references by feature, counts how often each DOI appears in the
// groups' top lists, and keeps the `top_k` most frequent per feature (ties:
// best rank achieved, then DOI). The score field carries the count.
FeatureGroups AggregatePerFeature(
    const std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>>
        &refs_with_top,
    size_t top_k = 6);

}  // namespace dataref

#endif  // DATAREF_RANKER_H_
