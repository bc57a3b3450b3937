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

#include "dataref/ranker.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

void WeightVector::Set(const std::string &term, double weight) {
  if (!std::isfinite(weight) || weight < 0) {
    throw PreconditionError("weight for '" + term +
                            "' must be finite and non-negative");
  }
  if (weight == 0) {
    entries_.erase(term);
  } else {
    entries_[term] = weight;
  }
}

double WeightVector::Get(const std::string &term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? 0.0 : it->second;
}

double WeightVector::Norm() const {
  double sum = 0;
  for (const auto &[term, w] : entries_) sum += w * w;
  return std::sqrt(sum);
}

double WeightVector::Dot(const WeightVector &other) const {
  const auto &small = size() <= other.size() ? entries_ : other.entries_;
  const auto &large = size() <= other.size() ? other.entries_ : entries_;
  double sum = 0;
  for (const auto &[term, w] : small) {
    auto it = large.find(term);
    if (it != large.end()) sum += w * it->second;
  }
  return sum;
}

std::vector<std::string> Terms(std::string_view text) {
  std::vector<std::string> terms;
  for (const auto &token : Tokenize(text)) {
    if (IsDigitsAndPunctuation(token.text)) {
      // Keep numbers (years matter); drop pure punctuation.
      bool digit = std::any_of(token.text.begin(), token.text.end(),
                               [](char c) { return c >= '0' && c <= '9'; });
      if (!digit) continue;
    }
    terms.push_back(FoldCase(token.text));
  }
  return terms;
}

namespace {

std::map<std::string, size_t> Counts(std::string_view text) {
  std::map<std::string, size_t> counts;
  for (auto &term : Terms(text)) ++counts[term];
  return counts;
}

}  // namespace

RankingCorpus::RankingCorpus(const std::vector<std::string> &documents) {
  for (const auto &doc : documents) AddDocument(doc);
}

void RankingCorpus::AddDocument(std::string_view text) {
  ++n_;
  auto terms = Terms(text);
  std::unordered_set<std::string> unique(terms.begin(), terms.end());
  for (const auto &term : unique) ++df_[term];
}

size_t RankingCorpus::DocumentFrequency(const std::string &term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 1 : it->second;
}

WeightVector RankingCorpus::Weigh(std::string_view text) const {
  WeightVector vec;
  if (n_ == 0) return vec;
  for (const auto &[term, count] : Counts(text)) {
    vec.Set(term, TfWeight(count) * Idf(n_, DocumentFrequency(term)));
  }
  return vec;
}

double TfWeight(size_t count) {
  if (count == 0) return 0;
  return 1 + std::log10(static_cast<double>(count));
}

double Idf(size_t n, size_t df) {
  if (df == 0 || df > n) {
    throw PreconditionError("idf requires 1 <= df <= N (df=" +
                            std::to_string(df) + ", N=" + std::to_string(n) +
                            ")");
  }
  return std::log10(static_cast<double>(n) / static_cast<double>(df));
}

double TfidfScore(std::string_view query, std::string_view doc,
                  const RankingCorpus &corpus) {
  auto doc_counts = Counts(doc);
  std::set<std::string> query_terms;
  for (auto &term : Terms(query)) query_terms.insert(std::move(term));
  double score = 0;
  for (const auto &term : query_terms) {
    auto it = doc_counts.find(term);
    if (it == doc_counts.end()) continue;
    score += TfWeight(it->second) * Idf(corpus.N(), corpus.DocumentFrequency(term));
  }
  return score;
}

double Cosine(const WeightVector &q, const WeightVector &d) {
  double nq = q.Norm(), nd = d.Norm();
  if (nq == 0 || nd == 0) return 0;
  double value = q.Dot(d) / (nq * nd);
  return std::clamp(value, 0.0, 1.0);
}

double SetSimilarity(SetMetric metric, const std::set<std::string> &q,
                     const std::set<std::string> &d) {
  size_t common = 0;
  for (const auto &term : q) common += d.contains(term);
  switch (metric) {
    case SetMetric::kMatching:
      return static_cast<double>(common);
    case SetMetric::kDice:
      if (q.empty() && d.empty()) return 0;
      return 2.0 * common / static_cast<double>(q.size() + d.size());
    case SetMetric::kOverlap:
      if (q.empty() || d.empty()) {
        throw PreconditionError("overlap coefficient of an empty set");
      }
      return common / static_cast<double>(std::min(q.size(), d.size()));
    case SetMetric::kJaccard: {
      size_t uni = q.size() + d.size() - common;
      if (uni == 0) return 0;
      return common / static_cast<double>(uni);
    }
  }
  return 0;
}

namespace {

bool SharesYear(const std::vector<int> &years, std::string_view title) {
  for (int year : ExtractYears(title)) {
    if (std::find(years.begin(), years.end(), year) != years.end()) return true;
  }
  return false;
}

void Renumber(std::vector<RankedMatch> &matches) {
  for (size_t i = 0; i < matches.size(); ++i) matches[i].rank = i + 1;
}

bool BetterMatch(const RankedMatch &a, const RankedMatch &b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.year_match != b.year_match) return a.year_match;
  return a.doi < b.doi;
}

}  // namespace

std::vector<RankedMatch> YearBoost(std::string_view segment,
                                   std::vector<RankedMatch> matches,
                                   double factor) {
  auto years = ExtractYears(segment);
  if (years.empty()) return matches;
  for (auto &match : matches) {
    match.year_match = SharesYear(years, match.title);
    if (match.year_match) match.score *= factor;
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const RankedMatch &a, const RankedMatch &b) {
                     return a.score > b.score;
                   });
  Renumber(matches);
  return matches;
}

ArticleRanker::ArticleRanker(const RegistryIndex &index,
                             const ArticleText &article, RankerConfig config)
    : index_(index), config_(config) {
  for (const auto &sentence : SplitSentences(article.fulltext)) {
    sentence_corpus_.AddDocument(sentence.text);
  }
}

const ArticleRanker::FeatureCorpus &ArticleRanker::CorpusFor(
    const Feature &feature) const {
  std::lock_guard<std::mutex> lock(mutex_);
  FeatureKey key{feature.text, feature.kind};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  FeatureCorpus entry;
  entry.titles = index_.TitlesContaining(feature);
  entry.corpus = sentence_corpus_;
  for (const auto &record : entry.titles) entry.corpus.AddDocument(record.title);
  return cache_.emplace(std::move(key), std::move(entry)).first->second;
}

std::vector<RankedMatch> ArticleRanker::ScoreAll(
    const ReferenceCandidate &ref) const {
  const FeatureCorpus &fc = CorpusFor(ref.feature);
  WeightVector query = fc.corpus.Weigh(ref.sentence);
  std::vector<RankedMatch> matches;
  matches.reserve(fc.titles.size());
  for (const auto &record : fc.titles) {
    RankedMatch match;
    match.doi = record.doi;
    match.title = record.title;
    match.score = Cosine(query, fc.corpus.Weigh(record.title));
    matches.push_back(std::move(match));
  }
  std::sort(matches.begin(), matches.end(), BetterMatch);
  matches = YearBoost(ref.sentence, std::move(matches), config_.year_boost_factor);
  std::sort(matches.begin(), matches.end(), BetterMatch);
  std::erase_if(matches, [&](const RankedMatch &m) {
    return m.score < config_.score_threshold;
  });
  Renumber(matches);
  return matches;
}

std::vector<RankedMatch> ArticleRanker::Rank(const ReferenceCandidate &ref) const {
  auto matches = ScoreAll(ref);
  if (matches.size() > config_.top_k_reference) {
    matches.resize(config_.top_k_reference);
  }
  return matches;
}

std::vector<RankedMatch> RankCandidates(const ReferenceCandidate &ref,
                                        const RegistryIndex &index,
                                        const ArticleText &article,
                                        const RankerConfig &config) {
  return ArticleRanker(index, article, config).Rank(ref);
}

FeatureGroups AggregatePerFeature(
    const std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>>
        &refs_with_top,
    size_t top_k) {
  struct Tally {
    std::string title;
    size_t count = 0;
    size_t best_rank = SIZE_MAX;
  };
  std::map<FeatureKey, std::map<std::string, Tally>> tallies;
  for (const auto &[ref, matches] : refs_with_top) {
    auto &group = tallies[{ref.feature.text, ref.feature.kind}];
    for (const auto &match : matches) {
      auto &tally = group[match.doi];
      tally.title = match.title;
      ++tally.count;
      tally.best_rank = std::min(tally.best_rank, match.rank);
    }
  }

  FeatureGroups groups;
  for (auto &[key, by_doi] : tallies) {
    std::vector<std::pair<std::string, Tally>> entries(by_doi.begin(),
                                                       by_doi.end());
    std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
      if (a.second.count != b.second.count) return a.second.count > b.second.count;
      if (a.second.best_rank != b.second.best_rank) {
        return a.second.best_rank < b.second.best_rank;
      }
      return a.first < b.first;
    });
    if (entries.size() > top_k) entries.resize(top_k);
    auto &out = groups[key];
    for (size_t i = 0; i < entries.size(); ++i) {
      RankedMatch match;
      match.doi = entries[i].first;
      match.title = entries[i].second.title;
      match.score = static_cast<double>(entries[i].second.count);
      match.rank = i + 1;
      out.push_back(std::move(match));
    }
  }
  return groups;
}

}  // namespace dataref
