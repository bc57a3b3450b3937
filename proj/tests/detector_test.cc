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

#include <gtest/gtest.h>

#include <random>

namespace dataref {
namespace {

std::vector<std::string> SentenceTexts(std::string_view text) {
  std::vector<std::string> out;
  for (const auto &s : SplitSentences(text)) out.emplace_back(s.text);
  return out;
}

ArticleText Article(std::string text) { return {"a1", std::move(text), std::nullopt}; }

Feature Abbrev(std::string text) { return {std::move(text), FeatureKind::kAbbreviation, {}}; }
Feature Phrase(std::string text) { return {std::move(text), FeatureKind::kPhrase, {}}; }

TEST(SplitSentences, Terminators) {
  EXPECT_EQ(SentenceTexts("A. B? C!"), (std::vector<std::string>{"A.", "B?", "C!"}));
}

TEST(SplitSentences, YearAtSentenceEnd) {
  auto s = SentenceTexts("Wir nutzen den ALLBUS 2010. Die Daten sind gewichtet.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], "Wir nutzen den ALLBUS 2010.");
}

TEST(SplitSentences, AbbreviationsAndParentheses) {
  EXPECT_EQ(SentenceTexts("Daten z.B. Wahlen. Zweiter Satz.").size(), 2u);
  EXPECT_EQ(SentenceTexts("See Smith et al. For details.").size(), 1u);
  EXPECT_EQ(SentenceTexts("Data (see Fig. 2. Also Tab. 3) were used. Next one.").size(), 2u);
  EXPECT_EQ(SentenceTexts("He said \"Done.\" Then left.").size(), 2u);
  EXPECT_EQ(SentenceTexts("lowercase. after a period stays").size(), 1u);
  EXPECT_EQ(SentenceTexts("Heading without stop\n\nBody text here.").size(), 2u);
}

TEST(SplitSentences, SpansAreOrderedAndGapsAreWhitespace) {
  std::string text = "  Erste Zeile. Zweite (mit Klammer. Noch) Zeile!  Dritte?\n\nVierte";
  auto sentences = SplitSentences(text);
  size_t cursor = 0;
  for (const auto &s : sentences) {
    ASSERT_GE(s.span.begin, cursor);
    for (size_t i = cursor; i < s.span.begin; ++i) EXPECT_TRUE(std::isspace(static_cast<unsigned char>(text[i])));
    EXPECT_EQ(text.substr(s.span.begin, s.span.end - s.span.begin), s.text);
    cursor = s.span.end;
  }
  for (size_t i = cursor; i < text.size(); ++i) EXPECT_TRUE(std::isspace(static_cast<unsigned char>(text[i])));
}

TEST(MatchFeature, SentenceExamples) {
  EXPECT_EQ(MatchFeature("ALLBUS (2010)", Abbrev("ALLBUS")).size(), 1u);
  EXPECT_TRUE(MatchFeature("we tallbus the data", Abbrev("ALLBUS")).empty());
}

TEST(FindReferences, SingleOccurrenceGivesOneCandidate) {
  auto refs = FindReferences(
      Article("Die Einstellungen werden aus den ALLBUS – Wellen 1994 und 2008 operationalisiert."),
      std::vector<Feature>{Abbrev("ALLBUS")});
  ASSERT_EQ(refs.size(), 1u);
  EXPECT_EQ(refs[0].segment_index, 0u);
  EXPECT_EQ(refs[0].sentence,
            "Die Einstellungen werden aus den ALLBUS – Wellen 1994 und 2008 operationalisiert.");
}

TEST(FindReferences, RepeatedFeatureSplitsAtMidpoint) {
  ArticleText article = Article("We compare ALLBUS 1998 with ALLBUS 2010.");
  auto refs = FindReferences(article, std::vector<Feature>{Abbrev("ALLBUS")});
  ASSERT_EQ(refs.size(), 2u);
  EXPECT_EQ(refs[0].sentence, "We compare ALLBUS 1998");
  EXPECT_EQ(refs[1].sentence, "with ALLBUS 2010.");
  EXPECT_EQ(refs[0].segment_index, 0u);
  EXPECT_EQ(refs[1].segment_index, 1u);
  for (const auto &ref : refs) {
    EXPECT_EQ(article.fulltext.substr(ref.span.begin, ref.span.end - ref.span.begin), ref.sentence);
    EXPECT_EQ(article.fulltext.substr(ref.match.begin, ref.match.end - ref.match.begin), "ALLBUS");
  }
}

TEST(FindReferences, NoFeatureNoCandidates) {
  EXPECT_TRUE(FindReferences(Article("Nothing to see here."),
                             std::vector<Feature>{Abbrev("ALLBUS"), Phrase("Exit Poll")})
                  .empty());
}

TEST(FindReferences, DictionaryFalsePositivesAreNotDetected) {
  FeatureDictionary dict;
  dict.abbreviations = {Abbrev("NYPD"), Abbrev("DAWN")};
  dict = ApplyFalsePositives(dict, {{"NYPD", FeatureKind::kAbbreviation}});
  auto refs = FindReferences(Article("NYPD and DAWN data."), dict);
  ASSERT_EQ(refs.size(), 1u);
  EXPECT_EQ(refs[0].feature.text, "DAWN");
}

TEST(ValidateArticle, RejectsEmptyInput) {
  EXPECT_ANY_THROW(ValidateArticle({"", "text", std::nullopt}));
  EXPECT_ANY_THROW(ValidateArticle({"a", " \n ", std::nullopt}));
}

// Independent segmentation: every sentence x every feature, cutting each gap
// at the whitespace byte closest to its midpoint (earliest on ties).
std::vector<ReferenceCandidate> BruteForce(const ArticleText &article,
                                           const std::vector<Feature> &features) {
  const std::string &text = article.fulltext;
  auto trim = [&](size_t b, size_t e) {
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::pair(b, e);
  };
  std::vector<ReferenceCandidate> out;
  for (const auto &sentence : SplitSentences(text)) {
    for (const auto &feature : features) {
      auto matches = MatchFeature(sentence.text, feature);
      size_t begin = sentence.span.begin;
      for (size_t i = 0; i < matches.size(); ++i) {
        size_t end = sentence.span.end;
        if (i + 1 < matches.size()) {
          size_t gb = sentence.span.begin + matches[i].end;
          size_t ge = sentence.span.begin + matches[i + 1].begin;
          size_t mid = gb + (ge - gb) / 2;
          size_t best = std::string::npos, dist = std::string::npos;
          for (size_t p = gb; p < ge; ++p) {
            if (!std::isspace(static_cast<unsigned char>(text[p]))) continue;
            size_t d = p > mid ? p - mid : mid - p;
            if (d < dist) {
              dist = d;
              best = p;
            }
          }
          end = best != std::string::npos ? best : mid;
        }
        auto [b, e] = trim(begin, end);
        ReferenceCandidate ref;
        ref.article_id = article.article_id;
        ref.sentence = text.substr(b, e - b);
        ref.span = {b, e};
        ref.match = {sentence.span.begin + matches[i].begin, sentence.span.begin + matches[i].end};
        ref.feature = feature;
        ref.segment_index = i;
        out.push_back(ref);
        begin = end;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    if (a.segment_index != b.segment_index) return a.segment_index < b.segment_index;
    return a.feature < b.feature;
  });
  return out;
}

TEST(FindReferences, EqualsBruteForceOnRandomArticles) {
  const std::vector<std::string> words = {
      "ALLBUS", "allbus", "PIAAC", "exit", "poll", "Exit", "Poll", "data", "were",
      "used", "2010", "1998", "(ALLBUS)", "z.B.", "Die", "Studie", "und", "the", "PIAAC-2012"};
  const std::vector<Feature> features = {Abbrev("ALLBUS"), Abbrev("PIAAC"), Phrase("Exit Poll"),
                                         Phrase("studie")};
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (int s = 1 + rng() % 5; s > 0; --s) {
      text += "The";
      for (int w = 1 + rng() % 12; w > 0; --w) text += " " + words[rng() % words.size()];
      text += rng() % 3 == 0 ? "! " : ". ";
    }
    ArticleText article = Article(text);
    auto refs = FindReferences(article, features);
    EXPECT_EQ(refs, BruteForce(article, features)) << text;
    for (const auto &ref : refs) {
      EXPECT_EQ(MatchFeature(ref.sentence, ref.feature).size(), 1u) << ref.sentence;
    }
    EXPECT_EQ(refs, FindReferences(article, features));
  }
}

}  // namespace
}  // namespace dataref
