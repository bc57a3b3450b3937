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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dataref/error.h"

namespace dataref {
namespace {

constexpr auto kAbbr = FeatureKind::kAbbreviation;
constexpr auto kPhrase = FeatureKind::kPhrase;

TEST(FMeasure, Examples) {
  EXPECT_NEAR(FMeasure(0.91, 0.77), 0.8342, 5e-4);
  EXPECT_DOUBLE_EQ(FMeasure(0.83, 0.83), 0.83);
  EXPECT_NEAR(FMeasure(0.76, 0.64), 0.6949, 5e-4);
  EXPECT_EQ(FMeasure(0, 0), 0);
  for (double p = 0.05; p <= 1; p += 0.05) {
    for (double r = 0.05; r <= 1; r += 0.05) {
      double f = FMeasure(p, r);
      EXPECT_LE(f, (p + r) / 2 + 1e-12);
      EXPECT_GE(f, std::min(p, r) - 1e-12);
    }
  }
}

TEST(MakeReport, Counts) {
  auto report = MakeReport(Phase::kDetection, 10, 1, 3);
  EXPECT_NEAR(report.precision, 10.0 / 11, 1e-12);
  EXPECT_NEAR(report.recall, 10.0 / 13, 1e-12);
  EXPECT_NEAR(report.f_measure, 0.8333, 1e-4);
  EXPECT_FALSE(report.precision_undefined);

  auto empty = MakeReport(Phase::kDetection, 0, 0, 4);
  EXPECT_TRUE(empty.precision_undefined);
  EXPECT_FALSE(empty.recall_undefined);
  EXPECT_EQ(empty.precision, 0);
  EXPECT_EQ(empty.recall, 0);
}

GoldStandard SmallGold() {
  GoldStandard gold;
  gold.AddRow("a1", "ALLBUS", kAbbr, {"10.1/allbus"});
  gold.AddRow("a1", "Exit Poll", kPhrase, {"10.1/exit", "10.1/exit2"});
  gold.AddRow("a2", "PIAAC", kAbbr, {"10.1/piaac"});
  gold.AddArticle("a3");
  return gold;
}

TEST(EvaluateDetection, Cases) {
  GoldStandard gold = SmallGold();
  DetectedFeatures perfect = gold.Features();
  auto r = EvaluateDetection(perfect, gold);
  EXPECT_EQ(r.tp, 3u);
  EXPECT_EQ(r.f_measure, 1);

  auto none = EvaluateDetection({}, gold);
  EXPECT_EQ(none.fn, 3u);
  EXPECT_TRUE(none.precision_undefined);
  EXPECT_EQ(none.recall, 0);

  DetectedFeatures mixed = {MakeFeatureRef("a1", "exit poll", kPhrase),
                            MakeFeatureRef("a3", "GGSS", kAbbr)};
  auto m = EvaluateDetection(mixed, gold);
  EXPECT_EQ(m.tp, 1u);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 2u);

  EXPECT_THROW(EvaluateDetection({MakeFeatureRef("zz", "X", kAbbr)}, gold), PreconditionError);
}

TEST(EvaluateMatching, HitRate) {
  GoldStandard gold;
  Suggestions suggestions;
  for (int i = 0; i < 10; ++i) {
    std::string id = "a" + std::to_string(i);
    gold.AddRow(id, "ALLBUS", kAbbr, {"10.1/x" + std::to_string(i)});
    suggestions[MakeFeatureRef(id, "ALLBUS", kAbbr)] = {
        "10.1/other", i < 8 ? "10.1/x" + std::to_string(i) : "10.1/miss"};
  }
  auto r = EvaluateMatching(suggestions, gold);
  EXPECT_EQ(r.tp, 8u);
  EXPECT_EQ(r.fp, 2u);
  EXPECT_EQ(r.fn, 2u);
  EXPECT_NEAR(r.precision, 0.8, 1e-12);
  EXPECT_NEAR(r.recall, 0.8, 1e-12);
}

TEST(EvaluateCombined, Cases) {
  GoldStandard gold = SmallGold();
  Suggestions good = {{MakeFeatureRef("a1", "ALLBUS", kAbbr), {"10.1/allbus"}},
                      {MakeFeatureRef("a1", "Exit Poll", kPhrase), {"10.1/exit2"}},
                      {MakeFeatureRef("a2", "PIAAC", kAbbr), {"10.1/piaac"}}};
  auto perfect = EvaluateCombined(gold.Features(), good, gold);
  EXPECT_EQ(perfect.f_measure, 1);

  Suggestions bad;
  for (auto &[key, dois] : good) bad[key] = {"10.1/wrong"};
  auto miss = EvaluateCombined(gold.Features(), bad, gold);
  EXPECT_EQ(miss.tp, 0u);
  EXPECT_EQ(miss.precision, 0);
  EXPECT_EQ(miss.recall, 0);

  // One detection FP, one missed feature, two matching hits.
  DetectedFeatures detected = {MakeFeatureRef("a1", "ALLBUS", kAbbr),
                               MakeFeatureRef("a2", "PIAAC", kAbbr),
                               MakeFeatureRef("a3", "GGSS", kAbbr)};
  auto mixed = EvaluateCombined(detected, good, gold);
  EXPECT_EQ(mixed.tp, 2u);
  EXPECT_EQ(mixed.fp, 1u);
  EXPECT_EQ(mixed.fn, 1u);
}

TEST(EvaluateMatching, FpEqualsFnOnRandomInputs) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    GoldStandard gold;
    Suggestions suggestions;
    for (int a = 0; a < 5; ++a) {
      std::string id = "a" + std::to_string(a);
      for (int f = rng() % 4; f > 0; --f) {
        std::string feature = "F" + std::to_string(rng() % 6);
        gold.AddRow(id, feature, kAbbr, {"d" + std::to_string(rng() % 5)});
        if (rng() % 3) {
          auto &list = suggestions[MakeFeatureRef(id, feature, kAbbr)];
          for (int k = rng() % 5; k > 0; --k) list.push_back("d" + std::to_string(rng() % 5));
        }
      }
    }
    auto r = EvaluateMatching(suggestions, gold);
    EXPECT_EQ(r.fp, r.fn);
    EXPECT_DOUBLE_EQ(r.precision, r.recall);
  }
}

TEST(EvaluateDetection, PermutationInvariant) {
  GoldStandard forward, backward;
  std::vector<std::tuple<std::string, std::string, std::string>> rows = {
      {"a1", "X", "d1"}, {"a2", "Y", "d2"}, {"a3", "Z", "d3"}, {"a2", "X", "d4"}};
  for (auto &[a, f, d] : rows) forward.AddRow(a, f, kAbbr, {d});
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    backward.AddRow(std::get<0>(*it), std::get<1>(*it), kAbbr, {std::get<2>(*it)});
  }
  DetectedFeatures detected = {MakeFeatureRef("a1", "X", kAbbr), MakeFeatureRef("a3", "Q", kAbbr)};
  auto a = EvaluateDetection(detected, forward);
  auto b = EvaluateDetection(detected, backward);
  EXPECT_EQ(a.tp, b.tp);
  EXPECT_EQ(a.fp, b.fp);
  EXPECT_EQ(a.fn, b.fn);
}

TEST(ReadGoldStandard, ParsesCsv) {
  std::istringstream in(
      "article_id,feature,kind,acceptable_dois\n"
      "a1,ALLBUS,abbreviation,10.1/a;10.1/b\n"
      "a1,\"Survey of Hunting, Fishing\",phrase,10.1/c\n"
      "a2,,,\n");
  GoldStandard gold = ReadGoldStandard(in);
  EXPECT_EQ(gold.articles(), (std::set<std::string>{"a1", "a2"}));
  ASSERT_EQ(gold.rows().size(), 2u);
  EXPECT_EQ(gold.rows()[0].acceptable_dois, (std::set<std::string>{"10.1/a", "10.1/b"}));
  EXPECT_EQ(gold.rows()[1].key.feature, "survey of hunting, fishing");

  std::istringstream bad("article_id,feature,kind,acceptable_dois\na1,X,abbreviation,\n");
  EXPECT_ANY_THROW(ReadGoldStandard(bad));
  std::istringstream header("id,feature\n");
  EXPECT_ANY_THROW(ReadGoldStandard(header));
}

TEST(GoldStandard, EmptyDoisThrow) {
  GoldStandard gold;
  EXPECT_THROW(gold.AddRow("a", "X", kAbbr, {}), PreconditionError);
}

TEST(FormatReports, ContainsPhases) {
  std::string table = FormatReports({MakeReport(Phase::kDetection, 1, 0, 0),
                                     MakeReport(Phase::kMatching, 0, 0, 0)});
  EXPECT_NE(table.find("detection"), std::string::npos);
  EXPECT_NE(table.find("matching"), std::string::npos);
  EXPECT_NE(table.find('*'), std::string::npos);
}

}  // namespace
}  // namespace dataref
