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

#include "dataref/json_io.h"

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

namespace {

template <typename T>
T Field(const Json &json, const char *key) {
  if (!json.is_object() || !json.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

Json SpanJson(MatchSpan span) { return Json::array({span.begin, span.end}); }

MatchSpan SpanFromJson(const Json &json, const char *key) {
  auto pair = Field<std::vector<size_t>>(json, key);
  if (pair.size() != 2 || pair[0] > pair[1]) {
    throw ParseError(std::string("field '") + key + "' is not a [begin, end] pair");
  }
  return {pair[0], pair[1]};
}

}  // namespace

Json ToJson(const Feature &feature) {
  Json json;
  json["text"] = feature.text;
  json["kind"] = std::string(KindName(feature.kind));
  return json;
}

Json ToJson(const ReferenceCandidate &ref) {
  Json json;
  json["article_id"] = ref.article_id;
  json["feature"] = ref.feature.text;
  json["kind"] = std::string(KindName(ref.feature.kind));
  json["sentence"] = ref.sentence;
  json["span"] = SpanJson(ref.span);
  json["match"] = SpanJson(ref.match);
  json["segment_index"] = ref.segment_index;
  return json;
}

Json ToJson(const RankedMatch &match) {
  Json json;
  json["rank"] = match.rank;
  json["doi"] = match.doi;
  json["title"] = match.title;
  json["score"] = match.score;
  json["year_match"] = match.year_match;
  return json;
}

Feature FeatureFromJson(const Json &json) {
  Feature feature;
  feature.text = Field<std::string>(json, "text");
  feature.kind = ParseKind(Field<std::string>(json, "kind"));
  return feature;
}

ReferenceCandidate ReferenceFromJson(const Json &json) {
  ReferenceCandidate ref;
  ref.article_id = Field<std::string>(json, "article_id");
  ref.feature.text = Field<std::string>(json, "feature");
  ref.feature.kind = ParseKind(Field<std::string>(json, "kind"));
  ref.sentence = Field<std::string>(json, "sentence");
  ref.span = SpanFromJson(json, "span");
  ref.match = SpanFromJson(json, "match");
  ref.segment_index = json.contains("segment_index")
                          ? Field<size_t>(json, "segment_index")
                          : 0;
  return ref;
}

RankedMatch RankedMatchFromJson(const Json &json) {
  RankedMatch match;
  match.doi = Field<std::string>(json, "doi");
  match.title = json.contains("title") ? Field<std::string>(json, "title") : "";
  match.score = json.contains("score") ? Field<double>(json, "score") : 0.0;
  match.rank = json.contains("rank") ? Field<size_t>(json, "rank") : 0;
  match.year_match =
      json.contains("year_match") ? Field<bool>(json, "year_match") : false;
  return match;
}

std::vector<Json> ReadJsonLines(std::istream &in) {
  std::vector<Json> out;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(e.what(), number);
    }
  }
  return out;
}

}  // namespace dataref
