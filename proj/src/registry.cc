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

#include "dataref/registry.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "dataref/error.h"
#include "dataref/text.h"

namespace dataref {

using json = nlohmann::ordered_json;

std::string_view ResourceTypeName(ResourceType type) {
  switch (type) {
    case ResourceType::kDataset: return "dataset";
    case ResourceType::kText: return "text";
    case ResourceType::kCollection: return "collection";
    case ResourceType::kVideo: return "video";
    case ResourceType::kInteractive: return "interactive";
  }
  return "dataset";
}

std::optional<ResourceType> ParseResourceType(std::string_view name) {
  for (auto type : {ResourceType::kDataset, ResourceType::kText,
                    ResourceType::kCollection, ResourceType::kVideo,
                    ResourceType::kInteractive}) {
    if (ResourceTypeName(type) == name) return type;
  }
  return std::nullopt;
}

std::optional<int> YearFromTitle(std::string_view title) {
  auto years = ExtractYears(title);
  if (years.empty()) return std::nullopt;
  return years.front();
}

void ValidateRecord(const DatasetRecord &record) {
  if (record.doi.empty()) throw ParseError("record has an empty doi");
  if (Trim(record.title).empty()) {
    throw ParseError("record " + record.doi + " has an empty title");
  }
}

RegistryIndex::RegistryIndex(std::vector<DatasetRecord> records) {
  std::map<std::string, DatasetRecord> by_doi;
  for (auto &record : records) {
    auto [it, inserted] = by_doi.insert_or_assign(record.doi, std::move(record));
    if (!inserted) ++duplicates_;
  }
  records_.reserve(by_doi.size());
  for (auto &[doi, record] : by_doi) records_.push_back(std::move(record));

  for (const auto &record : records_) {
    for (auto token : IndexTokens(record.title)) {
      token_index_[std::string(token)].insert(record.doi);
    }
  }
  for (const auto &[token, postings] : token_index_) {
    folded_tokens_[FoldCase(token)].insert(token);
  }
}

const DatasetRecord *RegistryIndex::Find(std::string_view doi) const {
  auto it = std::lower_bound(
      records_.begin(), records_.end(), doi,
      [](const DatasetRecord &r, std::string_view d) { return r.doi < d; });
  if (it == records_.end() || it->doi != doi) return nullptr;
  return &*it;
}

std::vector<DatasetRecord> RegistryIndex::TitlesContaining(
    const Feature &feature) const {
  std::vector<DatasetRecord> out;
  if (feature.text.empty()) return out;

  // Any occurrence of the feature lies inside the title tokens that contain
  // the feature's first index token, so those postings bound the candidates.
  auto pieces = IndexTokens(feature.text);
  std::set<std::string> candidates;
  if (pieces.empty()) {
    for (const auto &record : records_) candidates.insert(record.doi);
  } else if (feature.kind == FeatureKind::kAbbreviation) {
    std::string_view piece = pieces.front();
    for (const auto &[token, postings] : token_index_) {
      if (token.find(piece) != std::string::npos) {
        candidates.insert(postings.begin(), postings.end());
      }
    }
  } else {
    std::string piece = FoldCase(pieces.front());
    for (const auto &[folded, originals] : folded_tokens_) {
      if (folded.find(piece) == std::string::npos) continue;
      for (const auto &token : originals) {
        const auto &postings = token_index_.find(token)->second;
        candidates.insert(postings.begin(), postings.end());
      }
    }
  }

  for (const auto &doi : candidates) {
    const DatasetRecord *record = Find(doi);
    if (!MatchFeature(record->title, feature).empty()) out.push_back(*record);
  }
  return out;
}

std::string RecordToJsonLine(const DatasetRecord &record) {
  json obj;
  obj["doi"] = record.doi;
  obj["title"] = record.title;
  obj["year"] = record.year ? json(*record.year) : json(nullptr);
  obj["language"] = record.language ? json(*record.language) : json(nullptr);
  obj["publisher"] =
      record.publisher ? json(*record.publisher) : json(nullptr);
  obj["resource_type"] = std::string(ResourceTypeName(record.resource_type));
  return obj.dump();
}

namespace {

std::optional<std::string> OptionalString(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

DatasetRecord RecordFromJsonLine(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError("record must be a JSON object");

  DatasetRecord record;
  auto doi = OptionalString(obj, "doi");
  auto title = OptionalString(obj, "title");
  if (!doi) throw ParseError("missing doi");
  if (!title) throw ParseError("missing title");
  record.doi = *doi;
  record.title = *title;

  if (auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw ParseError("year must be an integer");
    record.year = it->get<int>();
  } else {
    record.year = YearFromTitle(record.title);
  }
  record.language = OptionalString(obj, "language");
  record.publisher = OptionalString(obj, "publisher");
  if (auto type = OptionalString(obj, "resource_type")) {
    auto parsed = ParseResourceType(*type);
    if (!parsed) throw ParseError("unknown resource_type '" + *type + "'");
    record.resource_type = *parsed;
  }
  ValidateRecord(record);
  return record;
}

RegistryIndex ReadSnapshot(std::istream &in) {
  std::vector<DatasetRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    try {
      records.push_back(RecordFromJsonLine(line));
    } catch (const ParseError &e) {
      throw ParseError(e.what(), line_number);
    }
  }
  return RegistryIndex(std::move(records));
}

RegistryIndex LoadSnapshot(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open snapshot " + path);
  return ReadSnapshot(in);
}

void WriteSnapshot(std::ostream &out,
                   const std::vector<DatasetRecord> &records) {
  for (const auto &record : records) out << RecordToJsonLine(record) << '\n';
}

void SaveSnapshot(const std::string &path,
                  const std::vector<DatasetRecord> &records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write snapshot " + path);
  WriteSnapshot(out, records);
}

}  // namespace dataref
