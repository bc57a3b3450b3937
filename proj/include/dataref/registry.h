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

#ifndef DATAREF_REGISTRY_H_
#define DATAREF_REGISTRY_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dataref/feature.h"

namespace dataref {

enum class ResourceType { kDataset, kText, kCollection, kVideo, kInteractive };

std::string_view ResourceTypeName(ResourceType type);
std::optional<ResourceType> ParseResourceType(std::string_view name);

// One registry entry.
struct DatasetRecord {
  std::string doi;
  std::string title;
  std::optional<int> year;
  std::optional<std::string> language;
  std::optional<std::string> publisher;
  ResourceType resource_type = ResourceType::kDataset;

  bool operator==(const DatasetRecord &) const = default;
};

// First year in 1900..2099 mentioned in a title, used when the metadata
// carries no explicit date.
std::optional<int> YearFromTitle(std::string_view title);

// Throws ParseError if the doi is empty or the title is blank.
void ValidateRecord(const DatasetRecord &record);

// Immutable index over a set of records, keyed by DOI. Safe for concurrent
// reads.
class RegistryIndex {
 public:
  RegistryIndex() = default;
  // Duplicate DOIs: the last record wins and is counted in duplicates().
  explicit RegistryIndex(std::vector<DatasetRecord> records);

  // Records ordered by DOI.
  const std::vector<DatasetRecord> &records() const { return records_; }
  size_t size() const { return records_.size(); }
  size_t duplicates() const { return duplicates_; }

  const DatasetRecord *Find(std::string_view doi) const;

  // Normalized title token -> DOIs of the records whose title has it.
  const std::map<std::string, std::set<std::string>, std::less<>> &
  title_token_index() const {
    return token_index_;
  }

  // Records whose title contains `feature` under MatchFeature rules, in DOI
  // order.
  std::vector<DatasetRecord> TitlesContaining(const Feature &feature) const;

 private:
  std::vector<DatasetRecord> records_;
  std::map<std::string, std::set<std::string>, std::less<>> token_index_;
  // Case-folded token -> original tokens, for phrase lookups.
  std::map<std::string, std::set<std::string>, std::less<>> folded_tokens_;
  size_t duplicates_ = 0;
};

inline std::vector<DatasetRecord> TitlesContaining(const RegistryIndex &index,
                                                   const Feature &feature) {
  return index.TitlesContaining(feature);
}

// Snapshot files hold one JSON object per line with the fields doi, title,
// year, language, publisher and resource_type. Blank lines are ignored.
RegistryIndex ReadSnapshot(std::istream &in);
RegistryIndex LoadSnapshot(const std::string &path);
void WriteSnapshot(std::ostream &out, const std::vector<DatasetRecord> &records);
void SaveSnapshot(const std::string &path,
                  const std::vector<DatasetRecord> &records);

std::string RecordToJsonLine(const DatasetRecord &record);
// Throws ParseError (without a line number) on malformed input.
DatasetRecord RecordFromJsonLine(std::string_view line);

}  // namespace dataref

#endif  // DATAREF_REGISTRY_H_
