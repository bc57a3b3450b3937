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

// JSON forms of pipeline values, shared by the CLI and the HTTP service.
// Keys are emitted in a fixed order so output is byte-stable.

#ifndef DATAREF_JSON_IO_H_
#define DATAREF_JSON_IO_H_

#include <istream>
#include <string>
#include <vector>

#include "dataref/detector.h"
#include "dataref/ranker.h"
#include "json.hpp"

namespace dataref {

using Json = nlohmann::ordered_json;

// Schema version carried by every document the service and CLI emit.
inline constexpr int kSchemaVersion = 1;

Json ToJson(const Feature &feature);
Json ToJson(const ReferenceCandidate &ref);
Json ToJson(const RankedMatch &match);

// Throw ParseError on missing or mistyped fields.
Feature FeatureFromJson(const Json &json);
ReferenceCandidate ReferenceFromJson(const Json &json);
RankedMatch RankedMatchFromJson(const Json &json);

// One JSON value per non-blank line. Throws ParseError with the line number.
std::vector<Json> ReadJsonLines(std::istream &in);

}  // namespace dataref

#endif  // DATAREF_JSON_IO_H_
