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

// RDF and JSON export of article -> dataset links.
//
// IRI scheme:
//   article   https://doi.org/<doi> for a "doi:" PID, the URN itself for "urn:"
//   dataset   https://doi.org/<doi>
//   link      <article> cito:citesAsDataSource <dataset>
//   title     <dataset> dcterms:title "..."
//   status    <dataset> drt:linkStatus "confirmed" | "candidate"
// The article itself gets rdf:type fabio:Article, dcterms:identifier and,
// when known, dcterms:title and prism:publicationName.

#ifndef DATAREF_EXPORTER_H_
#define DATAREF_EXPORTER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataref/ranker.h"

namespace dataref {

namespace iri {
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kFabioArticle =
    "http://purl.org/spar/fabio/Article";
inline constexpr std::string_view kCitesAsDataSource =
    "http://purl.org/spar/cito/citesAsDataSource";
inline constexpr std::string_view kTitle = "http://purl.org/dc/terms/title";
inline constexpr std::string_view kIdentifier =
    "http://purl.org/dc/terms/identifier";
inline constexpr std::string_view kPublicationName =
    "http://prismstandard.org/namespaces/basic/2.0/publicationName";
inline constexpr std::string_view kLinkStatus =
    "https://w3id.org/dataref/terms#linkStatus";
inline constexpr std::string_view kDoiResolver = "https://doi.org/";
}  // namespace iri

struct ArticleMetadata {
  std::string article_id;
  std::string pid;  // "doi:10...." or "urn:..."
  std::optional<std::string> title;
  std::optional<std::string> journal;

  bool operator==(const ArticleMetadata &) const = default;
};

enum class LinkStatus { kConfirmed, kCandidate };
std::string_view StatusName(LinkStatus status);
LinkStatus ParseStatus(std::string_view name);

struct Link {
  std::string doi;
  std::string title;
  LinkStatus status = LinkStatus::kCandidate;
  std::string feature;
  size_t occurrence_count = 0;

  bool operator==(const Link &) const = default;
};

struct LinkSet {
  ArticleMetadata article;
  std::vector<Link> links;

  bool operator==(const LinkSet &) const = default;
};

// Throws PreconditionError for an empty article id, a PID that is not
// doi: or urn:, an empty DOI or a DOI listed twice.
void ValidateLinkSet(const LinkSet &linkset);

std::string ArticleIri(std::string_view pid);
std::string DatasetIri(std::string_view doi);

// Serialized N-Triples terms of one statement.
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const Triple &) const = default;
};

// Sorted statements; size is 3 * links + preamble.
std::vector<Triple> BuildTriples(const LinkSet &linkset);
size_t PreambleSize(const ArticleMetadata &article);

std::string ExportNTriples(const LinkSet &linkset);
std::string ExportTurtle(const LinkSet &linkset);
std::string ExportJson(const LinkSet &linkset);
// Throws ParseError on malformed input and PreconditionError on an invalid
// link set.
LinkSet ImportJson(std::string_view json);

// A curator's choice of dataset for a feature.
struct Selection {
  std::string doi;
  std::string title;
  std::string feature;
};

// Confirmed selections first, then per-feature candidates not already
// selected, each block ordered by DOI. A DOI suggested for several features
// keeps the feature with the highest count (ties: first feature).
LinkSet BuildLinkSet(const ArticleMetadata &article,
                     const FeatureGroups &candidates,
                     const std::vector<Selection> &confirmed);

}  // namespace dataref

#endif  // DATAREF_EXPORTER_H_
