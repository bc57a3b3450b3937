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

#include "dataref/exporter.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>

#include "dataref/error.h"
#include "dataref/json_io.h"

namespace dataref {

namespace {

bool StartsWithNoCase(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != prefix[i]) return false;
  }
  return true;
}

// Percent-encodes bytes that may not appear in an N-Triples IRIREF. With
// `path` set, '%', '#' and '?' are encoded as well so a DOI stays one path.
std::string EscapeIri(std::string_view text, bool path) {
  static constexpr std::string_view kForbidden = "<>\"{}|^`\\";
  std::string out;
  for (unsigned char c : text) {
    bool encode = c <= 0x20 || c == 0x7F ||
                  kForbidden.find(static_cast<char>(c)) != std::string_view::npos ||
                  (path && (c == '%' || c == '#' || c == '?'));
    if (encode) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string IriTerm(std::string_view iri) {
  return "<" + std::string(iri) + ">";
}

std::string LiteralTerm(std::string_view text) {
  std::string out = "\"";
  for (unsigned char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string_view StripDoiPrefix(std::string_view doi) {
  for (std::string_view prefix :
       {"https://doi.org/", "http://doi.org/", "doi:"}) {
    if (StartsWithNoCase(doi, prefix)) return doi.substr(prefix.size());
  }
  return doi;
}

}  // namespace

std::string_view StatusName(LinkStatus status) {
  return status == LinkStatus::kConfirmed ? "confirmed" : "candidate";
}

LinkStatus ParseStatus(std::string_view name) {
  if (name == "confirmed") return LinkStatus::kConfirmed;
  if (name == "candidate") return LinkStatus::kCandidate;
  throw ParseError("unknown link status '" + std::string(name) + "'");
}

void ValidateLinkSet(const LinkSet &linkset) {
  const auto &article = linkset.article;
  if (article.article_id.empty()) throw PreconditionError("empty article id");
  if (!StartsWithNoCase(article.pid, "doi:") &&
      !StartsWithNoCase(article.pid, "urn:")) {
    throw PreconditionError("PID '" + article.pid +
                            "' must use the doi: or urn: scheme");
  }
  if (article.pid.size() <= 4) throw PreconditionError("PID has no identifier");
  std::set<std::string> seen;
  for (const auto &link : linkset.links) {
    if (StripDoiPrefix(link.doi).empty()) throw PreconditionError("link without DOI");
    if (!seen.insert(std::string(StripDoiPrefix(link.doi))).second) {
      throw PreconditionError("DOI " + link.doi + " is linked twice");
    }
  }
}

std::string ArticleIri(std::string_view pid) {
  if (StartsWithNoCase(pid, "doi:")) {
    return std::string(iri::kDoiResolver) + EscapeIri(pid.substr(4), true);
  }
  if (StartsWithNoCase(pid, "urn:")) return EscapeIri(pid, false);
  throw PreconditionError("PID '" + std::string(pid) +
                          "' must use the doi: or urn: scheme");
}

std::string DatasetIri(std::string_view doi) {
  return std::string(iri::kDoiResolver) + EscapeIri(StripDoiPrefix(doi), true);
}

size_t PreambleSize(const ArticleMetadata &article) {
  return 2 + article.title.has_value() + article.journal.has_value();
}

std::vector<Triple> BuildTriples(const LinkSet &linkset) {
  ValidateLinkSet(linkset);
  const auto &article = linkset.article;
  std::string subject = IriTerm(ArticleIri(article.pid));
  std::vector<Triple> triples;
  triples.push_back({subject, IriTerm(iri::kRdfType), IriTerm(iri::kFabioArticle)});
  triples.push_back({subject, IriTerm(iri::kIdentifier), LiteralTerm(article.pid)});
  if (article.title) {
    triples.push_back({subject, IriTerm(iri::kTitle), LiteralTerm(*article.title)});
  }
  if (article.journal) {
    triples.push_back(
        {subject, IriTerm(iri::kPublicationName), LiteralTerm(*article.journal)});
  }
  for (const auto &link : linkset.links) {
    std::string dataset = IriTerm(DatasetIri(link.doi));
    triples.push_back({subject, IriTerm(iri::kCitesAsDataSource), dataset});
    triples.push_back({dataset, IriTerm(iri::kTitle), LiteralTerm(link.title)});
    triples.push_back({dataset, IriTerm(iri::kLinkStatus),
                       LiteralTerm(StatusName(link.status))});
  }
  std::sort(triples.begin(), triples.end());
  return triples;
}

std::string ExportNTriples(const LinkSet &linkset) {
  std::string out;
  for (const auto &t : BuildTriples(linkset)) {
    out += t.subject + " " + t.predicate + " " + t.object + " .\n";
  }
  return out;
}

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kPrefixes = {{
    {"cito", "http://purl.org/spar/cito/"},
    {"dcterms", "http://purl.org/dc/terms/"},
    {"drt", "https://w3id.org/dataref/terms#"},
    {"fabio", "http://purl.org/spar/fabio/"},
    {"prism", "http://prismstandard.org/namespaces/basic/2.0/"},
}};

// Prefixed name for a vocabulary IRI term, or the term unchanged.
std::string Compact(const std::string &term) {
  if (term == IriTerm(iri::kRdfType)) return "a";
  if (term.size() < 2 || term.front() != '<') return term;
  std::string_view iri(term);
  iri = iri.substr(1, iri.size() - 2);
  for (const auto &[prefix, ns] : kPrefixes) {
    if (!iri.starts_with(ns)) continue;
    std::string_view local = iri.substr(ns.size());
    bool simple = !local.empty() && std::all_of(local.begin(), local.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c));
    });
    if (simple) return std::string(prefix) + ":" + std::string(local);
  }
  return term;
}

}  // namespace

std::string ExportTurtle(const LinkSet &linkset) {
  auto triples = BuildTriples(linkset);
  std::string out;
  for (const auto &[prefix, ns] : kPrefixes) {
    out += "@prefix " + std::string(prefix) + ": <" + std::string(ns) + "> .\n";
  }
  for (size_t i = 0; i < triples.size(); ++i) {
    const auto &t = triples[i];
    bool first = i == 0 || triples[i - 1].subject != t.subject;
    bool last = i + 1 == triples.size() || triples[i + 1].subject != t.subject;
    if (first) {
      out += "\n" + t.subject + " ";
    } else {
      out += "    ";
    }
    out += Compact(t.predicate) + " " + Compact(t.object);
    out += last ? " .\n" : " ;\n";
  }
  return out;
}

std::string ExportJson(const LinkSet &linkset) {
  ValidateLinkSet(linkset);
  Json json;
  json["schema_version"] = kSchemaVersion;
  Json article;
  article["article_id"] = linkset.article.article_id;
  article["pid"] = linkset.article.pid;
  if (linkset.article.title) article["title"] = *linkset.article.title;
  if (linkset.article.journal) article["journal"] = *linkset.article.journal;
  json["article"] = std::move(article);
  Json links = Json::array();
  for (const auto &link : linkset.links) {
    Json entry;
    entry["doi"] = link.doi;
    entry["title"] = link.title;
    entry["status"] = std::string(StatusName(link.status));
    entry["feature"] = link.feature;
    entry["count"] = link.occurrence_count;
    links.push_back(std::move(entry));
  }
  json["links"] = std::move(links);
  return json.dump(2) + "\n";
}

LinkSet ImportJson(std::string_view text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(e.what());
  }
  LinkSet linkset;
  try {
    if (json.contains("schema_version") && json.at("schema_version") != kSchemaVersion) {
      throw ParseError("unsupported schema_version " +
                       json.at("schema_version").dump());
    }
    const Json &article = json.at("article");
    linkset.article.article_id = article.at("article_id").get<std::string>();
    linkset.article.pid = article.at("pid").get<std::string>();
    if (article.contains("title") && !article.at("title").is_null()) {
      linkset.article.title = article.at("title").get<std::string>();
    }
    if (article.contains("journal") && !article.at("journal").is_null()) {
      linkset.article.journal = article.at("journal").get<std::string>();
    }
    for (const Json &entry : json.at("links")) {
      Link link;
      link.doi = entry.at("doi").get<std::string>();
      link.title = entry.at("title").get<std::string>();
      link.status = ParseStatus(entry.at("status").get<std::string>());
      link.feature = entry.value("feature", "");
      link.occurrence_count = entry.value("count", size_t{0});
      linkset.links.push_back(std::move(link));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed link set: ") + e.what());
  }
  ValidateLinkSet(linkset);
  return linkset;
}

LinkSet BuildLinkSet(const ArticleMetadata &article,
                     const FeatureGroups &candidates,
                     const std::vector<Selection> &confirmed) {
  struct Best {
    std::string title;
    std::string feature;
    size_t count = 0;
  };
  std::map<std::string, Best> best;
  for (const auto &[key, matches] : candidates) {
    for (const auto &match : matches) {
      size_t count = static_cast<size_t>(match.score);
      auto [it, inserted] = best.try_emplace(match.doi, Best{match.title, key.text, count});
      if (!inserted && count > it->second.count) it->second = {match.title, key.text, count};
    }
  }

  LinkSet linkset;
  linkset.article = article;
  std::map<std::string, Link> chosen;
  for (const auto &selection : confirmed) {
    Link link{selection.doi, selection.title, LinkStatus::kConfirmed,
              selection.feature, 0};
    if (auto it = best.find(selection.doi); it != best.end()) {
      link.occurrence_count = it->second.count;
      if (link.title.empty()) link.title = it->second.title;
    }
    chosen.emplace(selection.doi, std::move(link));
  }
  for (auto &[doi, link] : chosen) linkset.links.push_back(link);
  for (const auto &[doi, entry] : best) {
    if (chosen.contains(doi)) continue;
    linkset.links.push_back(
        {doi, entry.title, LinkStatus::kCandidate, entry.feature, entry.count});
  }
  return linkset;
}

}  // namespace dataref
