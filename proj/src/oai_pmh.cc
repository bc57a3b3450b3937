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

#include "dataref/oai_pmh.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <httplib.h>

#include "dataref/text.h"

namespace dataref {

namespace pt = boost::property_tree;

namespace {

// Location of one element in a document, found by local name regardless of
// namespace prefix.
struct ElementSpan {
  size_t begin = std::string_view::npos;  // '<' of the start tag
  size_t content_begin = 0;
  size_t content_end = 0;
  size_t end = 0;  // one past the end tag
  std::string_view start_tag;  // "<prefix:name attr=...>"
  bool empty() const { return begin == std::string_view::npos; }
};

std::string_view LocalName(std::string_view qualified) {
  auto colon = qualified.find(':');
  return colon == std::string_view::npos ? qualified
                                         : qualified.substr(colon + 1);
}

ElementSpan FindElement(std::string_view xml, std::string_view local,
                        size_t from = 0) {
  ElementSpan span;
  size_t pos = from;
  while ((pos = xml.find('<', pos)) != std::string_view::npos) {
    size_t name_begin = pos + 1;
    if (name_begin >= xml.size() || xml[name_begin] == '/' ||
        xml[name_begin] == '?' || xml[name_begin] == '!') {
      ++pos;
      continue;
    }
    size_t name_end = name_begin;
    while (name_end < xml.size() &&
           !std::isspace(static_cast<unsigned char>(xml[name_end])) &&
           xml[name_end] != '>' && xml[name_end] != '/') {
      ++name_end;
    }
    std::string_view qualified = xml.substr(name_begin, name_end - name_begin);
    if (LocalName(qualified) != local) {
      pos = name_end;
      continue;
    }
    size_t tag_end = xml.find('>', name_end);
    if (tag_end == std::string_view::npos) return span;
    span.begin = pos;
    span.start_tag = xml.substr(pos, tag_end + 1 - pos);
    if (xml[tag_end - 1] == '/') {
      span.content_begin = span.content_end = tag_end + 1;
      span.end = tag_end + 1;
      return span;
    }
    std::string close = "</" + std::string(qualified) + ">";
    size_t close_pos = xml.find(close, tag_end + 1);
    if (close_pos == std::string_view::npos) {
      span.begin = std::string_view::npos;
      return span;
    }
    span.content_begin = tag_end + 1;
    span.content_end = close_pos;
    span.end = close_pos + close.size();
    return span;
  }
  return span;
}

std::string DecodeEntities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    size_t semi = text.find(';', i);
    if (semi == std::string_view::npos) {
      out.push_back('&');
      continue;
    }
    std::string_view entity = text.substr(i + 1, semi - i - 1);
    if (entity == "amp") out.push_back('&');
    else if (entity == "lt") out.push_back('<');
    else if (entity == "gt") out.push_back('>');
    else if (entity == "quot") out.push_back('"');
    else if (entity == "apos") out.push_back('\'');
    else if (!entity.empty() && entity[0] == '#') {
      unsigned long code = 0;
      try {
        code = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')
                   ? std::stoul(std::string(entity.substr(2)), nullptr, 16)
                   : std::stoul(std::string(entity.substr(1)));
      } catch (const std::exception &) {
        out.append(text.substr(i, semi - i + 1));
        i = semi;
        continue;
      }
      AppendUtf8(out, static_cast<char32_t>(code));
    } else {
      out.append(text.substr(i, semi - i + 1));
    }
    i = semi;
  }
  return out;
}

std::string AttributeValue(std::string_view start_tag, std::string_view name) {
  std::string needle = std::string(name) + "=";
  size_t pos = 0;
  while ((pos = start_tag.find(needle, pos)) != std::string_view::npos) {
    bool boundary = pos > 0 && std::isspace(static_cast<unsigned char>(
                                   start_tag[pos - 1]));
    size_t quote = pos + needle.size();
    if (boundary && quote < start_tag.size() &&
        (start_tag[quote] == '"' || start_tag[quote] == '\'')) {
      size_t close = start_tag.find(start_tag[quote], quote + 1);
      if (close != std::string_view::npos) {
        return DecodeEntities(start_tag.substr(quote + 1, close - quote - 1));
      }
    }
    pos += needle.size();
  }
  return {};
}

// Checks the envelope and raises protocol errors; returns the resumption
// token if the response carries a non-empty one.
std::optional<std::string> CheckEnvelope(std::string_view xml,
                                         std::string *response_date) {
  ElementSpan root = FindElement(xml, "OAI-PMH");
  if (root.empty()) {
    throw HarvestError(HarvestError::Kind::kNetwork,
                       "truncated or malformed OAI-PMH response");
  }
  ElementSpan error = FindElement(xml, "error");
  if (!error.empty()) {
    std::string code = AttributeValue(error.start_tag, "code");
    std::string message = DecodeEntities(Trim(
        xml.substr(error.content_begin, error.content_end - error.content_begin)));
    throw HarvestError(HarvestError::Kind::kProtocol,
                       "OAI-PMH error " + code +
                           (message.empty() ? "" : ": " + message),
                       code);
  }
  if (response_date) {
    ElementSpan date = FindElement(xml, "responseDate");
    if (!date.empty()) {
      *response_date = std::string(Trim(xml.substr(
          date.content_begin, date.content_end - date.content_begin)));
    }
  }
  ElementSpan token = FindElement(xml, "resumptionToken");
  if (token.empty()) return std::nullopt;
  std::string value = DecodeEntities(Trim(
      xml.substr(token.content_begin, token.content_end - token.content_begin)));
  if (value.empty()) return std::nullopt;
  return value;
}

// Children of `node` with the given local name, in document order.
std::vector<std::string> ChildValues(const pt::ptree &node,
                                     std::string_view local) {
  std::vector<std::string> values;
  for (const auto &[key, child] : node) {
    if (LocalName(key) == local) {
      values.push_back(std::string(Trim(child.data())));
    }
  }
  return values;
}

const pt::ptree *Child(const pt::ptree &node, std::string_view local) {
  for (const auto &[key, child] : node) {
    if (LocalName(key) == local) return &child;
  }
  return nullptr;
}

std::optional<std::string> NormalizeDoi(std::string_view value) {
  value = Trim(value);
  for (std::string_view prefix :
       {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
        "http://dx.doi.org/", "doi:", "DOI:"}) {
    if (value.substr(0, prefix.size()) == prefix) {
      value.remove_prefix(prefix.size());
      break;
    }
  }
  if (value.size() > 3 && value.substr(0, 3) == "10." &&
      value.find('/') != std::string_view::npos) {
    return std::string(value);
  }
  return std::nullopt;
}

std::optional<ResourceType> MapDcType(std::string_view value) {
  std::string lower = FoldCase(value);
  if (lower.find("dataset") != std::string::npos) return ResourceType::kDataset;
  if (lower.find("collection") != std::string::npos) {
    return ResourceType::kCollection;
  }
  if (lower.find("video") != std::string::npos ||
      lower.find("movingimage") != std::string::npos ||
      lower.find("audiovisual") != std::string::npos) {
    return ResourceType::kVideo;
  }
  if (lower.find("interactive") != std::string::npos) {
    return ResourceType::kInteractive;
  }
  if (lower.find("text") != std::string::npos) return ResourceType::kText;
  return std::nullopt;
}

enum class RecordOutcome { kRecord, kError, kFiltered, kDeleted };

RecordOutcome ParseRecord(std::string_view chunk, DatasetRecord *out) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(chunk)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error &) {
    return RecordOutcome::kError;
  }
  if (tree.empty()) return RecordOutcome::kError;
  const pt::ptree &record = tree.front().second;

  const pt::ptree *header = Child(record, "header");
  if (header) {
    if (auto status = header->get_optional<std::string>("<xmlattr>.status");
        status && *status == "deleted") {
      return RecordOutcome::kDeleted;
    }
  }
  const pt::ptree *metadata = Child(record, "metadata");
  if (!metadata || metadata->empty()) return RecordOutcome::kError;
  const pt::ptree *dc = nullptr;
  for (const auto &[key, child] : *metadata) {
    if (key != "<xmlattr>" && key != "<xmlcomment>") {
      dc = &child;
      break;
    }
  }
  if (!dc) return RecordOutcome::kError;

  DatasetRecord result;
  bool has_type = false, is_dataset = false;
  std::optional<ResourceType> first_type;
  for (const auto &type : ChildValues(*dc, "type")) {
    has_type = true;
    auto mapped = MapDcType(type);
    if (mapped && !first_type) first_type = mapped;
    if (mapped == ResourceType::kDataset) is_dataset = true;
  }
  if (has_type && !is_dataset) return RecordOutcome::kFiltered;

  for (const auto &id : ChildValues(*dc, "identifier")) {
    if (auto doi = NormalizeDoi(id)) {
      result.doi = *doi;
      break;
    }
  }
  for (const auto &title : ChildValues(*dc, "title")) {
    if (!title.empty()) {
      result.title = title;
      break;
    }
  }
  for (const auto &date : ChildValues(*dc, "date")) {
    auto years = ExtractYears(date);
    if (!years.empty()) {
      result.year = years.front();
      break;
    }
  }
  if (!result.year) result.year = YearFromTitle(result.title);
  if (auto values = ChildValues(*dc, "language"); !values.empty()) {
    result.language = values.front();
  }
  if (auto values = ChildValues(*dc, "publisher"); !values.empty()) {
    result.publisher = values.front();
  }
  result.resource_type = ResourceType::kDataset;

  if (result.doi.empty() || Trim(result.title).empty()) {
    return RecordOutcome::kError;
  }
  *out = std::move(result);
  return RecordOutcome::kRecord;
}

std::string BaseUrl(std::string_view endpoint) {
  std::string url(endpoint);
  if (!url.empty() && url.back() == '?') url.pop_back();
  return url;
}

std::string ListUrl(std::string_view verb, std::string_view endpoint,
                    const std::optional<std::string> &set_spec,
                    const std::optional<std::string> &resume_token) {
  std::string url = BaseUrl(endpoint);
  url += url.find('?') == std::string::npos ? '?' : '&';
  url += "verb=";
  url += verb;
  if (resume_token) {
    url += "&resumptionToken=" + UrlEncode(*resume_token);
  } else {
    url += "&metadataPrefix=oai_dc";
    if (set_spec) url += "&set=" + UrlEncode(*set_spec);
  }
  return url;
}

std::string UrlDecode(std::string_view value) {
  std::string out;
  for (size_t i = 0; i < value.size(); ++i) {
    if (value[i] == '%' && i + 2 < value.size()) {
      out.push_back(static_cast<char>(
          std::stoi(std::string(value.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else if (value[i] == '+') {
      out.push_back(' ');
    } else {
      out.push_back(value[i]);
    }
  }
  return out;
}

std::optional<std::string> QueryParam(std::string_view url,
                                      std::string_view name) {
  size_t q = url.find('?');
  if (q == std::string_view::npos) return std::nullopt;
  std::string_view query = url.substr(q + 1);
  while (!query.empty()) {
    size_t amp = query.find('&');
    std::string_view pair = query.substr(0, amp);
    size_t eq = pair.find('=');
    if (pair.substr(0, eq) == name) {
      return eq == std::string_view::npos ? std::string()
                                          : UrlDecode(pair.substr(eq + 1));
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return std::nullopt;
}

}  // namespace

std::string UrlEncode(std::string_view value) {
  static const char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string ListRecordsUrl(std::string_view endpoint,
                           const std::optional<std::string> &set_spec,
                           const std::optional<std::string> &resume_token) {
  return ListUrl("ListRecords", endpoint, set_spec, resume_token);
}

std::string ListIdentifiersUrl(
    std::string_view endpoint, const std::optional<std::string> &set_spec,
    const std::optional<std::string> &resume_token) {
  return ListUrl("ListIdentifiers", endpoint, set_spec, resume_token);
}

HarvestPage ParseListRecords(std::string_view xml) {
  HarvestPage page;
  page.resumption_token = CheckEnvelope(xml, &page.response_date);
  ElementSpan list = FindElement(xml, "ListRecords");
  if (list.empty()) {
    throw HarvestError(HarvestError::Kind::kNetwork,
                       "response has no ListRecords element");
  }
  size_t pos = list.content_begin;
  while (true) {
    ElementSpan record = FindElement(xml, "record", pos);
    if (record.empty() || record.begin >= list.content_end) break;
    DatasetRecord parsed;
    switch (ParseRecord(xml.substr(record.begin, record.end - record.begin),
                        &parsed)) {
      case RecordOutcome::kRecord:
        page.records.push_back(std::move(parsed));
        break;
      case RecordOutcome::kError: ++page.record_errors; break;
      case RecordOutcome::kFiltered: ++page.filtered; break;
      case RecordOutcome::kDeleted: ++page.deleted; break;
    }
    pos = record.end;
  }
  return page;
}

IdentifierPage ParseListIdentifiers(std::string_view xml) {
  IdentifierPage page;
  page.resumption_token = CheckEnvelope(xml, nullptr);
  size_t pos = 0;
  while (true) {
    ElementSpan header = FindElement(xml, "header", pos);
    if (header.empty()) break;
    std::string_view body = xml.substr(
        header.content_begin, header.content_end - header.content_begin);
    ElementSpan id = FindElement(body, "identifier");
    if (!id.empty() &&
        AttributeValue(header.start_tag, "status") != "deleted") {
      page.identifiers.push_back(DecodeEntities(Trim(
          body.substr(id.content_begin, id.content_end - id.content_begin))));
    }
    pos = header.end;
  }
  return page;
}

std::string HttpTransport::Get(const std::string &url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw HarvestError(HarvestError::Kind::kNetwork, "bad URL " + url);
  }
  size_t path_begin = url.find('/', scheme_end + 3);
  std::string origin = url.substr(0, path_begin);
  std::string path =
      path_begin == std::string::npos ? "/" : url.substr(path_begin);
  httplib::Client client(origin);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  client.set_follow_location(true);
  auto result = client.Get(path);
  if (!result) {
    throw HarvestError(HarvestError::Kind::kNetwork,
                       "request to " + url + " failed: " +
                           httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw HarvestError(HarvestError::Kind::kNetwork,
                       "request to " + url + " returned HTTP " +
                           std::to_string(result->status));
  }
  return result->body;
}

std::string DirectoryTransport::Get(const std::string &url) {
  std::string verb = QueryParam(url, "verb").value_or("ListRecords");
  std::string name = verb;
  if (auto token = QueryParam(url, "resumptionToken")) {
    for (char &c : *token) {
      if (c == '/' || c == '\\') c = '_';
    }
    name += "-" + *token;
  }
  std::string path = dir_ + "/" + name + ".xml";
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw HarvestError(HarvestError::Kind::kNetwork, "cannot read " + path);
  }
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::unique_ptr<Transport> MakeTransport(std::string_view endpoint) {
  constexpr std::string_view kFile = "file://";
  if (endpoint.substr(0, kFile.size()) == kFile) {
    std::string dir(endpoint.substr(kFile.size()));
    if (auto q = dir.find('?'); q != std::string::npos) dir.resize(q);
    return std::make_unique<DirectoryTransport>(dir);
  }
  return std::make_unique<HttpTransport>();
}

Harvester::Harvester(Transport &transport, std::string endpoint,
                     std::optional<std::string> set_spec,
                     std::optional<std::string> resume_token)
    : transport_(transport),
      endpoint_(std::move(endpoint)),
      set_spec_(std::move(set_spec)),
      token_(std::move(resume_token)) {}

std::optional<HarvestPage> Harvester::NextPage() {
  if (done_) return std::nullopt;
  std::string url = ListRecordsUrl(endpoint_, set_spec_, token_);
  HarvestPage page;
  try {
    page = ParseListRecords(transport_.Get(url));
  } catch (const HarvestError &e) {
    throw HarvestError(e.kind(), e.what(), e.code(), token_);
  }
  token_ = page.resumption_token;
  if (!token_) done_ = true;
  return page;
}

HarvestSummary HarvestAll(Harvester &harvester,
                          const std::function<void(DatasetRecord)> &sink) {
  HarvestSummary summary;
  while (auto page = harvester.NextPage()) {
    ++summary.pages;
    summary.record_errors += page->record_errors;
    summary.filtered += page->filtered;
    summary.deleted += page->deleted;
    summary.records += page->records.size();
    for (auto &record : page->records) sink(std::move(record));
  }
  return summary;
}

}  // namespace dataref
