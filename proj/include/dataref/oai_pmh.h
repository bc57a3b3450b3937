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

// OAI-PMH 2.0 harvesting of Dublin Core dataset metadata.
//
// A harvest is a sequence of ListRecords requests. The first request names
// the metadata prefix (oai_dc) and optional set; each following request
// carries only the resumption token of the previous response. The harvester
// exposes that token after every page so an interrupted run can continue.

#ifndef DATAREF_OAI_PMH_H_
#define DATAREF_OAI_PMH_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataref/error.h"
#include "dataref/registry.h"

namespace dataref {

class HarvestError : public Error {
 public:
  enum class Kind {
    kNetwork,   // transport failure or truncated response; retry from resume_token
    kProtocol,  // OAI-PMH <error code=...>; terminal
  };

  HarvestError(Kind kind, const std::string &what, std::string code = {},
               std::optional<std::string> resume_token = std::nullopt)
      : Error(what),
        kind_(kind),
        code_(std::move(code)),
        resume_token_(std::move(resume_token)) {}

  Kind kind() const { return kind_; }
  bool retryable() const { return kind_ == Kind::kNetwork; }
  // OAI-PMH error code such as "badArgument" (protocol errors only).
  const std::string &code() const { return code_; }
  // Token to resume from; empty when the failure happened on the first page.
  const std::optional<std::string> &resume_token() const {
    return resume_token_;
  }

 private:
  Kind kind_;
  std::string code_;
  std::optional<std::string> resume_token_;
};

// Fetches a URL and returns the response body. Implementations throw
// HarvestError(kNetwork) on failure.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string Get(const std::string &url) = 0;
};

// HTTP(S) transport backed by cpp-httplib.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(int timeout_seconds = 60)
      : timeout_seconds_(timeout_seconds) {}
  std::string Get(const std::string &url) override;

 private:
  int timeout_seconds_;
};

// Serves responses from a directory: the initial request reads
// ListRecords.xml and a request with resumption token T reads
// ListRecords-T.xml. Used for fixtures and offline replays.
class DirectoryTransport : public Transport {
 public:
  explicit DirectoryTransport(std::string dir) : dir_(std::move(dir)) {}
  std::string Get(const std::string &url) override;

 private:
  std::string dir_;
};

// Picks DirectoryTransport for file:// endpoints, HttpTransport otherwise.
std::unique_ptr<Transport> MakeTransport(std::string_view endpoint);

struct HarvestPage {
  std::vector<DatasetRecord> records;  // endpoint order
  size_t record_errors = 0;   // malformed records or records failing validation
  size_t filtered = 0;        // non-dataset resource types
  size_t deleted = 0;         // header status="deleted"
  std::optional<std::string> resumption_token;  // absent on the last page
  std::string response_date;
};

// Parses one ListRecords response body. Throws HarvestError(kProtocol) for
// an OAI-PMH error element and HarvestError(kNetwork) if the envelope is
// truncated or unparseable.
HarvestPage ParseListRecords(std::string_view xml);

struct IdentifierPage {
  std::vector<std::string> identifiers;
  std::optional<std::string> resumption_token;
};
IdentifierPage ParseListIdentifiers(std::string_view xml);

// Percent-encodes a query parameter value.
std::string UrlEncode(std::string_view value);

std::string ListRecordsUrl(std::string_view endpoint,
                           const std::optional<std::string> &set_spec,
                           const std::optional<std::string> &resume_token);
std::string ListIdentifiersUrl(std::string_view endpoint,
                               const std::optional<std::string> &set_spec,
                               const std::optional<std::string> &resume_token);

class Harvester {
 public:
  Harvester(Transport &transport, std::string endpoint,
            std::optional<std::string> set_spec = std::nullopt,
            std::optional<std::string> resume_token = std::nullopt);

  // Fetches the next page, or returns nullopt once the list is complete.
  // On a network error the harvester state is unchanged, so calling again
  // retries the same page.
  std::optional<HarvestPage> NextPage();

  bool done() const { return done_; }
  // Token for the next request; nullopt before the first page or when done.
  const std::optional<std::string> &resume_state() const { return token_; }

 private:
  Transport &transport_;
  std::string endpoint_;
  std::optional<std::string> set_spec_;
  std::optional<std::string> token_;
  bool done_ = false;
};

struct HarvestSummary {
  size_t records = 0;
  size_t record_errors = 0;
  size_t filtered = 0;
  size_t deleted = 0;
  size_t pages = 0;
};

// Drains the harvester, passing each record to `sink` in endpoint order.
HarvestSummary HarvestAll(Harvester &harvester,
                          const std::function<void(DatasetRecord)> &sink);

}  // namespace dataref

#endif  // DATAREF_OAI_PMH_H_
