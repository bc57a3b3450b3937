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

// HTTP service over the pipeline with persistent review sessions.
//
// State lives in the data directory:
//   articles/<id>.json        posted articles
//   false_positives.jsonl     dictionary false-positive additions, in order
//   sessions/<id>.jsonl       one "create" event, then "decide"/"undo" events
// Every file is appended (or written and renamed) and flushed to disk before
// the response is sent, and replayed on startup.
//
// Endpoints (JSON bodies, every response carries "schema_version" and an
// X-Schema-Version header):
//   POST /articles                          text body + ?article_id=, or JSON
//   GET  /articles
//   GET  /articles/{id}/references
//   GET  /articles/{id}/references/{n}/candidates
//   GET  /articles/{id}/features
//   GET  /articles/{id}/export?format=nt|ttl|json
//   POST /sessions                          {article_id, workflow}
//   GET  /sessions/{id}
//   POST /sessions/{id}/decisions           {item, doi} or {item, reject: true}
//   POST /sessions/{id}/undo                {item}
//   POST /dictionary/false-positives        {text, kind}
//   GET  /dictionary

#ifndef DATAREF_SERVICE_H_
#define DATAREF_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "dataref/dictionary.h"
#include "dataref/ranker.h"
#include "dataref/registry.h"

namespace dataref {

struct ServiceOptions {
  std::filesystem::path data_dir;
  RankerConfig ranker;
  // Static files served under "/" when set.
  std::optional<std::filesystem::path> ui_dir;
  size_t threads = 8;
};

class Service {
 public:
  // Replays the data directory. Throws Error if it cannot be created or a
  // persisted file is corrupt.
  Service(std::shared_ptr<const RegistryIndex> index,
          FeatureDictionary dictionary, ServiceOptions options);
  ~Service();

  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port. Throws Error if binding fails.
  int Start(const std::string &host = "127.0.0.1", int port = 0);
  // Serves on the calling thread until Stop().
  bool Listen(const std::string &host, int port);
  void Stop();

  // Current dictionary snapshot, including replayed false positives.
  std::shared_ptr<const FeatureDictionary> dictionary() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace dataref

#endif  // DATAREF_SERVICE_H_
