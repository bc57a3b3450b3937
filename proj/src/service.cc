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

#include "dataref/service.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <thread>

#include "dataref/detector.h"
#include "dataref/error.h"
#include "dataref/exporter.h"
#include "dataref/json_io.h"
#include "dataref/text.h"
#include "httplib.h"

namespace dataref {

namespace fs = std::filesystem;

namespace {

class HttpError : public Error {
 public:
  HttpError(int status, const std::string &what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

[[noreturn]] void Fail(int status, const std::string &what) {
  throw HttpError(status, what);
}

// Article and session ids double as file names.
bool SafeId(std::string_view id) {
  if (id.empty() || id.size() > 200 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
           c == '.';
  });
}

void WriteAll(int fd, const std::string &data, const fs::path &path) {
  size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      ::close(fd);
      throw Error("cannot write " + path.string());
    }
    done += static_cast<size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    throw Error("cannot sync " + path.string());
  }
  ::close(fd);
}

void AppendDurable(const fs::path &path, const std::string &line) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error("cannot open " + path.string());
  WriteAll(fd, line + "\n", path);
}

void WriteDurable(const fs::path &path, const std::string &content) {
  fs::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error("cannot open " + tmp.string());
  WriteAll(fd, content, tmp);
  fs::rename(tmp, path);
}

// Complete lines of a log. A torn final line (no newline) was never
// acknowledged and is skipped.
std::vector<Json> ReadLog(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), {});
  if (!content.empty() && content.back() != '\n') {
    content.erase(content.rfind('\n') == std::string::npos ? 0
                                                           : content.rfind('\n') + 1);
  }
  std::istringstream lines(content);
  try {
    return ReadJsonLines(lines);
  } catch (const ParseError &e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Json ParseBody(const httplib::Request &req) {
  try {
    Json body = Json::parse(req.body);
    if (!body.is_object()) Fail(400, "request body must be a JSON object");
    return body;
  } catch (const nlohmann::json::parse_error &e) {
    Fail(400, std::string("malformed JSON: ") + e.what());
  }
}

std::string StringField(const Json &body, const char *key, bool required = true) {
  if (!body.contains(key) || body.at(key).is_null()) {
    if (required) Fail(400, std::string("missing field '") + key + "'");
    return "";
  }
  if (!body.at(key).is_string()) Fail(400, std::string("field '") + key + "' must be a string");
  return body.at(key).get<std::string>();
}

enum class Workflow { kPerReference, kPerFeature };

std::string_view WorkflowName(Workflow workflow) {
  return workflow == Workflow::kPerReference ? "per_reference" : "per_feature";
}

Workflow ParseWorkflow(std::string_view name) {
  if (name == "per_reference" || name == "per-reference") return Workflow::kPerReference;
  if (name == "per_feature" || name == "per-feature") return Workflow::kPerFeature;
  throw ParseError("unknown workflow '" + std::string(name) + "'");
}

std::string FeatureItemId(const FeatureKey &key) {
  return "feature:" + std::string(KindName(key.kind)) + ":" + key.text;
}

struct StoredArticle {
  ArticleText text;
  ArticleMetadata meta;
};

Json ArticleToJson(const StoredArticle &article) {
  Json json;
  json["article_id"] = article.meta.article_id;
  json["pid"] = article.meta.pid;
  if (article.meta.title) json["title"] = *article.meta.title;
  if (article.meta.journal) json["journal"] = *article.meta.journal;
  if (article.text.language) json["language"] = *article.text.language;
  return json;
}

// Validates and builds an article from a JSON object; throws HttpError.
StoredArticle ArticleFromJson(const Json &body) {
  StoredArticle article;
  article.meta.article_id = StringField(body, "article_id");
  if (!SafeId(article.meta.article_id)) {
    Fail(400, "article_id may only contain letters, digits, '.', '-' and '_'");
  }
  article.text.article_id = article.meta.article_id;
  article.text.fulltext = StringField(body, "text");
  std::string pid = StringField(body, "pid", false);
  article.meta.pid = pid.empty() ? "urn:dataref:article:" + article.meta.article_id : pid;
  if (std::string title = StringField(body, "title", false); !title.empty()) {
    article.meta.title = title;
  }
  if (std::string journal = StringField(body, "journal", false); !journal.empty()) {
    article.meta.journal = journal;
  }
  if (std::string language = StringField(body, "language", false); !language.empty()) {
    article.text.language = language;
  }
  try {
    ValidateArticle(article.text);
    ValidateLinkSet({article.meta, {}});
  } catch (const PreconditionError &e) {
    Fail(400, e.what());
  }
  return article;
}

struct Analysis {
  uint64_t generation = 0;
  std::vector<ReferenceCandidate> refs;
  std::vector<std::vector<RankedMatch>> ranked;
  FeatureGroups groups;
  std::map<FeatureKey, size_t> ref_counts;
};

struct SessionItem {
  std::string id;
  Feature feature;
  std::optional<ReferenceCandidate> ref;
  std::vector<RankedMatch> candidates;
};

struct Decision {
  bool reject = false;
  std::string doi;
  std::string title;
};

struct Session {
  std::string id;
  std::string article_id;
  Workflow workflow = Workflow::kPerReference;
  std::vector<SessionItem> items;
  std::map<std::string, size_t> item_index;
  std::map<std::string, Decision> decisions;
  std::mutex mutex;
};

Json ItemToJson(const SessionItem &item) {
  Json json;
  json["item"] = item.id;
  json["feature"] = item.feature.text;
  json["kind"] = std::string(KindName(item.feature.kind));
  if (item.ref) {
    json["sentence"] = item.ref->sentence;
    json["span"] = Json::array({item.ref->span.begin, item.ref->span.end});
    json["match"] = Json::array({item.ref->match.begin, item.ref->match.end});
  }
  json["candidates"] = Json::array();
  for (const auto &match : item.candidates) json["candidates"].push_back(ToJson(match));
  return json;
}

SessionItem ItemFromJson(const Json &json) {
  SessionItem item;
  item.id = json.at("item").get<std::string>();
  item.feature.text = json.at("feature").get<std::string>();
  item.feature.kind = ParseKind(json.at("kind").get<std::string>());
  if (json.contains("sentence")) {
    ReferenceCandidate ref;
    ref.feature = item.feature;
    ref.sentence = json.at("sentence").get<std::string>();
    auto span = json.at("span").get<std::vector<size_t>>();
    auto match = json.at("match").get<std::vector<size_t>>();
    if (span.size() != 2 || match.size() != 2) throw ParseError("bad span");
    ref.span = {span[0], span[1]};
    ref.match = {match[0], match[1]};
    item.ref = std::move(ref);
  }
  for (const auto &candidate : json.at("candidates")) {
    item.candidates.push_back(RankedMatchFromJson(candidate));
  }
  return item;
}

// Requires the session mutex.
Json SessionToJson(const Session &session) {
  Json json;
  json["session_id"] = session.id;
  json["article_id"] = session.article_id;
  json["workflow"] = std::string(WorkflowName(session.workflow));
  json["total"] = session.items.size();
  json["decided"] = session.decisions.size();
  Json items = Json::array();
  Json pending = Json::array();
  for (const auto &item : session.items) {
    Json entry = ItemToJson(item);
    auto it = session.decisions.find(item.id);
    if (it == session.decisions.end()) {
      pending.push_back(item.id);
    } else if (it->second.reject) {
      entry["decision"] = Json{{"reject", true}};
    } else {
      entry["decision"] = Json{{"doi", it->second.doi}, {"title", it->second.title}};
    }
    items.push_back(std::move(entry));
  }
  json["pending"] = std::move(pending);
  json["items"] = std::move(items);
  return json;
}

// Validates a decide/undo event against the session and applies it.
// Throws HttpError without touching the session when invalid.
void CheckEvent(const Session &session, const Json &event) {
  std::string type = event.value("event", "");
  std::string item = event.value("item", "");
  auto index = session.item_index.find(item);
  if (index == session.item_index.end()) {
    Fail(400, "item '" + item + "' is not part of session " + session.id);
  }
  bool decided = session.decisions.contains(item);
  if (type == "decide") {
    if (decided) Fail(409, "item '" + item + "' is already decided");
    if (event.value("reject", false)) return;
    std::string doi = event.value("doi", "");
    const auto &offered = session.items[index->second].candidates;
    bool known = std::any_of(offered.begin(), offered.end(),
                             [&](const RankedMatch &m) { return m.doi == doi; });
    if (!known) Fail(400, "DOI '" + doi + "' was not offered for item '" + item + "'");
  } else if (type == "undo") {
    if (!decided) Fail(409, "item '" + item + "' has no decision to undo");
  } else {
    Fail(400, "unknown event '" + type + "'");
  }
}

void ApplyEvent(Session &session, const Json &event) {
  std::string item = event.at("item").get<std::string>();
  if (event.at("event") == "undo") {
    session.decisions.erase(item);
    return;
  }
  Decision decision;
  decision.reject = event.value("reject", false);
  if (!decision.reject) {
    decision.doi = event.at("doi").get<std::string>();
    for (const auto &m : session.items[session.item_index.at(item)].candidates) {
      if (m.doi == decision.doi) decision.title = m.title;
    }
  }
  session.decisions[item] = std::move(decision);
}

void Reply(httplib::Response &res, int status, Json body) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  for (auto &[key, value] : body.items()) out[key] = std::move(value);
  res.status = status;
  res.set_content(out.dump(), "application/json");
}

size_t ParseIndex(const std::string &text) {
  size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(400, "'" + text + "' is not a reference index");
  }
  return value;
}

}  // namespace

struct Service::Impl {
  std::shared_ptr<const RegistryIndex> index;
  ServiceOptions options;
  httplib::Server server;
  std::thread thread;

  mutable std::mutex dict_mutex;
  std::shared_ptr<const FeatureDictionary> dict;
  uint64_t generation = 0;
  std::mutex fp_mutex;  // serializes false-positive writers

  mutable std::shared_mutex state_mutex;
  std::map<std::string, std::shared_ptr<const StoredArticle>> articles;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  uint64_t next_session = 1;
  std::mutex create_mutex;  // serializes article and session creation

  std::mutex cache_mutex;
  std::map<std::string, std::shared_ptr<const Analysis>> cache;

  fs::path ArticlesDir() const { return options.data_dir / "articles"; }
  fs::path SessionsDir() const { return options.data_dir / "sessions"; }
  fs::path FalsePositiveLog() const { return options.data_dir / "false_positives.jsonl"; }

  std::pair<std::shared_ptr<const FeatureDictionary>, uint64_t> Dictionary() const {
    std::lock_guard lock(dict_mutex);
    return {dict, generation};
  }

  std::shared_ptr<const StoredArticle> FindArticle(const std::string &id) const {
    std::shared_lock lock(state_mutex);
    auto it = articles.find(id);
    if (it == articles.end()) Fail(404, "unknown article '" + id + "'");
    return it->second;
  }

  std::shared_ptr<Session> FindSession(const std::string &id) const {
    std::shared_lock lock(state_mutex);
    auto it = sessions.find(id);
    if (it == sessions.end()) Fail(404, "unknown session '" + id + "'");
    return it->second;
  }

  // Detection and ranking against the current dictionary. Recomputed after
  // every dictionary change.
  std::shared_ptr<const Analysis> Analyze(const StoredArticle &article) {
    auto [current, gen] = Dictionary();
    {
      std::lock_guard lock(cache_mutex);
      auto it = cache.find(article.meta.article_id);
      if (it != cache.end() && it->second->generation == gen) return it->second;
    }
    auto analysis = std::make_shared<Analysis>();
    analysis->generation = gen;
    analysis->refs = FindReferences(article.text, *current);
    ArticleRanker ranker(*index, article.text, options.ranker);
    std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>> pairs;
    for (const auto &ref : analysis->refs) {
      analysis->ranked.push_back(ranker.Rank(ref));
      pairs.emplace_back(ref, analysis->ranked.back());
      ++analysis->ref_counts[{ref.feature.text, ref.feature.kind}];
    }
    analysis->groups = AggregatePerFeature(pairs, options.ranker.top_k_feature);
    std::lock_guard lock(cache_mutex);
    auto &slot = cache[article.meta.article_id];
    if (!slot || slot->generation <= gen) slot = analysis;
    return analysis;
  }

  void Replay(FeatureDictionary base) {
    fs::create_directories(ArticlesDir());
    fs::create_directories(SessionsDir());

    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(ArticlesDir())) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &path : files) {
      std::ifstream in(path, std::ios::binary);
      try {
        Json json = Json::parse(in);
        StoredArticle article = ArticleFromJson(json);
        std::string id = article.meta.article_id;
        articles[id] = std::make_shared<const StoredArticle>(std::move(article));
      } catch (const std::exception &e) {
        throw Error("corrupt article file " + path.string() + ": " + e.what());
      }
    }

    if (fs::exists(FalsePositiveLog())) {
      std::vector<std::pair<std::string, FeatureKind>> additions;
      for (const auto &event : ReadLog(FalsePositiveLog())) {
        try {
          additions.emplace_back(event.at("text").get<std::string>(),
                                 ParseKind(event.at("kind").get<std::string>()));
        } catch (const std::exception &e) {
          throw Error("corrupt false-positive log: " + std::string(e.what()));
        }
      }
      base = ApplyFalsePositives(std::move(base), additions);
    }
    dict = std::make_shared<const FeatureDictionary>(std::move(base));

    files.clear();
    for (const auto &entry : fs::directory_iterator(SessionsDir())) {
      if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &path : files) ReplaySession(path);
  }

  void ReplaySession(const fs::path &path) {
    auto events = ReadLog(path);
    if (events.empty()) return;
    auto session = std::make_shared<Session>();
    try {
      const Json &create = events.front();
      if (create.at("event") != "create") throw ParseError("first event is not 'create'");
      session->id = create.at("session_id").get<std::string>();
      session->article_id = create.at("article_id").get<std::string>();
      session->workflow = ParseWorkflow(create.at("workflow").get<std::string>());
      for (const auto &item : create.at("items")) {
        session->item_index[item.at("item").get<std::string>()] = session->items.size();
        session->items.push_back(ItemFromJson(item));
      }
      for (size_t i = 1; i < events.size(); ++i) {
        CheckEvent(*session, events[i]);
        ApplyEvent(*session, events[i]);
      }
    } catch (const std::exception &e) {
      throw Error("corrupt session log " + path.string() + ": " + e.what());
    }
    if (session->id.size() > 1 && session->id[0] == 's') {
      uint64_t number = 0;
      auto [ptr, ec] = std::from_chars(session->id.data() + 1,
                                       session->id.data() + session->id.size(), number);
      if (ec == std::errc()) next_session = std::max(next_session, number + 1);
    }
    sessions[session->id] = std::move(session);
  }

  // Handlers.

  void PostArticle(const httplib::Request &req, httplib::Response &res) {
    Json body;
    if (req.get_header_value("Content-Type").starts_with("application/json")) {
      body = ParseBody(req);
    } else {
      body["article_id"] = req.get_param_value("article_id");
      body["text"] = req.body;
      if (req.has_param("pid")) body["pid"] = req.get_param_value("pid");
      if (req.has_param("title")) body["title"] = req.get_param_value("title");
      if (req.has_param("journal")) body["journal"] = req.get_param_value("journal");
      if (req.has_param("language")) body["language"] = req.get_param_value("language");
    }
    StoredArticle article = ArticleFromJson(body);
    Json record = ArticleToJson(article);
    record["text"] = article.text.fulltext;
    std::lock_guard create(create_mutex);
    {
      std::shared_lock lock(state_mutex);
      if (articles.contains(article.meta.article_id)) {
        Fail(409, "article '" + article.meta.article_id + "' already exists");
      }
    }
    WriteDurable(ArticlesDir() / (article.meta.article_id + ".json"), record.dump());
    auto stored = std::make_shared<const StoredArticle>(std::move(article));
    {
      std::unique_lock lock(state_mutex);
      articles[stored->meta.article_id] = stored;
    }
    Json out = ArticleToJson(*stored);
    out["references"] = Analyze(*stored)->refs.size();
    Reply(res, 201, std::move(out));
  }

  void ListArticles(const httplib::Request &, httplib::Response &res) {
    Json list = Json::array();
    std::shared_lock lock(state_mutex);
    for (const auto &[id, article] : articles) list.push_back(ArticleToJson(*article));
    Reply(res, 200, Json{{"articles", std::move(list)}});
  }

  void GetReferences(const httplib::Request &req, httplib::Response &res) {
    auto article = FindArticle(req.matches[1]);
    auto analysis = Analyze(*article);
    Json refs = Json::array();
    for (size_t i = 0; i < analysis->refs.size(); ++i) {
      Json entry;
      entry["index"] = i;
      Json ref = ToJson(analysis->refs[i]);
      for (auto &[key, value] : ref.items()) entry[key] = value;
      refs.push_back(std::move(entry));
    }
    Reply(res, 200, Json{{"article_id", article->meta.article_id},
                         {"references", std::move(refs)}});
  }

  void GetCandidates(const httplib::Request &req, httplib::Response &res) {
    auto article = FindArticle(req.matches[1]);
    size_t n = ParseIndex(req.matches[2]);
    auto analysis = Analyze(*article);
    if (n >= analysis->refs.size()) {
      Fail(404, "article '" + article->meta.article_id + "' has no reference " +
                    std::to_string(n));
    }
    Json candidates = Json::array();
    for (const auto &match : analysis->ranked[n]) candidates.push_back(ToJson(match));
    Reply(res, 200, Json{{"article_id", article->meta.article_id},
                         {"index", n},
                         {"reference", ToJson(analysis->refs[n])},
                         {"candidates", std::move(candidates)}});
  }

  void GetFeatures(const httplib::Request &req, httplib::Response &res) {
    auto article = FindArticle(req.matches[1]);
    auto analysis = Analyze(*article);
    Json features = Json::array();
    for (const auto &[key, matches] : analysis->groups) {
      Json entry;
      entry["text"] = key.text;
      entry["kind"] = std::string(KindName(key.kind));
      entry["references"] = analysis->ref_counts.at(key);
      entry["candidates"] = Json::array();
      for (const auto &match : matches) entry["candidates"].push_back(ToJson(match));
      features.push_back(std::move(entry));
    }
    Reply(res, 200, Json{{"article_id", article->meta.article_id},
                         {"features", std::move(features)}});
  }

  void GetExport(const httplib::Request &req, httplib::Response &res) {
    auto article = FindArticle(req.matches[1]);
    std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
    if (format != "nt" && format != "ttl" && format != "json") {
      Fail(400, "format must be nt, ttl or json");
    }
    std::vector<std::shared_ptr<Session>> chosen;
    if (req.has_param("session")) {
      chosen.push_back(FindSession(req.get_param_value("session")));
      if (chosen.back()->article_id != article->meta.article_id) {
        Fail(400, "session belongs to another article");
      }
    } else {
      std::shared_lock lock(state_mutex);
      for (const auto &[id, session] : sessions) {
        if (session->article_id == article->meta.article_id) chosen.push_back(session);
      }
    }
    std::vector<Selection> selections;
    for (const auto &session : chosen) {
      std::lock_guard lock(session->mutex);
      for (const auto &[item, decision] : session->decisions) {
        if (decision.reject) continue;
        const auto &feature = session->items[session->item_index.at(item)].feature;
        selections.push_back({decision.doi, decision.title, feature.text});
      }
    }
    LinkSet linkset =
        BuildLinkSet(article->meta, Analyze(*article)->groups, selections);
    if (format == "nt") {
      res.set_content(ExportNTriples(linkset), "application/n-triples");
    } else if (format == "ttl") {
      res.set_content(ExportTurtle(linkset), "text/turtle");
    } else {
      res.set_content(ExportJson(linkset), "application/json");
    }
  }

  void PostSession(const httplib::Request &req, httplib::Response &res) {
    Json body = ParseBody(req);
    auto article = FindArticle(StringField(body, "article_id"));
    Workflow workflow;
    try {
      workflow = ParseWorkflow(StringField(body, "workflow"));
    } catch (const ParseError &e) {
      Fail(400, e.what());
    }
    auto analysis = Analyze(*article);

    auto session = std::make_shared<Session>();
    session->article_id = article->meta.article_id;
    session->workflow = workflow;
    if (workflow == Workflow::kPerReference) {
      for (size_t i = 0; i < analysis->refs.size(); ++i) {
        session->items.push_back({"ref:" + std::to_string(i), analysis->refs[i].feature,
                                  analysis->refs[i], analysis->ranked[i]});
      }
    } else {
      for (const auto &[key, matches] : analysis->groups) {
        session->items.push_back(
            {FeatureItemId(key), Feature{key.text, key.kind, {}}, std::nullopt, matches});
      }
    }
    for (size_t i = 0; i < session->items.size(); ++i) {
      session->item_index[session->items[i].id] = i;
    }

    std::lock_guard create(create_mutex);
    char id[32];
    std::snprintf(id, sizeof id, "s%06llu",
                  static_cast<unsigned long long>(next_session));
    session->id = id;
    Json event;
    event["event"] = "create";
    event["session_id"] = session->id;
    event["article_id"] = session->article_id;
    event["workflow"] = std::string(WorkflowName(workflow));
    event["items"] = Json::array();
    for (const auto &item : session->items) event["items"].push_back(ItemToJson(item));
    AppendDurable(SessionsDir() / (session->id + ".jsonl"), event.dump());
    {
      std::unique_lock lock(state_mutex);
      sessions[session->id] = session;
      ++next_session;
    }
    std::lock_guard lock(session->mutex);
    Reply(res, 201, SessionToJson(*session));
  }

  void GetSession(const httplib::Request &req, httplib::Response &res) {
    auto session = FindSession(req.matches[1]);
    std::lock_guard lock(session->mutex);
    Reply(res, 200, SessionToJson(*session));
  }

  void PostSessionEvent(const httplib::Request &req, httplib::Response &res,
                        bool undo) {
    auto session = FindSession(req.matches[1]);
    Json body = ParseBody(req);
    Json event;
    event["event"] = undo ? "undo" : "decide";
    event["item"] = StringField(body, "item");
    if (!undo) {
      bool reject = body.contains("reject") && body.at("reject").is_boolean() &&
                    body.at("reject").get<bool>();
      std::string doi = StringField(body, "doi", false);
      if (reject == !doi.empty()) Fail(400, "give exactly one of 'doi' or 'reject'");
      if (reject) {
        event["reject"] = true;
      } else {
        event["doi"] = doi;
      }
    }
    std::lock_guard lock(session->mutex);
    CheckEvent(*session, event);
    AppendDurable(SessionsDir() / (session->id + ".jsonl"), event.dump());
    ApplyEvent(*session, event);
    Reply(res, 200, SessionToJson(*session));
  }

  void PostFalsePositive(const httplib::Request &req, httplib::Response &res) {
    Json body = ParseBody(req);
    std::string text(Trim(StringField(body, "text")));
    if (text.empty()) Fail(400, "empty false-positive text");
    FeatureKind kind;
    try {
      kind = ParseKind(StringField(body, "kind"));
    } catch (const ParseError &e) {
      Fail(400, e.what());
    }
    std::lock_guard writer(fp_mutex);
    Json event{{"text", text}, {"kind", std::string(KindName(kind))}};
    AppendDurable(FalsePositiveLog(), event.dump());
    auto [current, gen] = Dictionary();
    auto updated = std::make_shared<const FeatureDictionary>(
        ApplyFalsePositives(*current, {{text, kind}}));
    {
      std::lock_guard lock(dict_mutex);
      dict = updated;
      ++generation;
    }
    Reply(res, 200, Json{{"text", text},
                         {"kind", std::string(KindName(kind))},
                         {"abbreviations", updated->abbreviations.size()},
                         {"phrases", updated->phrases.size()}});
  }

  void GetDictionary(const httplib::Request &, httplib::Response &res) {
    auto [current, gen] = Dictionary();
    auto texts = [](const std::set<Feature> &features) {
      Json list = Json::array();
      for (const auto &f : features) list.push_back(f.text);
      return list;
    };
    Reply(res, 200,
          Json{{"generation", gen},
               {"abbreviations", texts(current->abbreviations)},
               {"phrases", texts(current->phrases)},
               {"false_positives",
                Json{{"abbreviations", current->fp_abbreviations},
                     {"phrases", current->fp_phrases}}},
               {"base_terms", current->base_terms}});
  }

  using Member = void (Impl::*)(const httplib::Request &, httplib::Response &);

  httplib::Server::Handler Wrap(Member member) {
    return [this, member](const httplib::Request &req, httplib::Response &res) {
      Guard(res, [&] { (this->*member)(req, res); });
    };
  }

  template <typename F>
  void Guard(httplib::Response &res, F &&body) {
    try {
      body();
    } catch (const HttpError &e) {
      Reply(res, e.status(), Json{{"error", e.what()}});
    } catch (const ParseError &e) {
      Reply(res, 400, Json{{"error", e.what()}});
    } catch (const PreconditionError &e) {
      Reply(res, 400, Json{{"error", e.what()}});
    } catch (const std::exception &e) {
      Reply(res, 500, Json{{"error", e.what()}});
    }
  }

  void Routes() {
    server.new_task_queue = [n = options.threads] {
      return new httplib::ThreadPool(n);
    };
    server.set_default_headers(
        {{"X-Schema-Version", std::to_string(kSchemaVersion)}});
    server.Post("/articles", Wrap(&Impl::PostArticle));
    server.Get("/articles", Wrap(&Impl::ListArticles));
    server.Get(R"(/articles/([^/]+)/references)", Wrap(&Impl::GetReferences));
    server.Get(R"(/articles/([^/]+)/references/([^/]+)/candidates)",
               Wrap(&Impl::GetCandidates));
    server.Get(R"(/articles/([^/]+)/features)", Wrap(&Impl::GetFeatures));
    server.Get(R"(/articles/([^/]+)/export)", Wrap(&Impl::GetExport));
    server.Post("/sessions", Wrap(&Impl::PostSession));
    server.Get(R"(/sessions/([^/]+))", Wrap(&Impl::GetSession));
    server.Post(R"(/sessions/([^/]+)/decisions)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Guard(res, [&] { PostSessionEvent(req, res, false); });
                });
    server.Post(R"(/sessions/([^/]+)/undo)",
                [this](const httplib::Request &req, httplib::Response &res) {
                  Guard(res, [&] { PostSessionEvent(req, res, true); });
                });
    server.Post("/dictionary/false-positives", Wrap(&Impl::PostFalsePositive));
    server.Get("/dictionary", Wrap(&Impl::GetDictionary));
    server.set_error_handler([](const httplib::Request &, httplib::Response &res) {
      if (res.body.empty()) {
        Reply(res, res.status, Json{{"error", httplib::status_message(res.status)}});
      }
    });
    if (options.ui_dir && !server.set_mount_point("/", options.ui_dir->string())) {
      throw Error("UI directory " + options.ui_dir->string() + " does not exist");
    }
  }
};

Service::Service(std::shared_ptr<const RegistryIndex> index,
                 FeatureDictionary dictionary, ServiceOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!index) throw PreconditionError("service needs a registry index");
  impl_->index = std::move(index);
  impl_->options = std::move(options);
  try {
    impl_->Replay(std::move(dictionary));
  } catch (const fs::filesystem_error &e) {
    throw Error(e.what());
  }
  impl_->Routes();
}

Service::~Service() { Stop(); }

int Service::Start(const std::string &host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

bool Service::Listen(const std::string &host, int port) {
  return impl_->server.listen(host, port);
}

void Service::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::shared_ptr<const FeatureDictionary> Service::dictionary() const {
  return impl_->Dictionary().first;
}

}  // namespace dataref
