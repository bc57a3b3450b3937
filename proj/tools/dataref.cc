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

// dataref command line: harvesting, dictionary building, detection, ranking,
// evaluation, export and the review service.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dataref/detector.h"
#include "dataref/dictionary.h"
#include "dataref/error.h"
#include "dataref/evaluator.h"
#include "dataref/exporter.h"
#include "dataref/json_io.h"
#include "dataref/oai_pmh.h"
#include "dataref/ranker.h"
#include "dataref/registry.h"
#include "dataref/service.h"

namespace fs = std::filesystem;
using namespace dataref;

namespace {

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

// A directory of *.txt files (id = file stem), a .jsonl file of
// {article_id, text[, language]} objects, or a single text file.
std::vector<ArticleText> LoadArticles(const fs::path &path) {
  std::vector<ArticleText> articles;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(path)) {
      if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &file : files) {
      articles.push_back({file.stem().string(), ReadFile(file), std::nullopt});
    }
  } else if (path.extension() == ".jsonl") {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    for (const auto &json : ReadJsonLines(in)) {
      ArticleText article;
      article.article_id = json.at("article_id").get<std::string>();
      article.fulltext = json.at("text").get<std::string>();
      if (json.contains("language")) article.language = json.at("language").get<std::string>();
      articles.push_back(std::move(article));
    }
  } else {
    articles.push_back({path.stem().string(), ReadFile(path), std::nullopt});
  }
  for (const auto &article : articles) ValidateArticle(article);
  return articles;
}

struct RankerFlags {
  std::string config;
  std::optional<double> year_boost_factor;
  std::optional<size_t> top_k_reference;
  std::optional<size_t> top_k_feature;
  std::optional<double> score_threshold;

  void Register(CLI::App *app) {
    app->add_option("--config", config,
                    "JSON file with year_boost_factor, top_k_reference, "
                    "top_k_feature, score_threshold")
        ->check(CLI::ExistingFile);
    app->add_option("--year-boost-factor", year_boost_factor);
    app->add_option("--top-k-reference", top_k_reference);
    app->add_option("--top-k-feature", top_k_feature);
    app->add_option("--score-threshold", score_threshold);
  }

  RankerConfig Resolve() const {
    RankerConfig config_values;
    if (!config.empty()) {
      Json json = Json::parse(ReadFile(config));
      config_values.year_boost_factor =
          json.value("year_boost_factor", config_values.year_boost_factor);
      config_values.top_k_reference =
          json.value("top_k_reference", config_values.top_k_reference);
      config_values.top_k_feature = json.value("top_k_feature", config_values.top_k_feature);
      config_values.score_threshold =
          json.value("score_threshold", config_values.score_threshold);
    }
    if (year_boost_factor) config_values.year_boost_factor = *year_boost_factor;
    if (top_k_reference) config_values.top_k_reference = *top_k_reference;
    if (top_k_feature) config_values.top_k_feature = *top_k_feature;
    if (score_threshold) config_values.score_threshold = *score_threshold;
    if (config_values.year_boost_factor < 1) {
      throw PreconditionError("year_boost_factor must be >= 1");
    }
    return config_values;
  }
};

int Harvest(const std::string &endpoint, const std::string &set_spec,
            const std::string &resume, const std::string &out) {
  auto transport = MakeTransport(endpoint);
  Harvester harvester(*transport, endpoint,
                      set_spec.empty() ? std::nullopt : std::optional(set_spec),
                      resume.empty() ? std::nullopt : std::optional(resume));
  std::vector<DatasetRecord> records;
  int status = 0;
  HarvestSummary summary;
  try {
    summary = HarvestAll(harvester, [&](DatasetRecord r) { records.push_back(std::move(r)); });
  } catch (const HarvestError &e) {
    std::cerr << "harvest stopped: " << e.what() << "\n";
    if (e.resume_token()) std::cerr << "resume with --resume " << *e.resume_token() << "\n";
    status = 2;
  }
  SaveSnapshot(out, records);
  std::cout << "records " << records.size() << "\n"
            << "record_errors " << summary.record_errors << "\n"
            << "filtered " << summary.filtered << "\n"
            << "deleted " << summary.deleted << "\n"
            << "pages " << summary.pages << "\n";
  return status;
}

void PrintStats(const PatternStats &stats) {
  std::printf("titles          %zu\n", stats.titles);
  std::printf("abbreviation    %6.2f%%\n", 100 * stats.abbrev_pct);
  std::printf("phrase          %6.2f%%\n", 100 * stats.phrase_pct);
  std::printf("both            %6.2f%%\n", 100 * stats.intersection_pct);
  std::printf("filename        %6.2f%%\n", 100 * stats.filename_pct);
}

std::vector<std::string> Titles(const RegistryIndex &index) {
  std::vector<std::string> titles;
  for (const auto &record : index.records()) titles.push_back(record.title);
  return titles;
}

int SnapshotInfo(const std::string &snapshot) {
  RegistryIndex index = LoadSnapshot(snapshot);
  std::printf("records         %zu\n", index.size());
  std::printf("duplicates      %zu\n", index.duplicates());
  FeatureDictionary dict =
      BuildDictionary(index.records(), DefaultWordlists(), DefaultBaseTerms());
  PrintStats(ComputePatternStats(Titles(index), dict));
  return 0;
}

int BuildDict(const std::string &snapshot, const std::string &out_dir) {
  RegistryIndex index = LoadSnapshot(snapshot);
  std::optional<FeatureDictionary> previous;
  if (fs::exists(fs::path(out_dir) / "abbreviations.txt")) previous = LoadDictionary(out_dir);
  std::set<std::string> base_terms =
      previous && !previous->base_terms.empty() ? previous->base_terms : DefaultBaseTerms();
  FeatureDictionary dict = BuildDictionary(index.records(), DefaultWordlists(), base_terms,
                                           previous ? &*previous : nullptr);
  fs::create_directories(out_dir);
  SaveDictionary(dict, out_dir);
  std::cout << "abbreviations " << dict.abbreviations.size() << "\n"
            << "phrases " << dict.phrases.size() << "\n"
            << "false_positives " << dict.fp_abbreviations.size() + dict.fp_phrases.size()
            << "\n";
  return 0;
}

int DictStats(const std::string &snapshot, const std::string &dict_dir) {
  RegistryIndex index = LoadSnapshot(snapshot);
  FeatureDictionary dict = LoadDictionary(dict_dir);
  std::printf("abbreviations   %zu\n", dict.abbreviations.size());
  std::printf("phrases         %zu\n", dict.phrases.size());
  std::printf("fp_abbrev       %zu\n", dict.fp_abbreviations.size());
  std::printf("fp_phrases      %zu\n", dict.fp_phrases.size());
  PrintStats(ComputePatternStats(Titles(index), dict));
  return 0;
}

int Detect(const std::string &dict_dir, const std::string &articles_path,
           const std::string &out_path) {
  FeatureDictionary dict = LoadDictionary(dict_dir);
  auto out = OpenOut(out_path);
  size_t total = 0;
  for (const auto &article : LoadArticles(articles_path)) {
    for (const auto &ref : FindReferences(article, dict)) {
      out << ToJson(ref).dump() << "\n";
      ++total;
    }
  }
  std::cout << "references " << total << "\n";
  return 0;
}

int Rank(const std::string &snapshot, const std::string &dict_dir,
         const std::string &article_path, const std::string &mode,
         const std::string &out_path, const RankerConfig &config) {
  RegistryIndex index = LoadSnapshot(snapshot);
  FeatureDictionary dict = LoadDictionary(dict_dir);
  auto out = OpenOut(out_path);
  for (const auto &article : LoadArticles(article_path)) {
    ArticleRanker ranker(index, article, config);
    auto refs = FindReferences(article, dict);
    std::vector<std::pair<ReferenceCandidate, std::vector<RankedMatch>>> ranked;
    for (size_t i = 0; i < refs.size(); ++i) {
      auto matches = ranker.Rank(refs[i]);
      if (mode == "per-reference") {
        for (const auto &m : matches) {
          Json line;
          line["article_id"] = article.article_id;
          line["reference"] = i;
          line["span"] = Json::array({refs[i].span.begin, refs[i].span.end});
          line["feature"] = refs[i].feature.text;
          line["kind"] = std::string(KindName(refs[i].feature.kind));
          line["rank"] = m.rank;
          line["doi"] = m.doi;
          line["title"] = m.title;
          line["score"] = m.score;
          out << line.dump() << "\n";
        }
      }
      ranked.emplace_back(refs[i], std::move(matches));
    }
    if (mode != "per-feature") continue;
    for (const auto &[key, matches] : AggregatePerFeature(ranked, config.top_k_feature)) {
      for (const auto &m : matches) {
        Json line;
        line["article_id"] = article.article_id;
        line["feature"] = key.text;
        line["kind"] = std::string(KindName(key.kind));
        line["rank"] = m.rank;
        line["doi"] = m.doi;
        line["title"] = m.title;
        line["score"] = m.score;
        out << line.dump() << "\n";
      }
    }
  }
  return 0;
}

Json ReportJson(const EvaluationReport &r) {
  Json json;
  json["phase"] = std::string(PhaseName(r.phase));
  json["tp"] = r.tp;
  json["fp"] = r.fp;
  json["fn"] = r.fn;
  json["precision"] = r.precision;
  json["recall"] = r.recall;
  json["f_measure"] = r.f_measure;
  json["precision_undefined"] = r.precision_undefined;
  json["recall_undefined"] = r.recall_undefined;
  return json;
}

int Evaluate(const std::string &gold_path, const std::string &detected_path,
             const std::string &ranked_path, const std::string &phase,
             const std::string &out_path) {
  GoldStandard gold = LoadGoldStandard(gold_path);
  DetectedFeatures detected;
  Suggestions suggestions;
  if (!detected_path.empty()) {
    std::ifstream in(detected_path);
    if (!in) throw Error("cannot open " + detected_path);
    std::vector<ReferenceCandidate> refs;
    for (const auto &json : ReadJsonLines(in)) refs.push_back(ReferenceFromJson(json));
    detected = DetectedFromReferences(refs);
  }
  if (!ranked_path.empty()) {
    std::ifstream in(ranked_path);
    if (!in) throw Error("cannot open " + ranked_path);
    for (const auto &json : ReadJsonLines(in)) {
      auto key = MakeFeatureRef(json.at("article_id").get<std::string>(),
                                json.at("feature").get<std::string>(),
                                ParseKind(json.at("kind").get<std::string>()));
      auto &list = suggestions[key];
      std::string doi = json.at("doi").get<std::string>();
      if (std::find(list.begin(), list.end(), doi) == list.end()) list.push_back(doi);
    }
  }
  bool all = phase == "all";
  std::vector<EvaluationReport> reports;
  if (all || phase == "detection") {
    if (detected_path.empty()) throw PreconditionError("--detected is required");
    reports.push_back(EvaluateDetection(detected, gold));
  }
  if (all || phase == "matching") {
    if (ranked_path.empty()) throw PreconditionError("--ranked is required");
    reports.push_back(EvaluateMatching(suggestions, gold));
  }
  if (all || phase == "combined") {
    if (detected_path.empty() || ranked_path.empty()) {
      throw PreconditionError("--detected and --ranked are required");
    }
    reports.push_back(EvaluateCombined(detected, suggestions, gold));
  }
  std::cout << FormatReports(reports);
  Json json;
  json["schema_version"] = kSchemaVersion;
  json["reports"] = Json::array();
  for (const auto &r : reports) json["reports"].push_back(ReportJson(r));
  if (!out_path.empty()) {
    OpenOut(out_path) << json.dump(2) << "\n";
  }
  return 0;
}

int Export(const std::string &linkset_path, const std::string &format,
           const std::string &out_path) {
  LinkSet linkset = ImportJson(ReadFile(linkset_path));
  std::string body = format == "nt"    ? ExportNTriples(linkset)
                     : format == "ttl" ? ExportTurtle(linkset)
                                       : ExportJson(linkset);
  OpenOut(out_path) << body;
  return 0;
}

Service *g_service = nullptr;

void HandleSignal(int) {
  if (g_service) g_service->Stop();
}

int Serve(const std::string &host, int port, const std::string &data_dir,
          const std::string &snapshot, const std::string &dict_dir,
          const std::string &ui_dir, size_t threads, const RankerConfig &config) {
  auto index = std::make_shared<const RegistryIndex>(LoadSnapshot(snapshot));
  ServiceOptions options;
  options.data_dir = data_dir;
  options.ranker = config;
  options.threads = threads;
  if (!ui_dir.empty()) options.ui_dir = ui_dir;
  Service service(index, LoadDictionary(dict_dir), options);
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cout << "listening on " << host << ":" << port << std::endl;
  bool ok = service.Listen(host, port);
  g_service = nullptr;
  if (!ok) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Find dataset references in articles and link them to registry records"};
  app.require_subcommand(1);

  std::string endpoint, set_spec, resume, out;
  auto *harvest = app.add_subcommand("harvest", "Harvest an OAI-PMH endpoint into a snapshot");
  harvest->add_option("--endpoint", endpoint, "http(s):// or file:// endpoint")->required();
  harvest->add_option("--set", set_spec, "OAI-PMH set spec");
  harvest->add_option("--resume", resume, "resumption token to continue from");
  harvest->add_option("--out", out, "snapshot file (.jsonl)")->required();

  std::string snapshot;
  auto *info = app.add_subcommand("snapshot-info", "Record count and title-pattern statistics");
  info->add_option("snapshot", snapshot)->required()->check(CLI::ExistingFile);

  std::string out_dir, dict_dir;
  auto *build = app.add_subcommand("build-dict", "Extract abbreviations and phrases");
  build->add_option("--snapshot", snapshot)->required()->check(CLI::ExistingFile);
  build->add_option("--out-dir", out_dir)->required();

  auto *stats = app.add_subcommand("dict-stats", "Dictionary sizes and title coverage");
  stats->add_option("--snapshot", snapshot)->required()->check(CLI::ExistingFile);
  stats->add_option("--dict", dict_dir)->required()->check(CLI::ExistingDirectory);

  std::string articles;
  auto *detect = app.add_subcommand("detect", "Find dataset references in articles");
  detect->add_option("--dict", dict_dir)->required()->check(CLI::ExistingDirectory);
  detect->add_option("--articles", articles, "directory of .txt, .jsonl or one text file")
      ->required()
      ->check(CLI::ExistingPath);
  detect->add_option("--out", out)->required();

  std::string mode = "per-reference";
  RankerFlags flags;
  auto *rank = app.add_subcommand("rank", "Rank candidate datasets");
  rank->add_option("--snapshot", snapshot)->required()->check(CLI::ExistingFile);
  rank->add_option("--dict", dict_dir)->required()->check(CLI::ExistingDirectory);
  rank->add_option("--article", articles)->required()->check(CLI::ExistingPath);
  rank->add_option("--mode", mode)->check(CLI::IsMember({"per-reference", "per-feature"}));
  rank->add_option("--out", out)->required();
  flags.Register(rank);

  std::string gold, detected, ranked, phase = "all";
  auto *evaluate = app.add_subcommand("evaluate", "Score output against a gold standard");
  evaluate->add_option("--gold", gold)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--detected", detected)->check(CLI::ExistingFile);
  evaluate->add_option("--ranked", ranked)->check(CLI::ExistingFile);
  evaluate->add_option("--phase", phase)
      ->check(CLI::IsMember({"detection", "matching", "combined", "all"}));
  evaluate->add_option("--out", out, "write the reports as JSON");

  std::string linkset, format;
  auto *exporter = app.add_subcommand("export", "Serialize a link set");
  exporter->add_option("--linkset", linkset)->required()->check(CLI::ExistingFile);
  exporter->add_option("--format", format)->required()->check(CLI::IsMember({"nt", "ttl", "json"}));
  exporter->add_option("--out", out)->required();

  std::string host = "127.0.0.1", data_dir, ui_dir;
  int port = 8080;
  size_t threads = 8;
  RankerFlags serve_flags;
  auto *serve = app.add_subcommand("serve", "Run the review service");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", data_dir)->required();
  serve->add_option("--snapshot", snapshot)->required()->check(CLI::ExistingFile);
  serve->add_option("--dict", dict_dir)->required()->check(CLI::ExistingDirectory);
  serve->add_option("--ui-dir", ui_dir, "static files served under /");
  serve->add_option("--threads", threads);
  serve_flags.Register(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*harvest) return Harvest(endpoint, set_spec, resume, out);
    if (*info) return SnapshotInfo(snapshot);
    if (*build) return BuildDict(snapshot, out_dir);
    if (*stats) return DictStats(snapshot, dict_dir);
    if (*detect) return Detect(dict_dir, articles, out);
    if (*rank) return Rank(snapshot, dict_dir, articles, mode, out, flags.Resolve());
    if (*evaluate) return Evaluate(gold, detected, ranked, phase, out);
    if (*exporter) return Export(linkset, format, out);
    if (*serve) {
      return Serve(host, port, data_dir, snapshot, dict_dir, ui_dir, threads,
                   serve_flags.Resolve());
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
