//
// Copyright 2026 The perturbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// perturbkit: command-line front end. Run `perturbkit --help` for the
// subcommands. Every run writes a reproducibility header to stderr; errors
// are a single JSON line on stderr and a nonzero exit status.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "perturbkit/annotation.h"
#include "perturbkit/annotation_server.h"
#include "perturbkit/corpus.h"
#include "perturbkit/dictionary.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/normalization.h"
#include "perturbkit/perturber.h"
#include "perturbkit/random.h"
#include "perturbkit/robustness.h"
#include "perturbkit/scoring.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"
#include "perturbkit/typing.h"

namespace perturbkit {
namespace {

using Json = nlohmann::ordered_json;

constexpr char kVersion[] = "0.1.0";

// A failure that ends the run with a machine-readable error line.
struct Failure {
  std::string code;
  std::string detail;
  int exit_code = 1;
};

Failure FromStatus(const absl::Status& status) {
  std::string_view code = ErrorCode(status);
  const absl::string_view raw = status.message();
  std::string_view message(raw.data(), raw.size());
  std::string_view detail =
      message.size() > code.size() + 2 ? message.substr(code.size() + 2) : "";
  return {std::string(code.empty() ? "internal" : code), std::string(detail)};
}

template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  if (!value.ok()) throw FromStatus(value.status());
  return *std::move(value);
}

void Check(const absl::Status& status) {
  if (!status.ok()) throw FromStatus(status);
}

void RequireFile(const std::string& flag, const std::string& path) {
  if (path.empty()) throw Failure{"missing-input", "--" + flag + " is required"};
  if (!std::filesystem::exists(path)) {
    throw Failure{"missing-input", flag + ": " + path};
  }
}

void RequireValue(const std::string& flag, const std::string& value) {
  if (value.empty()) throw Failure{"bad-config", "--" + flag + " is required"};
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Failure{"io", "cannot write " + path};
}

// Prints `text` to stdout and, when `path` is set, also writes it there.
void Emit(const std::string& path, const std::string& text) {
  std::cout << text;
  if (!path.empty()) WriteText(path, text);
}

// "1..10", "3", or "1,4,9".
std::vector<uint64_t> ParseSeeds(const std::string& spec) {
  std::vector<uint64_t> seeds;
  for (absl::string_view part : absl::StrSplit(spec, ',', absl::SkipEmpty())) {
    std::vector<absl::string_view> range = absl::StrSplit(part, "..");
    uint64_t lo = 0;
    uint64_t hi = 0;
    if (range.size() == 1 && absl::SimpleAtoi(range[0], &lo)) {
      seeds.push_back(lo);
    } else if (range.size() == 2 && absl::SimpleAtoi(range[0], &lo) &&
               absl::SimpleAtoi(range[1], &hi) && lo <= hi &&
               hi - lo < 100000) {
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      throw Failure{"bad-config", "bad seed list: " + spec};
    }
  }
  if (seeds.empty()) throw Failure{"bad-config", "empty seed list"};
  return seeds;
}

std::string ConfigKey(const CLI::Option* opt) {
  std::string key = opt->get_single_name();
  for (char& c : key) {
    if (c == '-') c = '_';
  }
  return key;
}

std::string JsonScalar(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

// Fills options of `sub` that were not given on the command line (or via
// the environment) from the flat JSON config.
void ApplyConfig(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw Failure{"missing-input", "config: " + path};
  nlohmann::json config = nlohmann::json::parse(in, nullptr, false);
  if (!config.is_object()) throw Failure{"bad-config", "config must be a JSON object"};
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->get_single_name() == "help" || opt->count() > 0) continue;
    auto it = config.find(ConfigKey(opt));
    if (it == config.end()) continue;
    if (it->is_array() || it->is_object() || it->is_null()) {
      throw Failure{"bad-config", ConfigKey(opt) + " must be a scalar"};
    }
    try {
      opt->add_result(JsonScalar(*it));
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Failure{"bad-config", ConfigKey(opt) + ": " + e.what()};
    }
  }
}

// FNV-1a over the sorted effective option values of `sub`.
std::string ConfigHash(const CLI::App* sub) {
  std::map<std::string, std::string> effective;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string key = ConfigKey(opt);
    if (key == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += r + "\x1f";
    } else {
      value = opt->get_default_str();
    }
    effective[key] = value;
  }
  std::string canonical = std::string(kVersion) + "\n" + sub->get_name() + "\n";
  for (const auto& [k, v] : effective) canonical += k + "=" + v + "\n";
  return absl::StrFormat("%016x", Fnv1a64(canonical));
}

void PrintHeader(const CLI::App* sub, const std::string& seed) {
  Json header;
  header["perturbkit"] = kVersion;
  header["command"] = sub->get_name();
  header["config_hash"] = ConfigHash(sub);
  if (seed.empty()) {
    header["seed"] = nullptr;
  } else {
    header["seed"] = seed;
  }
  std::cerr << header.dump() << "\n";
}

std::string DumpReport(const Json& j) { return j.dump(2) + "\n"; }

Dictionary LoadDictionary(const std::string& path) {
  RequireFile("dict", path);
  return Unwrap(Dictionary::Load(path));
}

VisualTable LoadVisual(const std::string& path) {
  if (path.empty()) return VisualTable::Default();
  RequireFile("visual-table", path);
  return Unwrap(VisualTable::Load(path));
}

std::vector<SentenceRecord> LoadRecords(const std::string& path) {
  RequireFile("in", path);
  if (std::filesystem::path(path).extension() == ".txt") {
    return Unwrap(LoadPlainText(path));
  }
  return Unwrap(LoadDataset(path));
}

struct ScorerFlags {
  std::string kind = "lexicon";
  std::string lexicon;
  std::string endpoint;
  int timeout_ms = 5000;
  int max_in_flight = 4;

  void Register(CLI::App* sub) {
    sub->add_option("--scorer", kind, "lexicon or remote")
        ->check(CLI::IsMember({"lexicon", "remote"}))
        ->capture_default_str();
    sub->add_option("--scorer-lexicon", lexicon,
                    "Weighted toxic-term list (term<TAB>weight)");
    sub->add_option("--endpoint", endpoint, "Remote scorer base URL")
        ->envname("PERTURBKIT_SCORER_ENDPOINT");
    sub->add_option("--timeout-ms", timeout_ms, "Remote scorer timeout")
        ->envname("PERTURBKIT_SCORER_TIMEOUT_MS")
        ->capture_default_str();
    sub->add_option("--max-in-flight", max_in_flight,
                    "Concurrent remote requests")
        ->capture_default_str();
  }

  std::unique_ptr<Scorer> Make() const {
    ScorerConfig config;
    config.kind = kind == "remote" ? ScorerConfig::Kind::kRemote
                                   : ScorerConfig::Kind::kLexicon;
    if (config.kind == ScorerConfig::Kind::kLexicon) {
      RequireFile("scorer-lexicon", lexicon);
      config.lexicon_path = lexicon;
    } else {
      config.endpoint = endpoint;
    }
    config.timeout_ms = timeout_ms;
    config.max_in_flight = max_in_flight;
    return Unwrap(MakeScorer(config));
  }
};

Json ReportJson(const CleaningReport& report) {
  Json j;
  j["input_count"] = report.input_count;
  j["removed_duplicates"] = report.removed_duplicates;
  j["removed_non_english"] = report.removed_non_english;
  j["removed_empty"] = report.removed_empty;
  j["output_count"] = report.output_count;
  return j;
}

Json CountsJson(const TypeCounts& counts) {
  Json j = Json::object();
  for (const auto& [type, n] : counts) j[std::string(TypeName(type))] = n;
  return j;
}

volatile std::sig_atomic_t g_stop = 0;

int Run(int argc, char** argv) {
  CLI::App app{"Human-style text perturbation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  app.add_option("--config", config_path,
                 "Flat JSON config; keys are option names with '_' for '-'");
  app.fallthrough();

  // clean
  struct {
    std::string in, dict, out, report;
  } clean;
  CLI::App* clean_cmd =
      app.add_subcommand("clean", "Clean and filter a raw corpus");
  clean_cmd->add_option("--in", clean.in, "Raw corpus (.jsonl, or .txt)");
  clean_cmd->add_option("--dict", clean.dict, "English word list");
  clean_cmd->add_option("--out", clean.out, "Cleaned corpus (.jsonl)");
  clean_cmd->add_option("--report", clean.report, "Cleaning report (.json)");

  // build-lexicon
  struct {
    std::string in, dict, out, visual_table;
  } lex;
  CLI::App* lex_cmd = app.add_subcommand(
      "build-lexicon", "Cluster observed misspellings under dictionary words");
  lex_cmd->add_option("--in", lex.in, "Raw corpus (.jsonl, or .txt)");
  lex_cmd->add_option("--dict", lex.dict, "English word list");
  lex_cmd->add_option("--out", lex.out, "Lexicon (.jsonl)");
  lex_cmd->add_option("--visual-table", lex.visual_table,
                      "Visual similarity table (src<TAB>dst)");

  // type
  struct {
    std::string clean, perturbed, pairs, dict, visual_table;
  } type;
  CLI::App* type_cmd =
      app.add_subcommand("type", "Classify perturbations by strategy");
  type_cmd->add_option("--clean", type.clean, "Clean word");
  type_cmd->add_option("--perturbed", type.perturbed, "Perturbed word");
  type_cmd->add_option("--pairs", type.pairs,
                       "JSONL of {clean, perturbed} word pairs");
  type_cmd->add_option("--dict", type.dict, "English word list");
  type_cmd->add_option("--visual-table", type.visual_table,
                       "Visual similarity table (src<TAB>dst)");

  // perturb
  ScorerFlags perturb_scorer;
  struct {
    std::string in, lexicon, dict, visual_table, out, report;
    std::string mode = "top1";
    std::string seeds = "1..10";
    int k = 3;
    double theta = 0.1;
  } perturb;
  CLI::App* perturb_cmd = app.add_subcommand(
      "perturb", "Generate entropy-balanced perturbed sentences");
  perturb_cmd->add_option("--in", perturb.in, "Cleaned corpus (.jsonl)");
  perturb_cmd->add_option("--lexicon", perturb.lexicon, "Lexicon (.jsonl)");
  perturb_cmd->add_option("--dict", perturb.dict, "English word list");
  perturb_cmd->add_option("--visual-table", perturb.visual_table,
                          "Visual similarity table (src<TAB>dst)");
  perturb_cmd->add_option("--out", perturb.out, "Candidates (.jsonl)");
  perturb_cmd->add_option("--report", perturb.report, "Run report (.json)");
  perturb_cmd->add_option("--mode", perturb.mode, "top1 or all")
      ->check(CLI::IsMember({"top1", "all"}))
      ->capture_default_str();
  perturb_cmd->add_option("--seeds", perturb.seeds, "e.g. 1..10 or 1,2,5")
      ->capture_default_str();
  perturb_cmd->add_option("--k", perturb.k, "Perturbations per word")
      ->capture_default_str();
  perturb_cmd->add_option("--theta", perturb.theta, "Importance threshold")
      ->capture_default_str();
  perturb_scorer.Register(perturb_cmd);

  // annotate-serve
  struct {
    std::string candidates, log, host = "127.0.0.1", static_dir;
    int port = 8080;
    int assignments = 5;
    int64_t min_dwell_ms = 5000;
    int quorum = 3;
  } serve;
  CLI::App* serve_cmd = app.add_subcommand(
      "annotate-serve", "Serve the human validation HTTP API");
  serve_cmd->add_option("--candidates", serve.candidates,
                        "Candidates (.jsonl)");
  serve_cmd->add_option("--log", serve.log, "Append-only response log");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "0 picks a free port")
      ->capture_default_str();
  serve_cmd->add_option("--static-dir", serve.static_dir,
                        "UI bundle served at /");
  serve_cmd->add_option("--assignments", serve.assignments,
                        "Annotators per task")
      ->capture_default_str();
  serve_cmd->add_option("--min-dwell-ms", serve.min_dwell_ms)
      ->capture_default_str();
  serve_cmd->add_option("--quorum", serve.quorum)->capture_default_str();

  // aggregate
  struct {
    std::string candidates, log, out, report;
    int assignments = 5;
    int quorum = 3;
  } agg;
  CLI::App* agg_cmd = app.add_subcommand(
      "aggregate", "Majority-vote responses into a retained set");
  agg_cmd->add_option("--candidates", agg.candidates, "Candidates (.jsonl)");
  agg_cmd->add_option("--log", agg.log, "Response log (.jsonl)");
  agg_cmd->add_option("--out", agg.out, "Retained candidates (.jsonl)");
  agg_cmd->add_option("--report", agg.report, "Retention stats (.json)");
  agg_cmd->add_option("--assignments", agg.assignments)->capture_default_str();
  agg_cmd->add_option("--quorum", agg.quorum)->capture_default_str();

  // norm-eval
  struct {
    std::string pairs, frequencies, visual_table, report, csv;
    std::string corrector = "aware";
    bool conservative = false;
  } norm;
  CLI::App* norm_cmd = app.add_subcommand(
      "norm-eval", "Per-type accuracy of the spell corrector");
  norm_cmd->add_option("--pairs", norm.pairs,
                       "JSONL word pairs or a candidates file");
  norm_cmd->add_option("--frequencies", norm.frequencies,
                       "Word frequency table (word<TAB>count)");
  norm_cmd->add_option("--visual-table", norm.visual_table,
                       "Visual similarity table (src<TAB>dst)");
  norm_cmd->add_option("--corrector", norm.corrector, "aware or plain")
      ->check(CLI::IsMember({"aware", "plain"}))
      ->capture_default_str();
  norm_cmd->add_flag("--conservative", norm.conservative,
                     "Leave low-confidence words unchanged");
  norm_cmd->add_option("--report", norm.report, "Report (.json)");
  norm_cmd->add_option("--csv", norm.csv, "Table row (.csv)");

  // robust-eval
  ScorerFlags robust_scorer;
  struct {
    std::string pairs, report, curves;
    double grid_step = 0.01;
  } robust;
  CLI::App* robust_cmd = app.add_subcommand(
      "robust-eval", "Accuracy-vs-threshold curves and AUC difference");
  robust_cmd->add_option("--pairs", robust.pairs,
                         "JSONL sentence pairs or a candidates file");
  robust_cmd->add_option("--grid-step", robust.grid_step)
      ->capture_default_str();
  robust_cmd->add_option("--report", robust.report, "Report (.json)");
  robust_cmd->add_option("--curves", robust.curves, "Curves (.csv)");
  robust_scorer.Register(robust_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw Failure{"bad-config", e.what(), 2};
  }

  CLI::App* sub = app.get_subcommands().front();
  ApplyConfig(sub, config_path);

  if (sub == clean_cmd) {
    PrintHeader(sub, "");
    RequireValue("out", clean.out);
    Dictionary dict = LoadDictionary(clean.dict);
    std::vector<SentenceRecord> records = LoadRecords(clean.in);
    FilterResult result = Unwrap(FilterCorpus(records, dict));
    Check(WriteDataset(clean.out, result.records));
    Emit(clean.report, DumpReport(ReportJson(result.report)));
  } else if (sub == lex_cmd) {
    PrintHeader(sub, "");
    RequireValue("out", lex.out);
    Dictionary dict = LoadDictionary(lex.dict);
    VisualTable visual = LoadVisual(lex.visual_table);
    std::vector<std::string> tokens;
    for (const SentenceRecord& r : LoadRecords(lex.in)) {
      for (const std::string& word : SplitWords(r.text)) {
        std::string_view core = SplitEdgePunctuation(word).core;
        if (!core.empty()) tokens.emplace_back(core);
      }
    }
    Lexicon lexicon = Unwrap(BuildLexicon(tokens, dict, visual));
    Check(lexicon.Save(lex.out));
    Json j;
    j["tokens"] = tokens.size();
    j["clusters"] = lexicon.size();
    j["perturbations"] = lexicon.perturbation_count();
    std::cout << DumpReport(j);
  } else if (sub == type_cmd) {
    PrintHeader(sub, "");
    Dictionary dict = LoadDictionary(type.dict);
    VisualTable visual = LoadVisual(type.visual_table);
    std::vector<TextPair> pairs;
    if (!type.pairs.empty()) {
      RequireFile("pairs", type.pairs);
      pairs = Unwrap(LoadTextPairs(type.pairs));
    } else {
      RequireValue("clean", type.clean);
      RequireValue("perturbed", type.perturbed);
      pairs.push_back({type.clean, type.perturbed});
    }
    for (const TextPair& p : pairs) {
      Json j;
      j["clean"] = p.clean;
      j["perturbed"] = p.perturbed;
      absl::StatusOr<PerturbationType> t =
          Classify(p.clean, p.perturbed, dict, visual);
      if (t.ok()) {
        j["type"] = std::string(TypeName(*t));
      } else {
        j["type"] = nullptr;
        j["error"] = std::string(ErrorCode(t.status()));
      }
      std::cout << j.dump(-1, ' ', false, Json::error_handler_t::replace)
                << "\n";
    }
  } else if (sub == perturb_cmd) {
    PerturbConfig config;
    config.k = perturb.k;
    config.theta = perturb.theta;
    config.seeds = ParseSeeds(perturb.seeds);
    config.mode =
        perturb.mode == "all" ? PerturbMode::kAllImportant : PerturbMode::kTop1;
    PrintHeader(sub, perturb.seeds);
    Check(config.Validate());
    RequireValue("out", perturb.out);
    Dictionary dict = LoadDictionary(perturb.dict);
    VisualTable visual = LoadVisual(perturb.visual_table);
    RequireFile("lexicon", perturb.lexicon);
    Lexicon lexicon = Unwrap(Lexicon::Load(perturb.lexicon));
    std::vector<SentenceRecord> records = LoadRecords(perturb.in);
    std::unique_ptr<Scorer> scorer = perturb_scorer.Make();
    Perturber perturber(*scorer, lexicon, dict, visual);
    BalancedResult result = Unwrap(perturber.GenerateBalanced(records, config));
    Check(WriteCandidates(perturb.out, result.candidates));
    std::cerr << Json{{"chosen_seed", result.chosen_seed}}.dump() << "\n";

    Json j;
    j["chosen_seed"] = result.chosen_seed;
    j["entropy"] = result.entropy;
    j["degenerate"] = result.degenerate;
    j["candidates"] = result.candidates.size();
    TypeCounts counts;
    for (const PerturbedCandidate& c : result.candidates) ++counts[c.type];
    j["type_counts"] = CountsJson(counts);
    Json runs = Json::array();
    for (const BalancedRun& run : result.runs) {
      Json r;
      r["seed"] = run.seed;
      r["candidates"] = run.candidates;
      r["entropy"] = run.entropy;
      r["type_counts"] = CountsJson(run.counts);
      runs.push_back(r);
    }
    j["runs"] = runs;
    Emit(perturb.report, DumpReport(j));
  } else if (sub == serve_cmd) {
    PrintHeader(sub, "");
    RequireFile("candidates", serve.candidates);
    std::vector<PerturbedCandidate> candidates =
        Unwrap(LoadCandidates(serve.candidates));
    AnnotationOptions options;
    options.assignments_required = serve.assignments;
    options.min_dwell_ms = serve.min_dwell_ms;
    options.aggregate.quorum = serve.quorum;
    options.log_path = serve.log;
    AnnotationService service = Unwrap(AnnotationService::Create(
        candidates, options, [] {
          return std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::system_clock::now().time_since_epoch())
              .count();
        }));
    AnnotationServer server(&service, serve.static_dir);
    int port = serve.port;
    if (port == 0) {
      port = server.BindToAnyPort(serve.host);
      if (port < 0) throw Failure{"io", "cannot bind " + serve.host};
    } else if (!server.Bind(serve.host, port)) {
      throw Failure{"io", absl::StrFormat("cannot bind %s:%d", serve.host,
                                          port)};
    }
    std::cout << Json{{"listening", serve.host}, {"port", port}}.dump()
              << std::endl;
    std::signal(SIGINT, [](int) { g_stop = 1; });
    std::signal(SIGTERM, [](int) { g_stop = 1; });
    std::thread watcher([&server] {
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.Stop();
    });
    server.ListenAfterBind();
    g_stop = 1;
    watcher.join();
  } else if (sub == agg_cmd) {
    PrintHeader(sub, "");
    RequireFile("candidates", agg.candidates);
    RequireFile("log", agg.log);
    if (agg.quorum <= 0 || agg.assignments <= 0) {
      throw Failure{"bad-config", "quorum and assignments must be positive"};
    }
    std::vector<PerturbedCandidate> candidates =
        Unwrap(LoadCandidates(agg.candidates));
    std::vector<AnnotationTask> tasks = MakeTasks(candidates, agg.assignments);
    std::vector<LoggedResponse> log = Unwrap(LoadResponseLog(agg.log));
    AggregateResult result = Aggregate(tasks, log, {agg.quorum});
    if (!agg.out.empty()) Check(WriteCandidates(agg.out, result.retained));
    Emit(agg.report, RetentionStatsJson(result.stats));
  } else if (sub == norm_cmd) {
    PrintHeader(sub, "");
    RequireFile("pairs", norm.pairs);
    RequireFile("frequencies", norm.frequencies);
    VisualTable visual = LoadVisual(norm.visual_table);
    FrequencyTable table = Unwrap(FrequencyTable::Load(norm.frequencies));
    std::vector<NormalizationPair> pairs =
        Unwrap(LoadNormalizationPairs(norm.pairs));
    CorrectorOptions options;
    options.perturbation_aware = norm.corrector == "aware";
    options.always_guess = !norm.conservative;
    SpellCorrector corrector(table, options, visual);
    NormalizationReport report =
        Unwrap(EvaluateNormalization(pairs, corrector));
    Emit(norm.report, NormalizationReportJson(report, norm.corrector));
    if (!norm.csv.empty()) {
      WriteText(norm.csv, NormalizationReportCsv(report, norm.corrector));
    }
  } else if (sub == robust_cmd) {
    PrintHeader(sub, "");
    RequireFile("pairs", robust.pairs);
    std::vector<double> grid = Unwrap(MakeGrid(robust.grid_step));
    std::vector<TextPair> pairs = Unwrap(LoadTextPairs(robust.pairs));
    std::unique_ptr<Scorer> scorer = robust_scorer.Make();
    BenchmarkResult result = Unwrap(RunBenchmark(pairs, *scorer, grid));
    Emit(robust.report, RobustnessReportJson(result.report));
    if (!robust.curves.empty()) {
      WriteText(robust.curves, CurvesCsv(result.clean, result.perturbed));
    }
  }
  return 0;
}

}  // namespace
}  // namespace perturbkit

int main(int argc, char** argv) {
  try {
    return perturbkit::Run(argc, argv);
  } catch (const perturbkit::Failure& failure) {
    nlohmann::ordered_json j;
    j["error"] = failure.code;
    if (!failure.detail.empty()) j["detail"] = failure.detail;
    std::cerr << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
              << "\n";
    return failure.exit_code;
  }
}
