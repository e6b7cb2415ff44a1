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

// Acceptance suite: one check per release criterion, reported as a
// PASS/FAIL line each. Pass --cli <path> to drive the end-to-end check
// through the command-line tool; without it the library pipeline is used.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "fuzz.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "perturbkit/annotation.h"
#include "perturbkit/corpus.h"
#include "perturbkit/generators.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/normalization.h"
#include "perturbkit/perturber.h"
#include "perturbkit/robustness.h"
#include "perturbkit/scoring.h"
#include "perturbkit/status.h"
#include "perturbkit/typing.h"
#include "server_harness.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::DataPath;
using ::perturbkit::testing::OracleCandidate;
using ::perturbkit::testing::OraclePerturbAll;
using ::perturbkit::testing::ReadFile;
using ::perturbkit::testing::ServerHarness;
using ::perturbkit::testing::TableScorer;
using ::perturbkit::testing::WriteFileOrDie;

std::string* cli_path = new std::string();

const Dictionary& Words() {
  static const Dictionary* const kWords =
      new Dictionary(*Dictionary::Load(DataPath("words.txt")));
  return *kWords;
}

TEST(Acceptance, TaxonomyGolden) {
  const Dictionary& dict = Words();
  auto type = [&](std::string_view clean, std::string_view perturbed) {
    absl::StatusOr<PerturbationType> t = Classify(clean, perturbed, dict);
    return t.ok() ? std::string(TypeName(*t)) : t.status().ToString();
  };
  EXPECT_EQ(type("stupid", "stuppppid"), "RepeatChar");
  EXPECT_EQ(type("stupid", "stupd"), "Abbr");
  EXPECT_EQ(type("stupid", "5tupid"), "SpecialChar");
  EXPECT_EQ(type("stupid", "st*pid"), "SpecialChar");
  EXPECT_EQ(type("stupid", "sTuPId"), "MixedCase");
  EXPECT_EQ(type("republicans", "repubLIEcans"), "MixedCasePlus");
}

TEST(Acceptance, TaxonomyRoundTrip) {
  absl::StatusOr<Dictionary> dict = Dictionary::Load(DataPath("words_1000.txt"));
  ASSERT_TRUE(dict.ok());
  ASSERT_EQ(dict->size(), 1000u);
  int total = 0;
  int matched = 0;
  for (const std::string& word : dict->words()) {
    for (PerturbationType type : kBaseTypes) {
      Rng rng(DeriveSeed(2, word, static_cast<uint64_t>(type)));
      std::optional<std::string> variant = GenerateVariant(type, word, *dict, rng);
      if (!variant) continue;
      ++total;
      absl::StatusOr<PerturbationType> got = Classify(word, *variant, *dict);
      if (got.ok() && *got == type) {
        ++matched;
      } else {
        std::cout << "collision: " << word << " -> " << *variant << " as "
                  << TypeName(type) << ", got "
                  << (got.ok() ? std::string(TypeName(*got))
                               : got.status().ToString())
                  << "\n";
      }
    }
  }
  std::cout << "round trip: " << matched << "/" << total << "\n";
  EXPECT_GT(total, 4000);
  EXPECT_GE(static_cast<double>(matched), 0.99 * total);
}

TEST(Acceptance, PerturbAllOracle) {
  const std::vector<std::pair<std::string, double>> terms = {
      {"idiot", 0.83}, {"stupid", 0.61}, {"moron", 0.47}, {"dumb", 0.29},
      {"loser", 0.17}, {"trash", 0.11}};
  const std::vector<std::string> vocabulary = {
      "idiot", "stupid", "moron", "dumb", "loser", "trash", "you", "are",
      "so", "the", "big", "people"};
  Dictionary dict{"idiot", "stupid", "moron", "dumb", "loser", "trash", "you",
                  "are", "so", "the", "big", "people"};
  Lexicon lexicon;
  const std::map<std::string, std::vector<std::string>> pools = {
      {"idiot", {"idiiot", "1diot", "IDIOT", "idot", "id!ot"}},
      {"stupid", {"stuppid", "stupd", "5tupid", "StUpId"}},
      {"moron", {"mor0n", "MORON", "moooron", "mrn", "m0r0n"}},
      {"dumb", {"dum", "DUMB", "dumbbb", "qqq"}},
      {"trash", {"tr4sh", "trsh"}},
      {"people", {"ppl", "peeople", "PEOPLE"}},
      {"you", {"yu", "u"}}};
  for (const auto& [clean, perturbations] : pools) {
    for (const std::string& p : perturbations) lexicon.Add(clean, p);
  }
  LexiconScorer scorer(terms);
  Perturber perturber(scorer, lexicon, dict);
  std::mt19937_64 gen(2027);
  std::uniform_int_distribution<size_t> word(0, vocabulary.size() - 1);
  std::uniform_int_distribution<int> length(1, 8);
  int compared = 0;
  int nonempty = 0;
  for (double theta : {0.0, 0.1, 0.5}) {
    for (int k : {1, 3}) {
      PerturbConfig config;
      config.theta = theta;
      config.k = k;
      for (int s = 0; s < 200; ++s) {
        std::vector<std::string> words;
        for (int n = length(gen); n > 0; --n) words.push_back(vocabulary[word(gen)]);
        SentenceRecord record;
        record.id = "s" + std::to_string(s);
        record.text = ::perturbkit::testing::Join(words);
        const uint64_t seed = gen() % 1000;
        auto got = perturber.PerturbAll(record, config, seed);
        ASSERT_TRUE(got.ok()) << got.status();
        std::set<OracleCandidate> actual;
        for (const PerturbedCandidate& c : *got) {
          actual.emplace(c.target_index, c.perturbed_word);
        }
        ASSERT_EQ(actual.size(), got->size());
        EXPECT_EQ(actual, OraclePerturbAll(record.id, words, scorer, lexicon,
                                           dict, theta, k, seed))
            << record.text << " theta=" << theta << " k=" << k;
        ++compared;
        nonempty += !actual.empty();
      }
    }
  }
  EXPECT_EQ(compared, 1200);
  EXPECT_GT(nonempty, 600);
}

TEST(Acceptance, EntropySelection) {
  Dictionary dict{"you", "are", "idiot", "stupid", "moron", "so", "a"};
  Lexicon lexicon;
  for (const char* p : {"idiiot", "iddiot", "id1ot", "IDIOT", "idot", "1d10t"}) {
    lexicon.Add("idiot", p);
  }
  for (const char* p : {"stupd", "stuuupid", "STUPID", "st*pid"}) {
    lexicon.Add("stupid", p);
  }
  for (const char* p : {"mor0n", "moron!", "MoRoN", "mrn", "moroon"}) {
    lexicon.Add("moron", p);
  }
  LexiconScorer scorer({{"idiot", 0.8}, {"stupid", 0.6}, {"moron", 0.7}});
  Perturber perturber(scorer, lexicon, dict);
  const std::vector<std::string> targets = {"idiot", "stupid", "moron"};
  std::vector<SentenceRecord> corpus;
  for (int i = 0; i < 60; ++i) {
    SentenceRecord r;
    r.id = "c" + std::to_string(i);
    r.text = "you are so " + targets[i % 3];
    corpus.push_back(r);
  }
  PerturbConfig config;
  config.k = 1;
  auto result = perturber.GenerateBalanced(corpus, config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->runs.size(), 10u);

  // Re-run every seed independently and recompute its entropy.
  std::set<double> entropies;
  for (uint64_t seed : config.seeds) {
    PerturbConfig single = config;
    single.seeds = {seed};
    auto run = perturber.GenerateBalanced(corpus, single);
    ASSERT_TRUE(run.ok());
    TypeCounts counts;
    for (const auto& c : run->candidates) ++counts[c.type];
    const double entropy = *TypeDistributionEntropy(counts);
    entropies.insert(entropy);
    EXPECT_GE(result->entropy, entropy) << "seed " << seed;
    if (seed == result->chosen_seed) {
      EXPECT_EQ(run->candidates, result->candidates);
    }
  }
  std::cout << "chosen seed " << result->chosen_seed << " entropy "
            << result->entropy << " over " << entropies.size()
            << " distinct values\n";
}

TEST(Acceptance, WordImportance) {
  LexiconScorer scorer({{"idiot", 0.8}, {"stupid", 0.6}});
  auto importance = WordImportance(SplitWords("stupid idiot"), scorer);
  ASSERT_TRUE(importance.ok());
  ASSERT_EQ(importance->size(), 2u);
  EXPECT_NEAR((*importance)[0], 0.12, 1e-9);
  EXPECT_NEAR((*importance)[1], 0.32, 1e-9);
}

TEST(Acceptance, NormalizerAnalytic) {
  absl::StatusOr<FrequencyTable> table =
      FrequencyTable::Load(DataPath("frequencies.tsv"));
  ASSERT_TRUE(table.ok());
  SpellCorrector corrector(*table);
  EXPECT_EQ(corrector.Correct("stupd"), "stupid");
  EXPECT_EQ(corrector.Correct("sTuPId"), "stupid");

  // MixedCase on in-table words: random case flips of 300 words.
  std::mt19937_64 rng(8);
  std::vector<NormalizationPair> pairs;
  const std::vector<std::string>& words = Words().words();
  while (pairs.size() < 300) {
    const std::string& clean = words[rng() % words.size()];
    if (!table->Contains(clean)) continue;
    std::string perturbed = clean;
    bool changed = false;
    for (char& c : perturbed) {
      if (c >= 'a' && c <= 'z' && rng() % 2) {
        c = static_cast<char>(c - 'a' + 'A');
        changed = true;
      }
    }
    if (changed) pairs.push_back({clean, perturbed, PerturbationType::kMixedCase});
  }
  auto report = EvaluateNormalization(pairs, corrector);
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->accuracy.at(PerturbationType::kMixedCase), 1.0);

  const std::string alphabet = "abcdeghiklmnoprstuwy0134$@*!'ABZ";
  for (int i = 0; i < 1000; ++i) {
    std::string word;
    for (int n = 1 + static_cast<int>(rng() % 9); n > 0; --n) {
      word += alphabet[rng() % alphabet.size()];
    }
    const std::string once = corrector.Correct(word);
    EXPECT_EQ(corrector.Correct(once), once) << word;
  }
}

TEST(Acceptance, RobustnessMath) {
  std::map<std::string, double, std::less<>> scores;
  std::vector<TextPair> pairs;
  for (int i = 0; i < 50; ++i) {
    const std::string c = "c" + std::to_string(i);
    const std::string p = "p" + std::to_string(i);
    scores[c] = 0.9;
    scores[p] = 0.4;
    pairs.push_back({c, p});
  }
  TableScorer stub(scores);
  const std::vector<double> grid = *MakeGrid(0.01);
  auto result = RunBenchmark(pairs, stub, grid);
  ASSERT_TRUE(result.ok());
  EXPECT_NEAR(result->report.auc_diff, 0.5, 0.01);

  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> sample(1 + rng() % 200);
    for (double& s : sample) s = unit(rng);
    auto curve = AccuracyCurve(sample, grid);
    ASSERT_TRUE(curve.ok());
    EXPECT_TRUE(std::is_sorted(curve->accuracy.rbegin(), curve->accuracy.rend()));
  }
  const std::vector<double> three = {0.9, 0.9, 0.4};
  EXPECT_EQ(*AccuracyAtThreshold(three, 0.5), 2.0 / 3.0);
}

TEST(Acceptance, CleaningFuzz) {
  std::mt19937_64 rng(424242);
  std::vector<SentenceRecord> records;
  for (int i = 0; i < 10000; ++i) {
    SentenceRecord r;
    r.id = std::to_string(i);
    r.text = ::perturbkit::testing::RandomMessyString(rng);
    if (i % 50 == 0 && !records.empty()) r.text = records.back().text;
    absl::StatusOr<std::string> once = CleanText(r.text);
    if (once.ok()) {
      EXPECT_EQ(*CleanText(*once), *once) << r.text;
    } else {
      EXPECT_EQ(ErrorCode(once.status()), "empty-after-clean");
    }
    records.push_back(std::move(r));
  }
  Dictionary dict{"a", "z", "q", "idiot", "stupid"};
  auto result = FilterCorpus(records, dict);
  ASSERT_TRUE(result.ok());
  const CleaningReport& report = result->report;
  EXPECT_EQ(report.input_count, 10000);
  EXPECT_EQ(report.output_count, static_cast<int64_t>(result->records.size()));
  EXPECT_EQ(report.output_count, report.input_count - report.removed_duplicates -
                                     report.removed_non_english -
                                     report.removed_empty);
  EXPECT_GT(report.removed_duplicates, 0);
  EXPECT_GT(report.removed_empty, 0);
  EXPECT_GT(report.output_count, 0);
}

// --- end-to-end determinism ---

const char* const kOutputs[] = {
    "clean.jsonl",       "clean_report.json",  "lexicon.jsonl",
    "candidates.jsonl",  "perturb_report.json", "norm_report.json",
    "norm.csv",          "robust_report.json", "curves.csv",
    "retained.jsonl",    "retention.json"};

// Three accepted high-quality answers for the first task.
std::string ScriptedLog(const std::string& candidates_path) {
  auto candidates = LoadCandidates(candidates_path);
  if (!candidates.ok() || candidates->empty()) return "";
  std::string log;
  for (const char* who : {"w1", "w2", "w3"}) {
    LoggedResponse entry;
    entry.response = {"task-000001", who, (*candidates)[0].target_index,
                      Verdict::kHighQuality, 6000, 1000};
    log += ResponseLogLine(entry);
  }
  return log;
}

int Run(const std::string& command) {
  const int rc = std::system(command.c_str());
  if (rc != 0) std::cout << "command failed (" << rc << "): " << command << "\n";
  return rc;
}

void RunCliPipeline(const std::filesystem::path& dir) {
  const std::string cli = *cli_path;
  const std::string d = dir.string() + "/";
  const std::string words = DataPath("words.txt");
  const std::string quiet = " >/dev/null 2>>" + d + "stderr.txt";
  ASSERT_EQ(Run(cli + " clean --in " + DataPath("raw_corpus.jsonl") +
                " --dict " + words + " --out " + d + "clean.jsonl --report " +
                d + "clean_report.json" + quiet),
            0);
  ASSERT_EQ(Run(cli + " build-lexicon --in " + DataPath("raw_corpus.jsonl") +
                " --dict " + words + " --out " + d + "lexicon.jsonl" + quiet),
            0);
  ASSERT_EQ(Run(cli + " perturb --in " + d + "clean.jsonl --lexicon " + d +
                "lexicon.jsonl --dict " + words + " --scorer-lexicon " +
                DataPath("toxic_terms.tsv") + " --out " + d +
                "candidates.jsonl --report " + d + "perturb_report.json" +
                quiet),
            0);
  ASSERT_EQ(Run(cli + " norm-eval --pairs " + d + "candidates.jsonl" +
                " --frequencies " + DataPath("frequencies.tsv") +
                " --report " + d + "norm_report.json --csv " + d + "norm.csv" +
                quiet),
            0);
  ASSERT_EQ(Run(cli + " robust-eval --pairs " + d + "candidates.jsonl" +
                " --scorer-lexicon " + DataPath("toxic_terms.tsv") +
                " --report " + d + "robust_report.json --curves " + d +
                "curves.csv" + quiet),
            0);
  const std::string log = ScriptedLog(d + "candidates.jsonl");
  ASSERT_FALSE(log.empty()) << "pipeline produced no candidates";
  WriteFileOrDie(d + "responses.jsonl", log);
  ASSERT_EQ(Run(cli + " aggregate --candidates " + d + "candidates.jsonl" +
                " --log " + d + "responses.jsonl --out " + d +
                "retained.jsonl --report " + d + "retention.json" + quiet),
            0);
}

void RunLibraryPipeline(const std::filesystem::path& dir) {
  const std::string d = dir.string() + "/";
  const Dictionary& words = Words();
  auto raw = LoadDataset(DataPath("raw_corpus.jsonl"));
  ASSERT_TRUE(raw.ok());
  auto filtered = FilterCorpus(*raw, words);
  ASSERT_TRUE(filtered.ok());
  ASSERT_TRUE(WriteDataset(d + "clean.jsonl", filtered->records).ok());
  const CleaningReport& r = filtered->report;
  WriteFileOrDie(d + "clean_report.json",
                 absl::StrCat(r.input_count, " ", r.removed_duplicates, " ",
                              r.removed_non_english, " ", r.removed_empty, " ",
                              r.output_count));
  std::vector<std::string> tokens;
  for (const SentenceRecord& record : *raw) {
    for (const std::string& w : SplitWords(record.text)) {
      tokens.emplace_back(SplitEdgePunctuation(w).core);
    }
  }
  auto lexicon = BuildLexicon(tokens, words);
  ASSERT_TRUE(lexicon.ok());
  ASSERT_TRUE(lexicon->Save(d + "lexicon.jsonl").ok());
  auto scorer = LexiconScorer::Load(DataPath("toxic_terms.tsv"));
  ASSERT_TRUE(scorer.ok());
  Perturber perturber(*scorer, *lexicon, words);
  auto balanced = perturber.GenerateBalanced(filtered->records, {});
  ASSERT_TRUE(balanced.ok()) << balanced.status();
  ASSERT_TRUE(WriteCandidates(d + "candidates.jsonl", balanced->candidates).ok());
  WriteFileOrDie(d + "perturb_report.json",
                 absl::StrCat(balanced->chosen_seed, " ", balanced->entropy));
  auto table = FrequencyTable::Load(DataPath("frequencies.tsv"));
  ASSERT_TRUE(table.ok());
  SpellCorrector corrector(*table);
  auto pairs = LoadNormalizationPairs(d + "candidates.jsonl");
  ASSERT_TRUE(pairs.ok());
  auto norm = EvaluateNormalization(*pairs, corrector);
  ASSERT_TRUE(norm.ok());
  WriteFileOrDie(d + "norm_report.json", NormalizationReportJson(*norm, "aware"));
  WriteFileOrDie(d + "norm.csv", NormalizationReportCsv(*norm, "aware"));
  auto text_pairs = LoadTextPairs(d + "candidates.jsonl");
  ASSERT_TRUE(text_pairs.ok());
  auto robust = RunBenchmark(*text_pairs, *scorer, *MakeGrid(0.01));
  ASSERT_TRUE(robust.ok());
  WriteFileOrDie(d + "robust_report.json", RobustnessReportJson(robust->report));
  WriteFileOrDie(d + "curves.csv", CurvesCsv(robust->clean, robust->perturbed));
  WriteFileOrDie(d + "responses.jsonl", ScriptedLog(d + "candidates.jsonl"));
  auto log = LoadResponseLog(d + "responses.jsonl");
  ASSERT_TRUE(log.ok());
  std::vector<AnnotationTask> tasks = MakeTasks(balanced->candidates);
  AggregateResult aggregate = Aggregate(tasks, *log);
  ASSERT_TRUE(WriteCandidates(d + "retained.jsonl", aggregate.retained).ok());
  WriteFileOrDie(d + "retention.json", RetentionStatsJson(aggregate.stats));
}

TEST(Acceptance, EndToEndDeterminism) {
  const std::filesystem::path root =
      std::filesystem::path(::testing::TempDir()) / "perturbkit-e2e";
  std::filesystem::remove_all(root);
  std::vector<std::filesystem::path> runs = {root / "run1", root / "run2"};
  for (const auto& dir : runs) {
    std::filesystem::create_directories(dir);
    if (cli_path->empty()) {
      RunLibraryPipeline(dir);
    } else {
      RunCliPipeline(dir);
    }
    if (::testing::Test::HasFatalFailure()) return;
  }
  std::cout << "pipeline via " << (cli_path->empty() ? "library" : *cli_path)
            << "\n";
  for (const char* name : kOutputs) {
    const std::string a = ReadFile((runs[0] / name).string());
    const std::string b = ReadFile((runs[1] / name).string());
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, b) << name << " differs between runs";
  }
}

// --- annotation replay over HTTP ---

struct Vote {
  std::string task_id;
  std::string annotator;
  Verdict verdict;
};

TEST(Acceptance, AnnotationReplay) {
  constexpr int kTasks = 6;
  std::vector<PerturbedCandidate> candidates;
  for (int i = 0; i < kTasks; ++i) {
    PerturbedCandidate c;
    c.record_id = "r" + std::to_string(i);
    c.clean_text = "you are a stupid person";
    c.perturbed_text = "you are a stupd person";
    c.target_index = 3;
    c.clean_word = "stupid";
    c.perturbed_word = "stupd";
    c.type = i % 3 == 0 ? PerturbationType::kAbbr : PerturbationType::kMixed;
    candidates.push_back(c);
  }
  // Five careful annotators fill every task's five slots, so every
  // schedule ends with the same accepted set. Two careless ones click the
  // wrong word and vote high-quality everywhere.
  const std::vector<std::string> careful = {"a0", "a1", "a2", "a3", "a4"};
  const std::vector<std::string> careless = {"x0", "x1"};
  auto verdict_of = [](int annotator, int task) {
    return (annotator * 3 + task * 5) % 4 < 2 ? Verdict::kHighQuality
                                               : Verdict::kLowQuality;
  };
  // Majority of the careful votes, computed directly.
  std::set<std::string> expected_retained;
  for (int t = 0; t < kTasks; ++t) {
    int high = 0;
    for (int a = 0; a < 5; ++a) high += verdict_of(a, t) == Verdict::kHighQuality;
    if (2 * high > 5) expected_retained.insert(candidates[t].record_id);
  }
  ASSERT_FALSE(expected_retained.empty());
  ASSERT_LT(expected_retained.size(), static_cast<size_t>(kTasks));

  std::string reference_stats;
  std::mt19937_64 rng(31337);
  for (int schedule = 0; schedule < 12; ++schedule) {
    std::atomic<int64_t> now{0};
    AnnotationOptions options;
    options.log_path = (std::filesystem::path(::testing::TempDir()) /
                        ("replay-" + std::to_string(schedule) + ".jsonl"))
                           .string();
    std::filesystem::remove(options.log_path);
    auto service = AnnotationService::Create(candidates, options,
                                             [&now] { return now.load(); });
    ASSERT_TRUE(service.ok());
    std::set<std::string> failed;
    {
      ServerHarness http(&*service);
      // Random interleaving: pick any annotator with work left each step.
      std::vector<std::string> active = careful;
      active.insert(active.end(), careless.begin(), careless.end());
      while (!active.empty()) {
        const size_t pick = rng() % active.size();
        const std::string who = active[pick];
        auto next = http.Next(who);
        if (next.status == 404) {
          active.erase(active.begin() + static_cast<long>(pick));
          continue;
        }
        ASSERT_EQ(next.status, 200);
        const std::string task_id = next.body["task_id"];
        const int task = std::stoi(task_id.substr(5)) - 1;
        const bool sloppy = who[0] == 'x';
        now += 5000 + static_cast<int64_t>(rng() % 3000);
        auto reply = http.Respond(
            task_id, who, sloppy ? 0 : 3,
            sloppy ? "high-quality"
                   : std::string(VerdictName(verdict_of(who[1] - '0', task))));
        ASSERT_EQ(reply.status, 200) << reply.body.dump();
        if (sloppy) {
          EXPECT_EQ(reply.body["reason"], "attention-failed");
          failed.insert(who);
          // Flagged at once: nothing more is dispatched.
          EXPECT_EQ(http.Next(who).status, 404);
        } else {
          EXPECT_EQ(reply.body["status"], "accepted");
        }
      }
      auto stats = http.Get("/api/stats");
      ASSERT_EQ(stats.status, 200);
      EXPECT_EQ(stats.body["attention_failures"], 2);
    }
    EXPECT_EQ(failed.size(), careless.size());
    for (const std::string& who : careless) EXPECT_TRUE(service->IsBlocked(who));

    AggregateResult live = service->Aggregate();
    std::set<std::string> retained;
    for (const auto& c : live.retained) retained.insert(c.record_id);
    EXPECT_EQ(retained, expected_retained) << "schedule " << schedule;

    // Attention failures never enter the retained computation.
    std::vector<LoggedResponse> without_failures;
    for (const LoggedResponse& e : service->log()) {
      if (e.status != ResponseStatus::kAttentionFailed) {
        without_failures.push_back(e);
      }
    }
    AggregateResult filtered =
        Aggregate(service->tasks(), without_failures, options.aggregate);
    EXPECT_EQ(filtered.retained, live.retained);

    // Replaying the log (shuffled) gives the same answer.
    auto log = LoadResponseLog(options.log_path);
    ASSERT_TRUE(log.ok());
    ASSERT_EQ(log->size(), service->log().size());
    std::vector<LoggedResponse> shuffled = *log;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    AggregateResult replayed =
        Aggregate(MakeTasks(candidates), shuffled, options.aggregate);
    EXPECT_EQ(replayed.retained.size(), live.retained.size());
    std::set<std::string> replayed_ids;
    for (const auto& c : replayed.retained) replayed_ids.insert(c.record_id);
    EXPECT_EQ(replayed_ids, retained);
    EXPECT_EQ(RetentionStatsJson(replayed.stats), RetentionStatsJson(live.stats));

    // And a restarted server serves identical stats.
    auto restarted = AnnotationService::Create(candidates, options,
                                               [&now] { return now.load(); });
    ASSERT_TRUE(restarted.ok());
    EXPECT_EQ(RetentionStatsJson(restarted->Aggregate().stats),
              RetentionStatsJson(live.stats));
    EXPECT_TRUE(restarted->IsBlocked("x0"));

    const std::string stats = RetentionStatsJson(live.stats);
    if (schedule == 0) reference_stats = stats;
    EXPECT_EQ(stats, reference_stats) << "schedule " << schedule;
  }
}

// Maps each check to the criterion it certifies and prints one line per
// criterion after the run.
class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    static const std::map<std::string, std::string> kCriteria = {
        {"TaxonomyGolden", "taxonomy-golden-suite"},
        {"TaxonomyRoundTrip", "taxonomy-round-trip"},
        {"PerturbAllOracle", "perturb-all-oracle-equivalence"},
        {"EntropySelection", "entropy-seed-selection"},
        {"WordImportance", "word-importance"},
        {"NormalizerAnalytic", "normalizer-analytic-cases"},
        {"RobustnessMath", "robustness-math"},
        {"CleaningFuzz", "cleaning-idempotence-and-report"},
        {"EndToEndDeterminism", "end-to-end-determinism"},
        {"AnnotationReplay", "annotation-log-replay"}};
    auto it = kCriteria.find(info.name());
    const std::string label = it == kCriteria.end() ? info.name() : it->second;
    lines_.push_back(
        absl::StrCat(info.result()->Passed() ? "PASS " : "FAIL ", label));
  }

  void OnTestProgramEnd(const ::testing::UnitTest&) override {
    std::cout << "\n";
    for (const std::string& line : lines_) std::cout << line << "\n";
  }

 private:
  std::vector<std::string> lines_;
};

}  // namespace
}  // namespace perturbkit

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      *perturbkit::cli_path = argv[++i];
    } else if (arg.starts_with("--cli=")) {
      *perturbkit::cli_path = arg.substr(6);
    }
  }
  ::testing::UnitTest::GetInstance()->listeners().Append(
      new perturbkit::CriterionPrinter());
  return RUN_ALL_TESTS();
}
