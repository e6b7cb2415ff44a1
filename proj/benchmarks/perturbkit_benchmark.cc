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

#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "perturbkit/dictionary.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/normalization.h"
#include "perturbkit/robustness.h"
#include "perturbkit/typing.h"

namespace perturbkit {
namespace {

std::string DataPath(const char* name) {
  return std::string(PERTURBKIT_TEST_DATA_DIR) + "/" + name;
}

void BM_CanonicalKey(benchmark::State& state) {
  const std::vector<std::string> words = {"stupid", "5tup1d", "st*pid",
                                          "iiiidiot", "repubLIEcans"};
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeCanonicalKey(words[i++ % words.size()]));
  }
}
BENCHMARK(BM_CanonicalKey);

void BM_CanonicalKeyWildcards(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExpandCanonicalKeys("*d**t"));
  }
}
BENCHMARK(BM_CanonicalKeyWildcards);

void BM_Classify(benchmark::State& state) {
  const Dictionary dict = *Dictionary::Load(DataPath("words.txt"));
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"stupid", "stuppppid"}, {"stupid", "stupd"},  {"stupid", "5tupid"},
      {"stupid", "sTuPId"},    {"republicans", "repubLIEcans"},
      {"stupid", "5tpdd"}};
  size_t i = 0;
  for (auto _ : state) {
    const auto& [clean, perturbed] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(Classify(clean, perturbed, dict));
  }
}
BENCHMARK(BM_Classify);

void BM_Correct(benchmark::State& state) {
  const FrequencyTable table = *FrequencyTable::Load(DataPath("frequencies.tsv"));
  const SpellCorrector corrector(table);
  const std::vector<std::string> words = {"stupd", "1d10t", "mor0n", "hatte",
                                          "xyzzyq", "peeple"};
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(corrector.Correct(words[i++ % words.size()]));
  }
}
BENCHMARK(BM_Correct);

void BM_AccuracyCurve(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> scores(static_cast<size_t>(state.range(0)));
  for (double& s : scores) s = unit(rng);
  const std::vector<double> grid = *MakeGrid(0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AccuracyCurve(scores, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AccuracyCurve)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace perturbkit

// The packaged benchmark_main archive is LTO bytecode from another
// compiler release, so the main comes from the macro instead.
BENCHMARK_MAIN();
