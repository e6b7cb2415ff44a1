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

#ifndef PERTURBKIT_PERTURBER_H_
#define PERTURBKIT_PERTURBER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "perturbkit/corpus.h"
#include "perturbkit/dictionary.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/random.h"
#include "perturbkit/scoring.h"
#include "perturbkit/types.h"

namespace perturbkit {

// One perturbed sentence: `clean_text` with the core of the word at
// `target_index` (the token minus edge punctuation, `clean_word`) replaced
// by `perturbed_word`.
struct PerturbedCandidate {
  std::string record_id;
  std::string clean_text;
  std::string perturbed_text;
  int target_index = 0;
  std::string clean_word;
  std::string perturbed_word;
  PerturbationType type = PerturbationType::kMixed;
  double importance = 0.0;

  friend bool operator==(const PerturbedCandidate&,
                         const PerturbedCandidate&) = default;
};

enum class PerturbMode { kAllImportant, kTop1 };

struct PerturbConfig {
  int k = 3;            // Perturbations drawn per selected word.
  double theta = 0.1;   // A word is eligible when importance > theta.
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  PerturbMode mode = PerturbMode::kTop1;

  absl::Status Validate() const;
};

// |score(sentence) - score(sentence without word i)| for every word. The
// masked sentence deletes the word outright.
absl::StatusOr<std::vector<double>> WordImportance(
    std::span<const std::string> words, const Scorer& scorer);

// Shannon entropy in bits of the normalized counts. Fails with
// empty-distribution when the counts sum to zero.
absl::StatusOr<double> TypeDistributionEntropy(const TypeCounts& counts);

// First min(k, n) positions of a Fisher-Yates shuffle of [0, n) driven by
// `rng`: a uniform sample without replacement.
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k, Rng& rng);

// Weighted sample without replacement: each item gets the key
// log(u) / weight with u uniform in (0, 1), drawn in index order, and the
// k largest keys win (ties to the lower index). Returned in winning order.
std::vector<size_t> WeightedSampleWithoutReplacement(
    std::span<const double> weights, size_t k, Rng& rng);

struct TypedPerturbation {
  std::string text;
  PerturbationType type;
};

struct BalancedRun {
  uint64_t seed = 0;
  size_t candidates = 0;
  TypeCounts counts;
  double entropy = 0.0;  // Meaningful only when candidates > 0.
};

struct BalancedResult {
  uint64_t chosen_seed = 0;
  double entropy = 0.0;
  // Every candidate has the same type, so balancing had nothing to do.
  bool degenerate = false;
  std::vector<PerturbedCandidate> candidates;
  std::vector<BalancedRun> runs;  // One per configured seed, in order.
};

// Importance-guided perturbation of sentences with human-written variants
// from a lexicon. The lexicon entries usable for a word are those that
// classify under the perturbation taxonomy; the rest are never sampled.
//
// Every word draws from its own random stream, derived from (seed,
// record id, word index), so results do not depend on evaluation order.
class Perturber {
 public:
  Perturber(const Scorer& scorer, const Lexicon& lexicon,
            const Dictionary& dictionary,
            const VisualTable& table = VisualTable::Default());

  // Every word whose importance exceeds theta contributes min(k, pool)
  // uniformly sampled candidates.
  absl::StatusOr<std::vector<PerturbedCandidate>> PerturbAll(
      const SentenceRecord& record, const PerturbConfig& config,
      uint64_t seed) const;

  // Only the most important word (lowest index on ties), and only if its
  // importance exceeds theta.
  absl::StatusOr<std::vector<PerturbedCandidate>> PerturbTop1(
      const SentenceRecord& record, const PerturbConfig& config,
      uint64_t seed) const;

  // Runs config.mode over the dataset once per seed, sampling each pool
  // with weight 1 / (1 + lexicon-wide count of the perturbation's type),
  // and keeps the run with maximal type entropy (lowest seed on ties).
  // Fails with no-candidates when every run is empty.
  absl::StatusOr<BalancedResult> GenerateBalanced(
      std::span<const SentenceRecord> records,
      const PerturbConfig& config) const;

  // Usable perturbations for a lowercase word.
  const std::vector<TypedPerturbation>& Pool(std::string_view word) const;

  // Type counts over every usable lexicon entry.
  const TypeCounts& lexicon_type_counts() const { return type_counts_; }

 private:
  struct Sentence {
    std::vector<std::string> words;
    std::vector<double> importance;
  };
  enum class Sampling { kUniform, kInverseTypeFrequency };

  absl::StatusOr<Sentence> Analyze(const SentenceRecord& record) const;
  void EmitWord(const SentenceRecord& record, const Sentence& sentence,
                size_t index, size_t k, uint64_t seed, Sampling sampling,
                std::vector<PerturbedCandidate>* out) const;
  std::vector<PerturbedCandidate> Generate(const SentenceRecord& record,
                                           const Sentence& sentence,
                                           const PerturbConfig& config,
                                           uint64_t seed,
                                           Sampling sampling) const;

  const Scorer& scorer_;
  absl::flat_hash_map<std::string, std::vector<TypedPerturbation>> pools_;
  TypeCounts type_counts_;
};

// Candidate files: one JSON object per line with the PerturbedCandidate
// fields; `type` uses TypeName spelling.
absl::Status WriteCandidates(const std::string& path,
                             std::span<const PerturbedCandidate> candidates);
absl::StatusOr<std::vector<PerturbedCandidate>> LoadCandidates(
    const std::string& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_PERTURBER_H_
