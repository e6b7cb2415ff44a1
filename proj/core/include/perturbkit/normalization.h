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

#ifndef PERTURBKIT_NORMALIZATION_H_
#define PERTURBKIT_NORMALIZATION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/text.h"
#include "perturbkit/types.h"

namespace perturbkit {

// Word -> occurrence count, the prior P(c) of the corrector.
class FrequencyTable {
 public:
  explicit FrequencyTable(
      const std::vector<std::pair<std::string, int64_t>>& counts);

  // "word<TAB>count" lines; words are lowercased and repeated words summed.
  // The counts must sum to a positive total.
  static absl::StatusOr<FrequencyTable> Load(const std::string& path);

  int64_t Count(std::string_view word) const;
  bool Contains(std::string_view word) const {
    return counts_.contains(AbslView(word));
  }
  double Probability(std::string_view word) const {
    return static_cast<double>(Count(word)) / static_cast<double>(total_);
  }
  int64_t total() const { return total_; }
  size_t size() const { return counts_.size(); }

  // Words grouped by length in code points.
  const std::vector<std::u32string>& WordsOfLength(size_t length) const;

 private:
  absl::flat_hash_map<std::string, int64_t> counts_;
  std::vector<std::vector<std::u32string>> by_length_;
  int64_t total_ = 0;
};

struct CorrectorOptions {
  // Case-fold, leet-fold and cap repeats before correcting. Off means the
  // input is only lowercased, as plain word-level correctors do.
  bool perturbation_aware = true;
  // Always return the best candidate. Off means the best candidate is only
  // returned when it holds at least `min_confidence` of the candidate mass.
  bool always_guess = true;
  double min_confidence = 0.5;
  // Error model P(w|c): uniform within an edit-distance class.
  double near_weight = 10.0;  // distance <= 1
  double far_weight = 1.0;    // distance 2
};

// Word-level corrector: the candidate c within a small Levenshtein distance
// of the input that maximizes P(c) * P(w|c).
class SpellCorrector {
 public:
  explicit SpellCorrector(const FrequencyTable& table,
                          CorrectorOptions options = {},
                          const VisualTable& visual = VisualTable::Default());

  // Case fold, leet fold, then cap character runs at two.
  std::string PreNormalize(std::string_view word) const;

  // Table words within Levenshtein distance `max_edit` (1 or 2) over the
  // alphabet a-z plus apostrophe. A wildcard in `word` matches any letter
  // at no cost.
  std::vector<std::string> Candidates(std::string_view word,
                                      int max_edit) const;
  // Same, with each candidate's distance.
  std::vector<std::pair<std::string, int>> CandidatesWithDistance(
      std::string_view word, int max_edit) const;

  // Known words come back lowercased; otherwise the best distance-1
  // candidate, then the best distance-2 candidate, then the normalized
  // input unchanged.
  std::string Correct(std::string_view word) const;

  const CorrectorOptions& options() const { return options_; }

 private:
  double ErrorModel(int distance) const;

  const FrequencyTable& table_;
  CorrectorOptions options_;
  const VisualTable& visual_;
};

struct NormalizationPair {
  std::string clean;
  std::string perturbed;
  PerturbationType type = PerturbationType::kMixed;
};

struct NormalizationReport {
  std::map<PerturbationType, int64_t> n;
  std::map<PerturbationType, int64_t> correct;
  std::map<PerturbationType, double> accuracy;
  int64_t total = 0;
  double overall = 0.0;  // Weighted mean of `accuracy` by `n`.
};

// A pair counts as recovered when the lowercased correction equals the
// lowercased clean word. Fails with empty-input for no pairs.
absl::StatusOr<NormalizationReport> EvaluateNormalization(
    std::span<const NormalizationPair> pairs, const SpellCorrector& corrector);

std::string NormalizationReportJson(const NormalizationReport& report,
                                    std::string_view corrector_name);
// Header plus one row, columns: corrector, RepeatChar, Abbr, SpecialChar,
// MixedCase, MixedCase+, Overall. Types without pairs are left blank.
std::string NormalizationReportCsv(const NormalizationReport& report,
                                   std::string_view corrector_name);

// Reads pairs from line-delimited JSON. Each line needs a type and either
// clean/perturbed or clean_word/perturbed_word, so candidate files can be
// evaluated directly.
absl::StatusOr<std::vector<NormalizationPair>> LoadNormalizationPairs(
    const std::string& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_NORMALIZATION_H_
