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

#ifndef PERTURBKIT_SCORING_H_
#define PERTURBKIT_SCORING_H_

#include <memory>
#include <semaphore>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "perturbkit/lexicon.h"

namespace perturbkit {

struct ScoreResult {
  std::string text;
  double score = 0.0;  // Toxicity confidence in [0, 1].
};

// A toxicity model behind a uniform contract. Implementations must be safe
// to call from multiple threads.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual absl::StatusOr<ScoreResult> Score(std::string_view text) const = 0;

  // One slot per input, in input order. A failed slot does not affect the
  // others. The default scores sequentially.
  virtual std::vector<absl::StatusOr<ScoreResult>> BatchScore(
      std::span<const std::string> texts) const;
};

// Desk-scale scorer over a weighted term list:
//
//   score = 1 - prod over distinct matched terms of (1 - weight)
//
// Tokens and terms are compared after case folding, leet folding and repeat
// collapsing, so some perturbations still evade it, as they would a real
// model.
class LexiconScorer : public Scorer {
 public:
  explicit LexiconScorer(
      const std::vector<std::pair<std::string, double>>& terms,
      const VisualTable& table = VisualTable::Default());

  // Reads "term<TAB>weight" lines; weights must lie in [0, 1].
  static absl::StatusOr<LexiconScorer> Load(
      const std::string& path,
      const VisualTable& table = VisualTable::Default());

  absl::StatusOr<ScoreResult> Score(std::string_view text) const override;

  // The form under which tokens and terms are matched.
  std::string NormalizeToken(std::string_view token) const;

  size_t size() const { return weights_.size(); }

 private:
  const VisualTable* table_;
  absl::flat_hash_map<std::string, double> weights_;
};

// Client for a model served over HTTP:
//   POST {endpoint}/score  {"text": ...}  ->  200 {"score": <0..1>}
// Errors: remote-unreachable, remote-malformed (non-200, bad JSON or score
// out of range), timeout. At most `max_in_flight` requests run at once
// across all callers.
class RemoteScorer : public Scorer {
 public:
  static absl::StatusOr<std::unique_ptr<RemoteScorer>> Create(
      std::string_view endpoint, int timeout_ms, int max_in_flight);

  absl::StatusOr<ScoreResult> Score(std::string_view text) const override;
  std::vector<absl::StatusOr<ScoreResult>> BatchScore(
      std::span<const std::string> texts) const override;

  int max_in_flight() const { return max_in_flight_; }

 private:
  RemoteScorer(std::string host, int port, std::string path, int timeout_ms,
               int max_in_flight);

  std::string host_;
  int port_;
  std::string path_;
  int timeout_ms_;
  int max_in_flight_;
  mutable std::counting_semaphore<> permits_;
};

struct ScorerConfig {
  enum class Kind { kLexicon, kRemote };

  Kind kind = Kind::kLexicon;
  std::string lexicon_path;
  std::string endpoint;
  int timeout_ms = 5000;
  int max_in_flight = 4;

  // Exactly one of lexicon_path / endpoint, matching `kind`; positive
  // timeout and in-flight cap.
  absl::Status Validate() const;
};

absl::StatusOr<std::unique_ptr<Scorer>> MakeScorer(const ScorerConfig& config);

}  // namespace perturbkit

#endif  // PERTURBKIT_SCORING_H_
