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

#ifndef PERTURBKIT_ROBUSTNESS_H_
#define PERTURBKIT_ROBUSTNESS_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "perturbkit/scoring.h"

namespace perturbkit {

// Accuracy of an all-positive dataset as the decision threshold sweeps
// [0, 1]. An example counts as detected when its score is strictly greater
// than the threshold.
struct ThresholdCurve {
  std::vector<double> grid;      // Strictly ascending, from 0 to 1.
  std::vector<double> accuracy;  // Same length as grid.
};

// Thresholds 0, step, 2*step, ..., 1; t_i is computed as i / (n - 1).
// Fails with invalid-grid unless 1 / step is (close to) an integer >= 1.
absl::StatusOr<std::vector<double>> MakeGrid(double step = 0.01);

// Fraction of `scores` strictly greater than `threshold`. Errors:
// empty-scores, score-out-of-range.
absl::StatusOr<double> AccuracyAtThreshold(std::span<const double> scores,
                                           double threshold);

// Errors: invalid-grid (empty, unsorted, outside [0,1], or missing an
// endpoint), plus those of AccuracyAtThreshold.
absl::StatusOr<ThresholdCurve> AccuracyCurve(std::span<const double> scores,
                                             std::span<const double> grid);

// Area under the curve by the trapezoid rule.
double Auc(const ThresholdCurve& curve);

// Auc(clean) - Auc(perturbed). Fails with grid-mismatch when the curves do
// not share a grid.
absl::StatusOr<double> AucDiff(const ThresholdCurve& clean,
                               const ThresholdCurve& perturbed);

struct TextPair {
  std::string clean;
  std::string perturbed;
};

struct RobustnessReport {
  double auc_clean = 0.0;
  double auc_perturbed = 0.0;
  double auc_diff = 0.0;
  double acc_at_half_clean = 0.0;
  double acc_at_half_perturbed = 0.0;
  int64_t pairs_used = 0;
  int64_t pairs_dropped = 0;  // Either side failed to score.
};

struct BenchmarkResult {
  RobustnessReport report;
  ThresholdCurve clean;
  ThresholdCurve perturbed;
};

// Scores both columns, builds both curves on `grid` and summarizes them.
// Pairs with a failed score on either side are dropped; no-usable-pairs
// when nothing is left.
absl::StatusOr<BenchmarkResult> RunBenchmark(std::span<const TextPair> pairs,
                                             const Scorer& scorer,
                                             std::span<const double> grid);

std::string RobustnessReportJson(const RobustnessReport& report);
// Columns: t, acc_clean, acc_perturbed.
std::string CurvesCsv(const ThresholdCurve& clean,
                      const ThresholdCurve& perturbed);

// {"clean": ..., "perturbed": ...} per line; candidate files work too
// (clean_text / perturbed_text).
absl::StatusOr<std::vector<TextPair>> LoadTextPairs(const std::string& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_ROBUSTNESS_H_
