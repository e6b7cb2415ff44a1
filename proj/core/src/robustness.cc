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

#include "perturbkit/robustness.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "jsonl.h"
#include "perturbkit/status.h"

namespace perturbkit {
namespace {

using internal::Json;

absl::Status InvalidGrid(std::string_view detail) {
  return MakeError(absl::StatusCode::kInvalidArgument, "invalid-grid", detail);
}

absl::Status ValidateGrid(std::span<const double> grid) {
  if (grid.empty()) return InvalidGrid("empty");
  if (grid.front() != 0.0 || grid.back() != 1.0) {
    return InvalidGrid("grid must start at 0 and end at 1");
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) return InvalidGrid("not strictly ascending");
  }
  return absl::OkStatus();
}

absl::Status ValidateScores(std::span<const double> scores) {
  if (scores.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-scores");
  }
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      return MakeError(absl::StatusCode::kInvalidArgument,
                       "score-out-of-range", absl::StrCat(s));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<double>> MakeGrid(double step) {
  if (!(step > 0.0 && step <= 1.0)) return InvalidGrid("step outside (0,1]");
  const double intervals = 1.0 / step;
  const double rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-9 * rounded) {
    return InvalidGrid("1/step must be an integer");
  }
  const auto n = static_cast<size_t>(rounded);
  std::vector<double> grid(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n);
  }
  return grid;
}

absl::StatusOr<double> AccuracyAtThreshold(std::span<const double> scores,
                                           double threshold) {
  if (absl::Status status = ValidateScores(scores); !status.ok()) {
    return status;
  }
  const auto above = std::count_if(scores.begin(), scores.end(),
                                   [&](double s) { return s > threshold; });
  return static_cast<double>(above) / static_cast<double>(scores.size());
}

absl::StatusOr<ThresholdCurve> AccuracyCurve(std::span<const double> scores,
                                             std::span<const double> grid) {
  if (absl::Status status = ValidateGrid(grid); !status.ok()) return status;
  if (absl::Status status = ValidateScores(scores); !status.ok()) {
    return status;
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  ThresholdCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.accuracy.reserve(grid.size());
  const auto n = static_cast<double>(sorted.size());
  for (double t : grid) {
    const auto above =
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    curve.accuracy.push_back(static_cast<double>(above) / n);
  }
  return curve;
}

double Auc(const ThresholdCurve& curve) {
  double area = 0.0;
  for (size_t i = 1; i < curve.grid.size(); ++i) {
    area += 0.5 * (curve.accuracy[i] + curve.accuracy[i - 1]) *
            (curve.grid[i] - curve.grid[i - 1]);
  }
  return area;
}

absl::StatusOr<double> AucDiff(const ThresholdCurve& clean,
                               const ThresholdCurve& perturbed) {
  if (clean.grid != perturbed.grid) {
    return MakeError(absl::StatusCode::kInvalidArgument, "grid-mismatch");
  }
  return Auc(clean) - Auc(perturbed);
}

absl::StatusOr<BenchmarkResult> RunBenchmark(std::span<const TextPair> pairs,
                                             const Scorer& scorer,
                                             std::span<const double> grid) {
  if (absl::Status status = ValidateGrid(grid); !status.ok()) return status;
  std::vector<std::string> texts;
  texts.reserve(pairs.size() * 2);
  for (const TextPair& p : pairs) texts.push_back(p.clean);
  for (const TextPair& p : pairs) texts.push_back(p.perturbed);
  std::vector<absl::StatusOr<ScoreResult>> scores = scorer.BatchScore(texts);

  std::vector<double> clean;
  std::vector<double> perturbed;
  BenchmarkResult result;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto& c = scores[i];
    const auto& p = scores[pairs.size() + i];
    if (!c.ok() || !p.ok()) {
      ++result.report.pairs_dropped;
      continue;
    }
    clean.push_back(c->score);
    perturbed.push_back(p->score);
  }
  if (clean.empty()) {
    return MakeError(absl::StatusCode::kFailedPrecondition, "no-usable-pairs");
  }
  result.report.pairs_used = static_cast<int64_t>(clean.size());

  absl::StatusOr<ThresholdCurve> clean_curve = AccuracyCurve(clean, grid);
  if (!clean_curve.ok()) return clean_curve.status();
  absl::StatusOr<ThresholdCurve> perturbed_curve =
      AccuracyCurve(perturbed, grid);
  if (!perturbed_curve.ok()) return perturbed_curve.status();
  result.clean = *std::move(clean_curve);
  result.perturbed = *std::move(perturbed_curve);

  result.report.auc_clean = Auc(result.clean);
  result.report.auc_perturbed = Auc(result.perturbed);
  result.report.auc_diff = result.report.auc_clean - result.report.auc_perturbed;
  result.report.acc_at_half_clean = *AccuracyAtThreshold(clean, 0.5);
  result.report.acc_at_half_perturbed = *AccuracyAtThreshold(perturbed, 0.5);
  return result;
}

std::string RobustnessReportJson(const RobustnessReport& report) {
  nlohmann::ordered_json j;
  j["auc_clean"] = report.auc_clean;
  j["auc_perturbed"] = report.auc_perturbed;
  j["auc_diff"] = report.auc_diff;
  j["acc_at_half_clean"] = report.acc_at_half_clean;
  j["acc_at_half_perturbed"] = report.acc_at_half_perturbed;
  j["pairs_used"] = report.pairs_used;
  j["pairs_dropped"] = report.pairs_dropped;
  return j.dump(2) + "\n";
}

std::string CurvesCsv(const ThresholdCurve& clean,
                      const ThresholdCurve& perturbed) {
  std::string out = "t,acc_clean,acc_perturbed\n";
  for (size_t i = 0; i < clean.grid.size() && i < perturbed.grid.size();
       ++i) {
    absl::StrAppend(&out,
                    absl::StrFormat("%.4f,%.6f,%.6f\n", clean.grid[i],
                                    clean.accuracy[i], perturbed.accuracy[i]));
  }
  return out;
}

absl::StatusOr<std::vector<TextPair>> LoadTextPairs(const std::string& path) {
  std::vector<TextPair> pairs;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        auto pick = [&](const char* a, const char* b) -> const Json* {
          for (const char* key : {a, b}) {
            if (auto it = j.find(key); it != j.end() && it->is_string()) {
              return &*it;
            }
          }
          return nullptr;
        };
        const Json* clean = pick("clean", "clean_text");
        const Json* perturbed = pick("perturbed", "perturbed_text");
        if (clean == nullptr || perturbed == nullptr) {
          return internal::MalformedAt(line, "need clean and perturbed");
        }
        pairs.push_back({clean->get<std::string>(),
                         perturbed->get<std::string>()});
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return pairs;
}

}  // namespace perturbkit
