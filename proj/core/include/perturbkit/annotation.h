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

#ifndef PERTURBKIT_ANNOTATION_H_
#define PERTURBKIT_ANNOTATION_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "perturbkit/perturber.h"
#include "perturbkit/types.h"

namespace perturbkit {

enum class Verdict { kHighQuality, kLowQuality };

std::string_view VerdictName(Verdict verdict);  // "high-quality", ...
absl::StatusOr<Verdict> ParseVerdict(std::string_view name);

struct AnnotationTask {
  std::string task_id;
  PerturbedCandidate candidate;
  int assignments_required = 5;
  int responses_received = 0;  // Accepted responses only.
};

// "task-000001", "task-000002", ... in candidate order.
std::vector<AnnotationTask> MakeTasks(
    std::span<const PerturbedCandidate> candidates,
    int assignments_required = 5);

struct AnnotationResponse {
  std::string task_id;
  std::string annotator_id;
  int clicked_index = -1;  // Word position in the perturbed sentence.
  Verdict verdict = Verdict::kLowQuality;
  int64_t dwell_ms = 0;      // Measured by the server from first dispatch.
  int64_t submitted_at = 0;  // Milliseconds.
};

// Submission outcome as written to the response log. Only kAccepted
// responses count toward aggregation.
enum class ResponseStatus {
  kAccepted,
  kAttentionFailed,
  kTooFast,
  kBlocked,
  kTaskClosed,
};

std::string_view ResponseStatusName(ResponseStatus status);
absl::StatusOr<ResponseStatus> ParseResponseStatus(std::string_view name);

struct LoggedResponse {
  AnnotationResponse response;
  ResponseStatus status = ResponseStatus::kAccepted;
};

struct TypeRetention {
  int64_t raw = 0;        // Tasks that reached quorum.
  int64_t preserved = 0;  // Of those, retained.
  double rate = 0.0;      // preserved / raw, 0 when raw is 0.
};

struct RetentionStats {
  std::map<PerturbationType, TypeRetention> per_type;
  int64_t attention_failures = 0;
};

struct AggregateOptions {
  int quorum = 3;  // Minimum accepted responses for a task to count.
};

struct AggregateResult {
  std::vector<PerturbedCandidate> retained;  // In task order.
  RetentionStats stats;
};

// A task with at least `quorum` accepted responses is retained when
// high-quality verdicts are a strict majority of them. Only the first
// accepted response per (task, annotator) is counted.
AggregateResult Aggregate(std::span<const AnnotationTask> tasks,
                          std::span<const LoggedResponse> log,
                          const AggregateOptions& options = {});

std::string RetentionStatsJson(const RetentionStats& stats);

absl::StatusOr<std::vector<LoggedResponse>> LoadResponseLog(
    const std::string& path);
std::string ResponseLogLine(const LoggedResponse& entry);

struct AnnotationOptions {
  int assignments_required = 5;
  int64_t min_dwell_ms = 5000;
  AggregateOptions aggregate;
  // Append-only response log. Replayed on Create when it exists; empty
  // keeps everything in memory.
  std::string log_path;
};

struct Submission {
  std::string task_id;
  std::string annotator_id;
  int clicked_index = -1;
  Verdict verdict = Verdict::kLowQuality;
};

struct SubmitOutcome {
  ResponseStatus status = ResponseStatus::kAccepted;
  int64_t dwell_ms = 0;
  bool accepted() const { return status == ResponseStatus::kAccepted; }
};

struct DispatchedTask {
  const AnnotationTask* task = nullptr;
  int64_t dispatched_at = 0;
};

// Task dispatch and response intake for the human validation round. Not
// thread-safe; callers serialize access.
class AnnotationService {
 public:
  using Clock = std::function<int64_t()>;  // Milliseconds.

  static absl::StatusOr<AnnotationService> Create(
      std::span<const PerturbedCandidate> candidates,
      AnnotationOptions options, Clock clock);

  // An open task the annotator has not answered: fewest accepted responses
  // first, then lowest task id. The first dispatch to an annotator starts
  // its dwell timer. Blocked annotators get nothing.
  std::optional<DispatchedTask> NextTask(std::string_view annotator_id);

  // Errors: unknown-task, duplicate-response, not-dispatched, io.
  // Rejections are logged and reported through SubmitOutcome.
  absl::StatusOr<SubmitOutcome> Submit(const Submission& submission);

  AggregateResult Aggregate() const;
  bool IsBlocked(std::string_view annotator_id) const;
  const std::vector<AnnotationTask>& tasks() const { return tasks_; }
  const std::vector<LoggedResponse>& log() const { return log_; }
  const AnnotationOptions& options() const { return options_; }

 private:
  AnnotationService(std::vector<AnnotationTask> tasks,
                    AnnotationOptions options, Clock clock);

  void Apply(const LoggedResponse& entry);
  absl::Status Append(const LoggedResponse& entry);

  using Key = std::pair<std::string, std::string>;  // task, annotator

  std::vector<AnnotationTask> tasks_;
  std::map<std::string, size_t, std::less<>> index_;
  AnnotationOptions options_;
  Clock clock_;
  std::map<Key, int64_t> dispatched_;
  std::set<Key> answered_;
  std::set<std::string, std::less<>> blocked_;
  std::vector<LoggedResponse> log_;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_ANNOTATION_H_
