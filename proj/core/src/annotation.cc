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

#include "perturbkit/annotation.h"

#include <filesystem>
#include <fstream>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "jsonl.h"
#include "perturbkit/status.h"

namespace perturbkit {
namespace {

using internal::Json;

constexpr std::pair<ResponseStatus, std::string_view> kStatusNames[] = {
    {ResponseStatus::kAccepted, "accepted"},
    {ResponseStatus::kAttentionFailed, "attention-failed"},
    {ResponseStatus::kTooFast, "too-fast"},
    {ResponseStatus::kBlocked, "blocked"},
    {ResponseStatus::kTaskClosed, "task-closed"},
};

}  // namespace

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kHighQuality ? "high-quality" : "low-quality";
}

absl::StatusOr<Verdict> ParseVerdict(std::string_view name) {
  if (name == "high-quality") return Verdict::kHighQuality;
  if (name == "low-quality") return Verdict::kLowQuality;
  return MakeError(absl::StatusCode::kInvalidArgument, "bad-verdict", name);
}

std::string_view ResponseStatusName(ResponseStatus status) {
  for (const auto& [value, name] : kStatusNames) {
    if (value == status) return name;
  }
  return "unknown";
}

absl::StatusOr<ResponseStatus> ParseResponseStatus(std::string_view name) {
  for (const auto& [value, known] : kStatusNames) {
    if (known == name) return value;
  }
  return MakeError(absl::StatusCode::kInvalidArgument, "bad-status", name);
}

std::vector<AnnotationTask> MakeTasks(
    std::span<const PerturbedCandidate> candidates, int assignments_required) {
  std::vector<AnnotationTask> tasks;
  tasks.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    AnnotationTask task;
    task.task_id = absl::StrFormat("task-%06d", i + 1);
    task.candidate = candidates[i];
    task.assignments_required = assignments_required;
    tasks.push_back(std::move(task));
  }
  return tasks;
}

AggregateResult Aggregate(std::span<const AnnotationTask> tasks,
                          std::span<const LoggedResponse> log,
                          const AggregateOptions& options) {
  struct Tally {
    std::set<std::string> annotators;
    int accepted = 0;
    int high = 0;
  };
  std::map<std::string, Tally, std::less<>> tallies;
  AggregateResult result;
  for (const LoggedResponse& entry : log) {
    if (entry.status == ResponseStatus::kAttentionFailed) {
      ++result.stats.attention_failures;
    }
    if (entry.status != ResponseStatus::kAccepted) continue;
    Tally& tally = tallies[entry.response.task_id];
    if (!tally.annotators.insert(entry.response.annotator_id).second) continue;
    ++tally.accepted;
    if (entry.response.verdict == Verdict::kHighQuality) ++tally.high;
  }
  for (const AnnotationTask& task : tasks) {
    auto it = tallies.find(task.task_id);
    if (it == tallies.end() || it->second.accepted < options.quorum) continue;
    TypeRetention& retention = result.stats.per_type[task.candidate.type];
    ++retention.raw;
    if (2 * it->second.high > it->second.accepted) {
      ++retention.preserved;
      result.retained.push_back(task.candidate);
    }
  }
  for (auto& [type, retention] : result.stats.per_type) {
    retention.rate = retention.raw == 0
                         ? 0.0
                         : static_cast<double>(retention.preserved) /
                               static_cast<double>(retention.raw);
  }
  return result;
}

std::string RetentionStatsJson(const RetentionStats& stats) {
  nlohmann::ordered_json per_type = nlohmann::ordered_json::object();
  for (const auto& [type, retention] : stats.per_type) {
    nlohmann::ordered_json entry;
    entry["raw"] = retention.raw;
    entry["preserved"] = retention.preserved;
    entry["rate"] = retention.rate;
    per_type[std::string(TypeName(type))] = entry;
  }
  nlohmann::ordered_json j;
  j["per_type"] = per_type;
  j["attention_failures"] = stats.attention_failures;
  return j.dump(2) + "\n";
}

std::string ResponseLogLine(const LoggedResponse& entry) {
  nlohmann::ordered_json j;
  j["task_id"] = entry.response.task_id;
  j["annotator_id"] = entry.response.annotator_id;
  j["clicked_index"] = entry.response.clicked_index;
  j["verdict"] = std::string(VerdictName(entry.response.verdict));
  j["dwell_ms"] = entry.response.dwell_ms;
  j["submitted_at"] = entry.response.submitted_at;
  j["status"] = std::string(ResponseStatusName(entry.status));
  return j.dump(-1, ' ', false, Json::error_handler_t::replace) + "\n";
}

absl::StatusOr<std::vector<LoggedResponse>> LoadResponseLog(
    const std::string& path) {
  std::vector<LoggedResponse> log;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        LoggedResponse entry;
        AnnotationResponse& r = entry.response;
        for (auto [field, target] :
             {std::pair{"task_id", &r.task_id},
              std::pair{"annotator_id", &r.annotator_id}}) {
          auto it = j.find(field);
          if (it == j.end() || !it->is_string()) {
            return internal::MalformedAt(
                line, absl::StrCat(field, " must be a string"));
          }
          *target = it->get<std::string>();
        }
        for (auto [field, target] :
             {std::pair{"dwell_ms", &r.dwell_ms},
              std::pair{"submitted_at", &r.submitted_at}}) {
          auto it = j.find(field);
          if (it == j.end() || !it->is_number_integer()) {
            return internal::MalformedAt(
                line, absl::StrCat(field, " must be an integer"));
          }
          *target = it->get<int64_t>();
        }
        auto click = j.find("clicked_index");
        if (click == j.end() || !click->is_number_integer()) {
          return internal::MalformedAt(line, "clicked_index must be an integer");
        }
        r.clicked_index = click->get<int>();
        auto verdict = j.find("verdict");
        if (verdict == j.end() || !verdict->is_string()) {
          return internal::MalformedAt(line, "verdict must be a string");
        }
        absl::StatusOr<Verdict> parsed_verdict =
            ParseVerdict(verdict->get<std::string>());
        if (!parsed_verdict.ok()) {
          return internal::MalformedAt(line, "unknown verdict");
        }
        r.verdict = *parsed_verdict;
        auto st = j.find("status");
        if (st == j.end() || !st->is_string()) {
          return internal::MalformedAt(line, "status must be a string");
        }
        absl::StatusOr<ResponseStatus> parsed_status =
            ParseResponseStatus(st->get<std::string>());
        if (!parsed_status.ok()) {
          return internal::MalformedAt(line, "unknown status");
        }
        entry.status = *parsed_status;
        log.push_back(std::move(entry));
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return log;
}

AnnotationService::AnnotationService(std::vector<AnnotationTask> tasks,
                                     AnnotationOptions options, Clock clock)
    : tasks_(std::move(tasks)),
      options_(std::move(options)),
      clock_(std::move(clock)) {
  for (size_t i = 0; i < tasks_.size(); ++i) index_[tasks_[i].task_id] = i;
}

absl::StatusOr<AnnotationService> AnnotationService::Create(
    std::span<const PerturbedCandidate> candidates, AnnotationOptions options,
    Clock clock) {
  if (options.assignments_required <= 0 || options.min_dwell_ms < 0 ||
      options.aggregate.quorum <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "annotation options out of range");
  }
  AnnotationService service(MakeTasks(candidates, options.assignments_required),
                            options, std::move(clock));
  if (!options.log_path.empty() &&
      std::filesystem::exists(options.log_path)) {
    absl::StatusOr<std::vector<LoggedResponse>> log =
        LoadResponseLog(options.log_path);
    if (!log.ok()) return log.status();
    for (const LoggedResponse& entry : *log) {
      if (!service.index_.contains(entry.response.task_id)) {
        return MakeError(absl::StatusCode::kDataLoss, "unknown-task",
                         absl::StrCat("log refers to ", entry.response.task_id));
      }
      service.Apply(entry);
    }
  }
  return service;
}

void AnnotationService::Apply(const LoggedResponse& entry) {
  const AnnotationResponse& r = entry.response;
  switch (entry.status) {
    case ResponseStatus::kAccepted:
      ++tasks_[index_.find(r.task_id)->second].responses_received;
      answered_.insert({r.task_id, r.annotator_id});
      break;
    case ResponseStatus::kAttentionFailed:
      answered_.insert({r.task_id, r.annotator_id});
      blocked_.insert(r.annotator_id);
      break;
    case ResponseStatus::kTooFast:
    case ResponseStatus::kBlocked:
    case ResponseStatus::kTaskClosed:
      break;
  }
  log_.push_back(entry);
}

absl::Status AnnotationService::Append(const LoggedResponse& entry) {
  if (options_.log_path.empty()) return absl::OkStatus();
  std::ofstream out(options_.log_path, std::ios::app | std::ios::binary);
  out << ResponseLogLine(entry);
  out.flush();
  if (!out) {
    return MakeError(absl::StatusCode::kUnavailable, "io",
                     absl::StrCat("cannot append to ", options_.log_path));
  }
  return absl::OkStatus();
}

std::optional<DispatchedTask> AnnotationService::NextTask(
    std::string_view annotator_id) {
  if (IsBlocked(annotator_id)) return std::nullopt;
  const AnnotationTask* best = nullptr;
  const std::string annotator(annotator_id);
  for (const AnnotationTask& task : tasks_) {
    if (task.responses_received >= task.assignments_required) continue;
    if (answered_.contains({task.task_id, annotator})) continue;
    // Tasks are in task_id order, so strict < keeps the lowest id on ties.
    if (best == nullptr || task.responses_received < best->responses_received) {
      best = &task;
    }
  }
  if (best == nullptr) return std::nullopt;
  auto [it, inserted] =
      dispatched_.try_emplace({best->task_id, annotator}, clock_());
  return DispatchedTask{best, it->second};
}

absl::StatusOr<SubmitOutcome> AnnotationService::Submit(
    const Submission& submission) {
  auto task_it = index_.find(submission.task_id);
  if (task_it == index_.end()) {
    return MakeError(absl::StatusCode::kNotFound, "unknown-task",
                     submission.task_id);
  }
  AnnotationTask& task = tasks_[task_it->second];
  const Key key{submission.task_id, submission.annotator_id};
  if (answered_.contains(key)) {
    return MakeError(absl::StatusCode::kAlreadyExists, "duplicate-response",
                     absl::StrCat(submission.annotator_id, " on ",
                                  submission.task_id));
  }
  auto dispatch = dispatched_.find(key);
  if (dispatch == dispatched_.end()) {
    return MakeError(absl::StatusCode::kFailedPrecondition, "not-dispatched",
                     absl::StrCat(submission.task_id, " was never sent to ",
                                  submission.annotator_id));
  }
  const int64_t now = clock_();
  LoggedResponse entry;
  entry.response = {submission.task_id, submission.annotator_id,
                    submission.clicked_index, submission.verdict,
                    now - dispatch->second, now};
  if (IsBlocked(submission.annotator_id)) {
    entry.status = ResponseStatus::kBlocked;
  } else if (task.responses_received >= task.assignments_required) {
    entry.status = ResponseStatus::kTaskClosed;
  } else if (submission.clicked_index != task.candidate.target_index) {
    entry.status = ResponseStatus::kAttentionFailed;
  } else if (entry.response.dwell_ms < options_.min_dwell_ms) {
    entry.status = ResponseStatus::kTooFast;
  } else {
    entry.status = ResponseStatus::kAccepted;
  }
  if (absl::Status status = Append(entry); !status.ok()) return status;
  Apply(entry);
  return SubmitOutcome{entry.status, entry.response.dwell_ms};
}

AggregateResult AnnotationService::Aggregate() const {
  return perturbkit::Aggregate(tasks_, log_, options_.aggregate);
}

bool AnnotationService::IsBlocked(std::string_view annotator_id) const {
  return blocked_.contains(annotator_id);
}

}  // namespace perturbkit
