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

#include "perturbkit/annotation_server.h"

#include <mutex>

#include "httplib.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

using internal::Json;

void SendJson(httplib::Response& res, int code, const nlohmann::ordered_json& j) {
  res.status = code;
  res.set_content(j.dump(-1, ' ', false, Json::error_handler_t::replace),
                  "application/json");
}

void SendError(httplib::Response& res, int code, std::string_view error,
               std::string_view detail = {}) {
  nlohmann::ordered_json j;
  j["error"] = std::string(error);
  if (!detail.empty()) j["detail"] = std::string(detail);
  SendJson(res, code, j);
}

int HttpCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kFailedPrecondition:
      return 409;
    case absl::StatusCode::kInvalidArgument:
      return 400;
    default:
      return 500;
  }
}

}  // namespace

struct AnnotationServer::Impl {
  AnnotationService* service;
  std::mutex mu;
  httplib::Server server;
};

AnnotationServer::AnnotationServer(AnnotationService* service,
                                   std::string static_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  Impl* impl = impl_.get();

  impl->server.Get("/api/tasks/next", [impl](const httplib::Request& req,
                                             httplib::Response& res) {
    const std::string annotator = req.get_param_value("annotator");
    if (annotator.empty()) {
      SendError(res, 400, "missing-annotator");
      return;
    }
    std::lock_guard lock(impl->mu);
    std::optional<DispatchedTask> next = impl->service->NextTask(annotator);
    if (!next) {
      SendError(res, 404, "no-task");
      return;
    }
    const AnnotationTask& task = *next->task;
    nlohmann::ordered_json j;
    j["task_id"] = task.task_id;
    j["clean_text"] = task.candidate.clean_text;
    j["perturbed_text"] = task.candidate.perturbed_text;
    j["clean_words"] = SplitWords(task.candidate.clean_text);
    j["perturbed_words"] = SplitWords(task.candidate.perturbed_text);
    j["dispatched_at"] = next->dispatched_at;
    j["min_dwell_ms"] = impl->service->options().min_dwell_ms;
    j["assignments_required"] = task.assignments_required;
    j["responses_received"] = task.responses_received;
    SendJson(res, 200, j);
  });

  impl->server.Post(R"(/api/tasks/([^/]+)/response)",
                    [impl](const httplib::Request& req,
                           httplib::Response& res) {
    const Json body = Json::parse(req.body, nullptr, false);
    if (!body.is_object()) {
      SendError(res, 400, "malformed-request", "body must be a JSON object");
      return;
    }
    auto annotator = body.find("annotator_id");
    auto click = body.find("clicked_index");
    auto verdict = body.find("verdict");
    if (annotator == body.end() || !annotator->is_string() ||
        annotator->get<std::string>().empty() || click == body.end() ||
        !click->is_number_integer() || verdict == body.end() ||
        !verdict->is_string()) {
      SendError(res, 400, "malformed-request",
                "need annotator_id, clicked_index and verdict");
      return;
    }
    absl::StatusOr<Verdict> parsed = ParseVerdict(verdict->get<std::string>());
    if (!parsed.ok()) {
      SendError(res, 400, ErrorCode(parsed.status()));
      return;
    }
    Submission submission{req.matches[1].str(), annotator->get<std::string>(),
                          click->get<int>(), *parsed};
    absl::StatusOr<SubmitOutcome> outcome;
    {
      std::lock_guard lock(impl->mu);
      outcome = impl->service->Submit(submission);
    }
    if (!outcome.ok()) {
      SendError(res, HttpCodeFor(outcome.status()),
                ErrorCode(outcome.status()));
      return;
    }
    nlohmann::ordered_json j;
    j["status"] = outcome->accepted() ? "accepted" : "rejected";
    if (!outcome->accepted()) {
      j["reason"] = std::string(ResponseStatusName(outcome->status));
    }
    j["dwell_ms"] = outcome->dwell_ms;
    SendJson(res, 200, j);
  });

  impl->server.Get("/api/stats", [impl](const httplib::Request&,
                                        httplib::Response& res) {
    AggregateResult result;
    {
      std::lock_guard lock(impl->mu);
      result = impl->service->Aggregate();
    }
    nlohmann::ordered_json j =
        nlohmann::ordered_json::parse(RetentionStatsJson(result.stats));
    j["retained"] = result.retained.size();
    SendJson(res, 200, j);
  });

  if (!static_dir.empty()) impl->server.set_mount_point("/", static_dir);
}

AnnotationServer::~AnnotationServer() { Stop(); }

int AnnotationServer::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool AnnotationServer::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool AnnotationServer::ListenAfterBind() {
  return impl_->server.listen_after_bind();
}

void AnnotationServer::Stop() {
  if (impl_) impl_->server.stop();
}

void AnnotationServer::WaitUntilReady() const {
  impl_->server.wait_until_ready();
}

}  // namespace perturbkit
