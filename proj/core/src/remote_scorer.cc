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

#include <atomic>
#include <chrono>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "jsonl.h"
#include "perturbkit/scoring.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

using internal::Json;

absl::Status Unreachable(std::string_view detail) {
  return MakeError(absl::StatusCode::kUnavailable, "remote-unreachable",
                   detail);
}
absl::Status Malformed(std::string_view detail) {
  return MakeError(absl::StatusCode::kDataLoss, "remote-malformed", detail);
}
absl::Status Timeout(std::string_view detail) {
  return MakeError(absl::StatusCode::kDeadlineExceeded, "timeout", detail);
}

}  // namespace

RemoteScorer::RemoteScorer(std::string host, int port, std::string path,
                           int timeout_ms, int max_in_flight)
    : host_(std::move(host)),
      port_(port),
      path_(std::move(path)),
      timeout_ms_(timeout_ms),
      max_in_flight_(max_in_flight),
      permits_(max_in_flight) {}

absl::StatusOr<std::unique_ptr<RemoteScorer>> RemoteScorer::Create(
    std::string_view endpoint, int timeout_ms, int max_in_flight) {
  constexpr std::string_view kScheme = "http://";
  if (!endpoint.starts_with(kScheme)) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     absl::StrCat("endpoint must be http://: ", AbslView(endpoint)));
  }
  if (timeout_ms <= 0 || max_in_flight <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "timeout and max_in_flight must be positive");
  }
  std::string_view rest = endpoint.substr(kScheme.size());
  const size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  std::string path =
      slash == std::string_view::npos ? "" : std::string(rest.substr(slash));
  while (!path.empty() && path.back() == '/') path.pop_back();
  path += "/score";

  int port = 80;
  std::string_view host = authority;
  if (const size_t colon = authority.rfind(':');
      colon != std::string_view::npos) {
    host = authority.substr(0, colon);
    if (!absl::SimpleAtoi(AbslView(authority.substr(colon + 1)), &port) || port <= 0 ||
        port > 65535) {
      return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                       absl::StrCat("bad port in endpoint: ", AbslView(endpoint)));
    }
  }
  if (host.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     absl::StrCat("missing host in endpoint: ", AbslView(endpoint)));
  }
  return std::unique_ptr<RemoteScorer>(new RemoteScorer(
      std::string(host), port, std::move(path), timeout_ms, max_in_flight));
}

absl::StatusOr<ScoreResult> RemoteScorer::Score(std::string_view text) const {
  permits_.acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{&permits_};

  httplib::Client client(host_, port_);
  const auto timeout = std::chrono::milliseconds(timeout_ms_);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_keep_alive(false);

  Json body = {{"text", std::string(text)}};
  const auto start = std::chrono::steady_clock::now();
  httplib::Result result =
      client.Post(path_, internal::DumpLine(body), "application/json");
  if (!result) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const httplib::Error error = result.error();
    if (error == httplib::Error::ConnectionTimeout ||
        ((error == httplib::Error::Read || error == httplib::Error::Write) &&
         elapsed >= timeout)) {
      return Timeout(httplib::to_string(error));
    }
    return Unreachable(httplib::to_string(error));
  }
  if (result->status != 200) {
    return Malformed(absl::StrCat("HTTP status ", result->status));
  }
  Json reply = Json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded() || !reply.is_object()) {
    return Malformed("response is not a JSON object");
  }
  auto score = reply.find("score");
  if (score == reply.end() || !score->is_number()) {
    return Malformed("missing numeric score");
  }
  const double value = score->get<double>();
  if (!(value >= 0.0 && value <= 1.0)) {
    return Malformed(absl::StrCat("score out of range: ", value));
  }
  return ScoreResult{std::string(text), value};
}

std::vector<absl::StatusOr<ScoreResult>> RemoteScorer::BatchScore(
    std::span<const std::string> texts) const {
  std::vector<absl::StatusOr<ScoreResult>> out(
      texts.size(), absl::UnknownError("not scored"));
  const size_t workers =
      std::min(texts.size(), static_cast<size_t>(max_in_flight_));
  std::atomic<size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < texts.size(); i = next++) {
          out[i] = Score(texts[i]);
        }
      });
    }
  }
  return out;
}

}  // namespace perturbkit
