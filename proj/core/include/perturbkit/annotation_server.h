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

#ifndef PERTURBKIT_ANNOTATION_SERVER_H_
#define PERTURBKIT_ANNOTATION_SERVER_H_

#include <memory>
#include <string>

#include "perturbkit/annotation.h"

namespace perturbkit {

// JSON-over-HTTP front end for an AnnotationService:
//
//   GET  /api/tasks/next?annotator=ID   -> task, or 404 {"error":"no-task"}
//   POST /api/tasks/{id}/response       -> {"status": ..., "reason": ...}
//   GET  /api/stats                     -> retention stats
//
// Errors are {"error": code}. Requests are serialized through one mutex.
// When `static_dir` is non-empty it is served at "/".
class AnnotationServer {
 public:
  AnnotationServer(AnnotationService* service, std::string static_dir = "");
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds to an ephemeral port and returns it, or -1 on failure.
  int BindToAnyPort(const std::string& host = "127.0.0.1");
  bool Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_ANNOTATION_SERVER_H_
