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

// Line-delimited JSON helpers shared by the file readers and writers.

#ifndef PERTURBKIT_SRC_JSONL_H_
#define PERTURBKIT_SRC_JSONL_H_

#include <functional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "json.hpp"

namespace perturbkit::internal {

using Json = nlohmann::json;

// Calls `fn` for each non-blank line of `path`, parsed as JSON, with its
// 1-based line number. Parse failures become malformed-record errors.
absl::Status ForEachJsonLine(
    const std::string& path,
    const std::function<absl::Status(const Json&, int)>& fn);

// Replaces the contents of `path` with `contents`.
absl::Status WriteFile(const std::string& path, std::string_view contents);

absl::Status MalformedAt(int line, std::string_view what);

// Compact single-line serialization used by every JSONL writer.
std::string DumpLine(const Json& j);

}  // namespace perturbkit::internal

#endif  // PERTURBKIT_SRC_JSONL_H_
