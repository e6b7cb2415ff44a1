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

#include "jsonl.h"

#include <fstream>

#include "absl/strings/str_cat.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit::internal {

absl::Status MalformedAt(int line, std::string_view what) {
  return MakeError(absl::StatusCode::kInvalidArgument, "malformed-record",
                   absl::StrCat("line ", line, ": ", AbslView(what)));
}

absl::Status ForEachJsonLine(
    const std::string& path,
    const std::function<absl::Status(const Json&, int)>& fn) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    bool blank = true;
    for (char c : line) {
      if (!IsAsciiSpace(c)) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return MalformedAt(line_number, "invalid JSON");
    absl::Status status = fn(j, line_number);
    if (!status.ok()) return status;
  }
  if (in.bad()) return MakeError(absl::StatusCode::kDataLoss, "io", path);
  return absl::OkStatus();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return MakeError(absl::StatusCode::kPermissionDenied, "io", path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return MakeError(absl::StatusCode::kDataLoss, "io", path);
  return absl::OkStatus();
}

std::string DumpLine(const Json& j) {
  return j.dump(-1, ' ', /*ensure_ascii=*/false,
                Json::error_handler_t::replace);
}

}  // namespace perturbkit::internal
