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

#include "perturbkit/status.h"
#include "perturbkit/text.h"

#include <string>

#include "absl/strings/str_cat.h"

namespace perturbkit {

absl::Status MakeError(absl::StatusCode code, std::string_view error_code,
                       std::string_view detail) {
  if (detail.empty()) return absl::Status(code, AbslView(error_code));
  return absl::Status(code, absl::StrCat(AbslView(error_code), ": ", AbslView(detail)));
}

std::string_view ErrorCode(const absl::Status& status) {
  if (status.ok()) return {};
  const absl::string_view raw = status.message();
  std::string_view message(raw.data(), raw.size());
  return message.substr(0, message.find(':'));
}

}  // namespace perturbkit
