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

#ifndef PERTURBKIT_STATUS_H_
#define PERTURBKIT_STATUS_H_

#include <string_view>

#include "absl/status/status.h"

namespace perturbkit {

// Errors carry a stable kebab-case code as the first token of the status
// message ("malformed-record: line 7"), so callers and the CLI can report
// them in machine-readable form.
absl::Status MakeError(absl::StatusCode code, std::string_view error_code,
                       std::string_view detail = {});

// Returns the leading error code of `status`, or "" for OK.
std::string_view ErrorCode(const absl::Status& status);

}  // namespace perturbkit

#endif  // PERTURBKIT_STATUS_H_
