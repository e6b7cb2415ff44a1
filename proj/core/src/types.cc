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

#include "perturbkit/types.h"

namespace perturbkit {

std::string_view TypeName(PerturbationType type) {
  switch (type) {
    case PerturbationType::kRepeatChar:
      return "RepeatChar";
    case PerturbationType::kAbbr:
      return "Abbr";
    case PerturbationType::kSpecialChar:
      return "SpecialChar";
    case PerturbationType::kMixedCase:
      return "MixedCase";
    case PerturbationType::kMixedCasePlus:
      return "MixedCasePlus";
    case PerturbationType::kMixed:
      return "Mixed";
  }
  return "Mixed";
}

std::string_view TypeLabel(PerturbationType type) {
  if (type == PerturbationType::kMixedCasePlus) return "MixedCase+";
  return TypeName(type);
}

std::optional<PerturbationType> ParseType(std::string_view name) {
  for (PerturbationType t : kAllTypes) {
    if (name == TypeName(t) || name == TypeLabel(t)) return t;
  }
  return std::nullopt;
}

}  // namespace perturbkit
