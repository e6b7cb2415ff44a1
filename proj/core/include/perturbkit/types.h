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

#ifndef PERTURBKIT_TYPES_H_
#define PERTURBKIT_TYPES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

namespace perturbkit {

// Human-written perturbation strategies. kMixed covers combinations of two
// or more base strategies.
enum class PerturbationType {
  kRepeatChar,
  kAbbr,
  kSpecialChar,
  kMixedCase,
  kMixedCasePlus,
  kMixed,
};

inline constexpr std::array<PerturbationType, 5> kBaseTypes = {
    PerturbationType::kRepeatChar, PerturbationType::kAbbr,
    PerturbationType::kSpecialChar, PerturbationType::kMixedCase,
    PerturbationType::kMixedCasePlus};

inline constexpr std::array<PerturbationType, 6> kAllTypes = {
    PerturbationType::kRepeatChar,  PerturbationType::kAbbr,
    PerturbationType::kSpecialChar, PerturbationType::kMixedCase,
    PerturbationType::kMixedCasePlus, PerturbationType::kMixed};

// Serialized name ("RepeatChar", ..., "MixedCasePlus", "Mixed").
std::string_view TypeName(PerturbationType type);
// Report column label; "MixedCase+" for kMixedCasePlus.
std::string_view TypeLabel(PerturbationType type);
// Accepts both TypeName and TypeLabel spellings.
std::optional<PerturbationType> ParseType(std::string_view name);

using TypeCounts = std::map<PerturbationType, int64_t>;

}  // namespace perturbkit

#endif  // PERTURBKIT_TYPES_H_
