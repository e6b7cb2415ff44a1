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

#ifndef PERTURBKIT_GENERATORS_H_
#define PERTURBKIT_GENERATORS_H_

#include <optional>
#include <string>
#include <string_view>

#include "perturbkit/dictionary.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/random.h"
#include "perturbkit/types.h"

namespace perturbkit {

// Synthetic variant of a lowercase dictionary word built with one base
// strategy. Returns nullopt when the strategy cannot apply to `word`
// (Abbr needs three letters; SpecialChar needs two and always keeps one;
// MixedCasePlus needs a dictionary word of length >= 2 hidden in `word`;
// kMixed is never generated).
std::optional<std::string> GenerateVariant(
    PerturbationType type, std::string_view word, const Dictionary& dictionary,
    Rng& rng, const VisualTable& table = VisualTable::Default());

}  // namespace perturbkit

#endif  // PERTURBKIT_GENERATORS_H_
