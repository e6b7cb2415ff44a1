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

#ifndef PERTURBKIT_TYPING_H_
#define PERTURBKIT_TYPING_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "perturbkit/dictionary.h"
#include "perturbkit/lexicon.h"
#include "perturbkit/types.h"

namespace perturbkit {

// Reduces every maximal run of one character to a single character.
// Works on code points, so multi-byte characters are never split.
std::string CollapseRepeats(std::string_view word);

// Assigns a (clean, perturbed) pair to exactly one strategy. Rules apply
// in order and the first that fires wins:
//
//   SpecialChar    `perturbed` has a non-letter that `clean` lacks, and
//                  its leet fold matches `clean` once repeats are
//                  collapsed (wildcards match any letter).
//   MixedCasePlus  no such non-letter, case differs, the uppercase letters read
//                  in order form a dictionary word of length >= 2 other
//                  than `clean`, and the
//                  lowercased form is `clean` or one edit away from it
//                  (repubLIEcans inserts a letter to spell "lie").
//   MixedCase      lowercased form equals `clean`, case differs.
//   RepeatChar     lowercased form differs from `clean`, collapses to the
//                  same string, and is longer.
//   Abbr           lowercased form is a strict subsequence of `clean`.
//   Mixed          two or more of the case, special-character, repetition
//                  and deletion signals fire on the folded form.
//
// Errors: identical-pair when perturbed == clean, unclassifiable when no
// rule fires, and invalid-argument for an empty `perturbed`.
absl::StatusOr<PerturbationType> Classify(
    std::string_view clean, std::string_view perturbed,
    const Dictionary& dictionary,
    const VisualTable& table = VisualTable::Default());

}  // namespace perturbkit

#endif  // PERTURBKIT_TYPING_H_
