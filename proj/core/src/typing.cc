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

#include "perturbkit/typing.h"

#include <algorithm>
#include <vector>

#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

constexpr char32_t kWildcard = VisualTable::kWildcard;

std::u32string CollapseRepeats32(std::u32string_view s) {
  std::u32string out;
  for (char32_t c : s) {
    if (out.empty() || out.back() != c) out.push_back(c);
  }
  return out;
}

// Can `pattern` (with wildcards) collapse to `collapsed`? Each pattern
// character either repeats the previously produced character or produces
// the next character of `collapsed`.
bool CollapseMatches(std::u32string_view pattern,
                     std::u32string_view collapsed) {
  const size_t n = pattern.size();
  const size_t m = collapsed.size();
  // reach[j]: some prefix of the pattern produces collapsed[0, j).
  std::vector<char> reach(m + 1, 0);
  reach[0] = 1;
  for (size_t i = 0; i < n; ++i) {
    std::vector<char> next(m + 1, 0);
    const char32_t c = pattern[i];
    for (size_t j = 0; j <= m; ++j) {
      if (!reach[j]) continue;
      if (j > 0 && (c == kWildcard || c == collapsed[j - 1])) next[j] = 1;
      if (j < m && (c == kWildcard || c == collapsed[j])) next[j + 1] = 1;
    }
    reach.swap(next);
  }
  return reach[m] != 0;
}

bool IsStrictSubsequence(std::u32string_view sub, std::u32string_view full) {
  if (sub.size() >= full.size()) return false;
  size_t j = 0;
  for (char32_t c : full) {
    if (j < sub.size() && (sub[j] == kWildcard || sub[j] == c)) ++j;
  }
  return j == sub.size();
}

bool WildcardEquals(std::u32string_view pattern, std::u32string_view word) {
  if (pattern.size() != word.size()) return false;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != kWildcard && pattern[i] != word[i]) return false;
  }
  return true;
}

// Non-letters the clean word already has (the apostrophe of a contraction)
// are not a perturbation signal.
bool HasIntroducedNonLetter(std::string_view perturbed,
                            std::string_view clean) {
  for (char c : perturbed) {
    if (!IsAsciiLetter(c) && clean.find(c) == std::string_view::npos) {
      return true;
    }
  }
  return false;
}

std::string UppercaseLetters(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (IsAsciiUpper(c)) out.push_back(static_cast<char>(c - 'A' + 'a'));
  }
  return out;
}

}  // namespace

std::string CollapseRepeats(std::string_view word) {
  std::string out;
  for (char32_t c : CollapseRepeats32(DecodeUtf8(word))) AppendUtf8(c, &out);
  return out;
}

absl::StatusOr<PerturbationType> Classify(std::string_view clean,
                                          std::string_view perturbed,
                                          const Dictionary& dictionary,
                                          const VisualTable& table) {
  if (perturbed.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-perturbation");
  }
  if (perturbed == clean) {
    return MakeError(absl::StatusCode::kInvalidArgument, "identical-pair",
                     clean);
  }
  const std::u32string clean32 = DecodeUtf8(clean);
  const std::u32string clean_collapsed = CollapseRepeats32(clean32);
  const std::string lower = AsciiLower(perturbed);
  const std::u32string lower32 = DecodeUtf8(lower);
  const std::u32string folded = DecodeUtf8(LeetFold(perturbed, table));
  const bool non_letter = HasIntroducedNonLetter(perturbed, clean);
  const bool has_upper =
      std::any_of(perturbed.begin(), perturbed.end(), IsAsciiUpper);

  if (non_letter && CollapseMatches(folded, clean_collapsed)) {
    return PerturbationType::kSpecialChar;
  }
  if (!non_letter && has_upper) {
    const std::string upper = UppercaseLetters(perturbed);
    // All caps spells the clean word itself, which is no new word.
    if (upper.size() >= 2 && upper != clean && dictionary.Contains(upper) &&
        (lower == clean || EditDistance(lower32, clean32) <= 1)) {
      return PerturbationType::kMixedCasePlus;
    }
  }
  if (lower == clean && has_upper) return PerturbationType::kMixedCase;
  if (lower != clean && CollapseRepeats32(lower32) == clean_collapsed &&
      lower32.size() > clean32.size()) {
    return PerturbationType::kRepeatChar;
  }
  if (IsStrictSubsequence(lower32, clean32) &&
      lower32.find(kWildcard) == std::u32string::npos) {
    return PerturbationType::kAbbr;
  }

  // Combinations, judged on the folded form.
  const std::u32string folded_collapsed = CollapseRepeats32(folded);
  const bool has_runs = folded_collapsed.size() < folded.size();
  const bool exact = WildcardEquals(folded, clean32);
  const bool repeat = folded.size() > clean32.size() &&
                      CollapseMatches(folded, clean_collapsed);
  const bool deletion = IsStrictSubsequence(folded, clean32);
  const bool repeat_deletion =
      has_runs && IsStrictSubsequence(folded_collapsed, clean32);
  if (exact || repeat || deletion || repeat_deletion) {
    const int signals = static_cast<int>(has_upper) +
                        static_cast<int>(non_letter) +
                        static_cast<int>(repeat || repeat_deletion) +
                        static_cast<int>(deletion || repeat_deletion);
    if (signals >= 2) return PerturbationType::kMixed;
  }
  return MakeError(absl::StatusCode::kInvalidArgument, "unclassifiable",
                   perturbed);
}

}  // namespace perturbkit
