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

#ifndef PERTURBKIT_TEXT_H_
#define PERTURBKIT_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/strings/string_view.h"

namespace perturbkit {

// absl may be built with its own string_view type; heterogeneous lookups in
// absl containers go through this.
inline absl::string_view AbslView(std::string_view s) {
  return absl::string_view(s.data(), s.size());
}

inline bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
// The punctuation kept by cleaning: . , ! ?
inline bool IsSentencePunctuation(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?';
}

std::string AsciiLower(std::string_view s);

// True when `s` has any byte that is not an ASCII letter. Multi-byte UTF-8
// sequences count as non-letters.
bool HasNonLetter(std::string_view s);

// Whitespace tokenization. Sentences are word sequences in the
// perturbation pipeline and are rejoined with single spaces.
std::vector<std::string> SplitWords(std::string_view text);
std::string JoinWords(std::span<const std::string> words);

// A token split into leading sentence punctuation, the word core, and
// trailing sentence punctuation, e.g. "idiot!!!" -> {"", "idiot", "!!!"}.
struct WordParts {
  std::string_view lead;
  std::string_view core;
  std::string_view trail;
};
WordParts SplitEdgePunctuation(std::string_view token);

// Levenshtein distance over code points.
int EditDistance(std::u32string_view a, std::u32string_view b);

// Lenient UTF-8 decoding; invalid bytes decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view s);
void AppendUtf8(char32_t code_point, std::string* out);

}  // namespace perturbkit

#endif  // PERTURBKIT_TEXT_H_
