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

#ifndef PERTURBKIT_CORPUS_H_
#define PERTURBKIT_CORPUS_H_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "perturbkit/dictionary.h"

namespace perturbkit {

struct SentenceRecord {
  std::string id;
  std::string text;
  double toxicity = 1.0;
  std::set<std::string> identity_tags;

  friend bool operator==(const SentenceRecord&,
                         const SentenceRecord&) = default;
};

struct CleaningReport {
  int64_t input_count = 0;
  int64_t removed_duplicates = 0;
  int64_t removed_non_english = 0;
  int64_t removed_empty = 0;
  int64_t output_count = 0;

  bool Balanced() const {
    return output_count == input_count - removed_duplicates -
                               removed_non_english - removed_empty;
  }
  friend bool operator==(const CleaningReport&,
                         const CleaningReport&) = default;
};

// Strips hyperlinks, standalone numbers, emoji and every character outside
// {letters, apostrophe, space, . , ! ?}, then collapses whitespace. The
// passes repeat until nothing changes, so the result is a fixed point.
// Fails with empty-after-clean when nothing is left.
absl::StatusOr<std::string> CleanText(std::string_view raw);

// Alphabetic tokens of a cleaned sentence, lowercased, as looked up in the
// dictionary.
std::vector<std::string> AlphabeticTokens(std::string_view cleaned);

// True when every alphabetic token is in `dictionary`. A token with an
// apostrophe passes if it is listed whole or if each apostrophe-separated
// piece is listed.
bool IsStandardEnglish(std::string_view cleaned, const Dictionary& dictionary);

struct FilterResult {
  std::vector<SentenceRecord> records;
  CleaningReport report;
};

// Cleans each record's text, then drops records that clean to nothing,
// exact duplicates of an earlier cleaned text, and records with a word
// missing from `dictionary`. Output texts are the cleaned texts.
absl::StatusOr<FilterResult> FilterCorpus(
    const std::vector<SentenceRecord>& records, const Dictionary& dictionary);

// Dataset files: one JSON object per line with id, text, toxicity and
// identity_tags.
absl::StatusOr<std::vector<SentenceRecord>> LoadDataset(
    const std::string& path);
absl::Status WriteDataset(const std::string& path,
                          const std::vector<SentenceRecord>& records);

// Plain-text corpora: one sentence per line, id = 1-based line number,
// toxicity 1.0. Blank lines are skipped.
absl::StatusOr<std::vector<SentenceRecord>> LoadPlainText(
    const std::string& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_CORPUS_H_
