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

#include "perturbkit/dictionary.h"

#include <algorithm>
#include <fstream>

#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {

Dictionary::Dictionary(std::initializer_list<std::string_view> words) {
  for (std::string_view w : words) Insert(w);
  Finish();
}

Dictionary::Dictionary(const std::vector<std::string>& words) {
  for (const std::string& w : words) Insert(w);
  Finish();
}

absl::StatusOr<Dictionary> Dictionary::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  Dictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && IsAsciiSpace(line.back())) line.pop_back();
    size_t start = 0;
    while (start < line.size() && IsAsciiSpace(line[start])) ++start;
    std::string_view word = std::string_view(line).substr(start);
    if (word.empty() || word.front() == '#') continue;
    dict.Insert(word);
  }
  dict.Finish();
  return dict;
}

void Dictionary::Insert(std::string_view word) {
  if (word.empty()) return;
  std::string lowered = AsciiLower(word);
  if (words_.insert(lowered).second) sorted_.push_back(std::move(lowered));
}

void Dictionary::Finish() { std::sort(sorted_.begin(), sorted_.end()); }

}  // namespace perturbkit
