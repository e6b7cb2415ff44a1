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

#ifndef PERTURBKIT_DICTIONARY_H_
#define PERTURBKIT_DICTIONARY_H_

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "perturbkit/text.h"

namespace perturbkit {

// An immutable set of lowercase words. Loaded from a plain-text list with
// one word per line; blank lines and lines starting with '#' are skipped.
class Dictionary {
 public:
  Dictionary() = default;
  Dictionary(std::initializer_list<std::string_view> words);
  explicit Dictionary(const std::vector<std::string>& words);

  static absl::StatusOr<Dictionary> Load(const std::string& path);

  bool Contains(std::string_view word) const {
    return words_.contains(AbslView(word));
  }
  size_t size() const { return sorted_.size(); }
  bool empty() const { return sorted_.empty(); }
  // Words in ascending order.
  const std::vector<std::string>& words() const { return sorted_; }

 private:
  void Insert(std::string_view word);
  void Finish();

  absl::flat_hash_set<std::string> words_;
  std::vector<std::string> sorted_;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_DICTIONARY_H_
