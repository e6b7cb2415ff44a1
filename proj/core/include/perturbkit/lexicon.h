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

#ifndef PERTURBKIT_LEXICON_H_
#define PERTURBKIT_LEXICON_H_

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "perturbkit/dictionary.h"

namespace perturbkit {

// Folds visually similar characters back to the letter they imitate.
// Placeholder characters fold to kWildcard, which matches any letter.
class VisualTable {
 public:
  static constexpr char kWildcard = '?';

  // The shipped table (core/data/visual_similarity.tsv).
  static const VisualTable& Default();

  // Reads "source<TAB>target" lines; source is one UTF-8 character, target
  // is a lowercase letter or '?'. '#' starts a comment line.
  static absl::StatusOr<VisualTable> Load(const std::string& path);

  VisualTable() = default;
  void Set(char32_t source, char target) { map_[source] = target; }
  // Returns the folded letter, or '\0' when `c` has no entry.
  char Fold(char32_t c) const {
    auto it = map_.find(c);
    return it == map_.end() ? '\0' : it->second;
  }
  // Symbols that fold to `letter`, in ascending code point order.
  std::vector<char32_t> SourcesFor(char letter) const;
  size_t size() const { return map_.size(); }

  friend bool operator==(const VisualTable& a, const VisualTable& b) {
    return a.map_ == b.map_;
  }

 private:
  absl::flat_hash_map<char32_t, char> map_;
};

// Maps each character through `table` and lowercases ASCII letters.
// Characters without an entry are kept.
std::string LeetFold(std::string_view word,
                     const VisualTable& table = VisualTable::Default());

// Phonetic-visual signature: the leading letter plus a skeleton of
// consonant-class digits and the vowel marker '0', computed after leet
// folding and case folding. Classes follow Soundex (b f p v = 1,
// c g j k q s x z = 2, d t = 3, l = 4, m n = 5, r = 6); a e i o u y are
// the vowel marker; h and w carry no symbol. Adjacent identical symbols
// collapse, and the leading letter's own symbol is not repeated in the
// skeleton. Wildcards render as '*'.
struct CanonicalKey {
  char leading = '\0';
  std::string skeleton;

  std::string ToString() const { return std::string(1, leading) + skeleton; }
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

// Fails with no-alphabetic-content when the folded word has no letter.
absl::StatusOr<CanonicalKey> ComputeCanonicalKey(
    std::string_view word, const VisualTable& table = VisualTable::Default());

// Every concrete key the word can take when each wildcard stands for any
// letter; a single key for wildcard-free words, empty when there is no
// alphabetic content. Wildcards past the fourth are treated as silent.
std::vector<CanonicalKey> ExpandCanonicalKeys(
    std::string_view word, const VisualTable& table = VisualTable::Default());

// Key equality with wildcard matching.
bool SameCanonicalKey(std::string_view a, std::string_view b,
                      const VisualTable& table = VisualTable::Default());

struct LexiconCluster {
  std::string clean;
  std::vector<std::string> perturbations;  // Insertion order, no repeats.

  friend bool operator==(const LexiconCluster&,
                         const LexiconCluster&) = default;
};

// Clean word -> observed perturbations. Immutable once built or loaded.
class Lexicon {
 public:
  // Appends `perturbation` to the cluster of `clean` unless it is already
  // there or equals `clean`. Returns true when added.
  bool Add(std::string_view clean, std::string_view perturbation);

  // Perturbations of `word` in insertion order; empty when absent.
  const std::vector<std::string>& Lookup(std::string_view word) const;

  // Clusters ordered by clean word.
  const std::map<std::string, LexiconCluster, std::less<>>& clusters() const {
    return clusters_;
  }
  size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }
  size_t perturbation_count() const;

  // Line-delimited JSON: {"clean": ..., "perturbations": [...]}. Loading
  // also accepts externally produced word -> perturbations exports; repeated
  // clean words are merged.
  static absl::StatusOr<Lexicon> Load(const std::string& path);
  absl::Status Save(const std::string& path) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.clusters_ == b.clusters_;
  }

 private:
  std::map<std::string, LexiconCluster, std::less<>> clusters_;
  absl::flat_hash_map<std::string, absl::flat_hash_set<std::string>> seen_;
};

// Attaches every distinct out-of-dictionary token to each dictionary word
// that shares its canonical key. Title-case and all-uppercase spellings of
// dictionary words are ordinary capitalization and are skipped, as are
// tokens without a single ASCII letter.
absl::StatusOr<Lexicon> BuildLexicon(
    std::span<const std::string> tokens, const Dictionary& dictionary,
    const VisualTable& table = VisualTable::Default());

}  // namespace perturbkit

#endif  // PERTURBKIT_LEXICON_H_
