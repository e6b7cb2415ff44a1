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

#include "perturbkit/lexicon.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

using internal::Json;

constexpr char kVowelMarker = '0';
constexpr char kSilent = '\0';
constexpr char kWildcardSymbol = '*';
constexpr int kMaxExpandedWildcards = 4;

// One representative letter per symbol class, plus a silent letter.
constexpr std::string_view kClassRepresentatives = "bcdlmrah";

char ClassSymbol(char letter) {
  switch (letter) {
    case 'b': case 'f': case 'p': case 'v':
      return '1';
    case 'c': case 'g': case 'j': case 'k': case 'q': case 's': case 'x':
    case 'z':
      return '2';
    case 'd': case 't':
      return '3';
    case 'l':
      return '4';
    case 'm': case 'n':
      return '5';
    case 'r':
      return '6';
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return kVowelMarker;
    default:
      return kSilent;  // h, w
  }
}

// Lowercase letters and wildcards of the folded word; everything else is
// dropped.
std::string KeyAlphabet(std::string_view word, const VisualTable& table) {
  std::string out;
  for (char c : LeetFold(word, table)) {
    if ((c >= 'a' && c <= 'z') || c == VisualTable::kWildcard) {
      out.push_back(c);
    }
  }
  return out;
}

// `letters` may contain wildcards; symbols before the leading letter are
// dropped.
std::optional<CanonicalKey> KeyOfLetters(std::string_view letters) {
  size_t lead_pos = letters.find_first_not_of(VisualTable::kWildcard);
  if (lead_pos == std::string_view::npos) return std::nullopt;
  CanonicalKey key;
  key.leading = letters[lead_pos];
  char last = ClassSymbol(key.leading);
  for (size_t i = lead_pos + 1; i < letters.size(); ++i) {
    char symbol = letters[i] == VisualTable::kWildcard
                      ? kWildcardSymbol
                      : ClassSymbol(letters[i]);
    if (symbol == kSilent) continue;
    if (symbol != kWildcardSymbol && symbol == last) continue;
    key.skeleton.push_back(symbol);
    last = symbol;
  }
  return key;
}

void Expand(std::string& letters, size_t from, int budget, bool before_lead,
            std::set<CanonicalKey>* out) {
  size_t pos = letters.find(VisualTable::kWildcard, from);
  if (pos == std::string::npos) {
    if (auto key = KeyOfLetters(letters)) out->insert(*std::move(key));
    return;
  }
  if (budget == 0) {
    letters[pos] = 'h';
    Expand(letters, pos + 1, 0, false, out);
    letters[pos] = VisualTable::kWildcard;
    return;
  }
  // A wildcard ahead of every real letter becomes the leading letter, so
  // the letter itself matters there, not just its class.
  const bool leads = before_lead;
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz";
  std::string_view options = leads ? kAlphabet : kClassRepresentatives;
  for (char c : options) {
    letters[pos] = c;
    Expand(letters, pos + 1, budget - 1, false, out);
  }
  letters[pos] = VisualTable::kWildcard;
}

}  // namespace

const VisualTable& VisualTable::Default() {
  static const VisualTable* const kTable = [] {
    auto* table = new VisualTable();
    static constexpr std::pair<char, char> kEntries[] = {
        {'0', 'o'}, {'1', 'i'}, {'3', 'e'}, {'4', 'a'}, {'5', 's'},
        {'6', 'g'}, {'7', 't'}, {'8', 'b'}, {'9', 'g'}, {'@', 'a'},
        {'$', 's'}, {'!', 'i'}, {'+', 't'}, {'(', 'c'}, {'|', 'l'},
        {'*', kWildcard}, {'_', kWildcard}, {'-', kWildcard},
        {'.', kWildcard}};
    for (auto [source, target] : kEntries) table->Set(source, target);
    return table;
  }();
  return *kTable;
}

absl::StatusOr<VisualTable> VisualTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  VisualTable table;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    size_t tab = line.find('\t');
    std::u32string source =
        tab == std::string::npos ? U"" : DecodeUtf8(line.substr(0, tab));
    std::string target = tab == std::string::npos ? "" : line.substr(tab + 1);
    if (source.size() != 1 || target.size() != 1 ||
        !((target[0] >= 'a' && target[0] <= 'z') || target[0] == kWildcard)) {
      return internal::MalformedAt(line_number, "expected source<TAB>target");
    }
    table.Set(source[0], target[0]);
  }
  return table;
}

std::vector<char32_t> VisualTable::SourcesFor(char letter) const {
  std::vector<char32_t> out;
  for (const auto& [source, target] : map_) {
    if (target == letter) out.push_back(source);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string LeetFold(std::string_view word, const VisualTable& table) {
  std::string out;
  out.reserve(word.size());
  for (char32_t cp : DecodeUtf8(word)) {
    if (char folded = table.Fold(cp); folded != '\0') {
      out.push_back(folded);
    } else if (cp >= 'A' && cp <= 'Z') {
      out.push_back(static_cast<char>(cp - 'A' + 'a'));
    } else {
      AppendUtf8(cp, &out);
    }
  }
  return out;
}

absl::StatusOr<CanonicalKey> ComputeCanonicalKey(std::string_view word,
                                                 const VisualTable& table) {
  std::optional<CanonicalKey> key = KeyOfLetters(KeyAlphabet(word, table));
  if (!key.has_value()) {
    return MakeError(absl::StatusCode::kInvalidArgument,
                     "no-alphabetic-content", word);
  }
  return *std::move(key);
}

std::vector<CanonicalKey> ExpandCanonicalKeys(std::string_view word,
                                              const VisualTable& table) {
  std::string letters = KeyAlphabet(word, table);
  if (letters.find_first_not_of(VisualTable::kWildcard) == std::string::npos) {
    return {};
  }
  std::set<CanonicalKey> keys;
  const bool leading_wildcard =
      !letters.empty() && letters.front() == VisualTable::kWildcard;
  Expand(letters, 0, kMaxExpandedWildcards, leading_wildcard, &keys);
  return {keys.begin(), keys.end()};
}

bool SameCanonicalKey(std::string_view a, std::string_view b,
                      const VisualTable& table) {
  std::vector<CanonicalKey> ka = ExpandCanonicalKeys(a, table);
  std::vector<CanonicalKey> kb = ExpandCanonicalKeys(b, table);
  std::vector<CanonicalKey> common;
  std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(),
                        std::back_inserter(common));
  return !common.empty();
}

bool Lexicon::Add(std::string_view clean, std::string_view perturbation) {
  if (clean.empty() || perturbation.empty() || clean == perturbation) {
    return false;
  }
  auto& seen = seen_[std::string(clean)];
  if (!seen.emplace(perturbation).second) return false;
  auto it = clusters_.find(clean);
  if (it == clusters_.end()) {
    it = clusters_.emplace(std::string(clean),
                           LexiconCluster{std::string(clean), {}})
             .first;
  }
  it->second.perturbations.emplace_back(perturbation);
  return true;
}

const std::vector<std::string>& Lexicon::Lookup(std::string_view word) const {
  static const std::vector<std::string>* const kEmpty =
      new std::vector<std::string>();
  auto it = clusters_.find(word);
  return it == clusters_.end() ? *kEmpty : it->second.perturbations;
}

size_t Lexicon::perturbation_count() const {
  size_t n = 0;
  for (const auto& [clean, cluster] : clusters_) n += cluster.perturbations.size();
  return n;
}

absl::StatusOr<Lexicon> Lexicon::Load(const std::string& path) {
  Lexicon lexicon;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        auto clean = j.find("clean");
        auto perturbations = j.find("perturbations");
        if (clean == j.end() || !clean->is_string() ||
            clean->get_ref<const std::string&>().empty()) {
          return internal::MalformedAt(line, "clean must be a non-empty string");
        }
        if (perturbations == j.end() || !perturbations->is_array()) {
          return internal::MalformedAt(line, "perturbations must be a list");
        }
        for (const Json& p : *perturbations) {
          if (!p.is_string()) {
            return internal::MalformedAt(line, "perturbation not a string");
          }
          lexicon.Add(clean->get_ref<const std::string&>(),
                      p.get_ref<const std::string&>());
        }
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return lexicon;
}

absl::Status Lexicon::Save(const std::string& path) const {
  std::string out;
  for (const auto& [clean, cluster] : clusters_) {
    nlohmann::ordered_json j;
    j["clean"] = cluster.clean;
    j["perturbations"] = cluster.perturbations;
    out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
    out.push_back('\n');
  }
  return internal::WriteFile(path, out);
}

absl::StatusOr<Lexicon> BuildLexicon(std::span<const std::string> tokens,
                                     const Dictionary& dictionary,
                                     const VisualTable& table) {
  if (dictionary.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-dictionary");
  }
  absl::flat_hash_map<std::string, std::vector<const std::string*>> by_key;
  for (const std::string& word : dictionary.words()) {
    for (const CanonicalKey& key : ExpandCanonicalKeys(word, table)) {
      by_key[key.ToString()].push_back(&word);
    }
  }

  Lexicon lexicon;
  absl::flat_hash_set<std::string_view> visited;
  for (const std::string& token : tokens) {
    if (token.empty() || !visited.insert(token).second) continue;
    if (dictionary.Contains(token)) continue;
    // Numbers and symbol runs are not misspellings of anything.
    if (std::none_of(token.begin(), token.end(), IsAsciiLetter)) continue;
    const std::string lower = AsciiLower(token);
    if (dictionary.Contains(lower)) {
      const bool all_upper =
          std::none_of(token.begin(), token.end(),
                       [](char c) { return c >= 'a' && c <= 'z'; });
      const bool title = IsAsciiUpper(token[0]) &&
                         std::string_view(token).substr(1) ==
                             std::string_view(lower).substr(1);
      if (all_upper || title) continue;
    }
    // A word may reach the same dictionary entry through several keys.
    std::set<const std::string*> attached;
    for (const CanonicalKey& key : ExpandCanonicalKeys(token, table)) {
      auto it = by_key.find(key.ToString());
      if (it == by_key.end()) continue;
      for (const std::string* word : it->second) {
        if (attached.insert(word).second) lexicon.Add(*word, token);
      }
    }
  }
  return lexicon;
}

}  // namespace perturbkit
