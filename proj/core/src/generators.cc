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

#include "perturbkit/generators.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "perturbkit/text.h"

namespace perturbkit {
namespace {

constexpr int kMixedCaseAttempts = 8;

std::vector<size_t> LetterPositions(std::string_view word) {
  std::vector<size_t> out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (IsAsciiLetter(word[i])) out.push_back(i);
  }
  return out;
}

// `count` distinct entries of `pool`, in ascending order.
std::vector<size_t> ChooseDistinct(std::vector<size_t> pool, size_t count,
                                   Rng& rng) {
  count = std::min(count, pool.size());
  for (size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + UniformIndex(rng, pool.size() - i)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

char Upper(char c) { return static_cast<char>(c - 'a' + 'A'); }

std::optional<std::string> RepeatChar(std::string_view word, Rng& rng) {
  std::vector<size_t> letters = LetterPositions(word);
  if (letters.empty()) return std::nullopt;
  const size_t pos = letters[UniformIndex(rng, letters.size())];
  const size_t extra = 1 + UniformIndex(rng, 3);
  std::string out(word);
  out.insert(pos, extra, word[pos]);
  return out;
}

std::optional<std::string> Abbr(std::string_view word, Rng& rng) {
  std::vector<size_t> letters = LetterPositions(word);
  if (letters.size() < 3) return std::nullopt;
  const size_t deletions =
      1 + UniformIndex(rng, std::min<size_t>(2, letters.size() - 2));
  std::vector<size_t> drop = ChooseDistinct(letters, deletions, rng);
  std::string out;
  for (size_t i = 0, d = 0; i < word.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
      continue;
    }
    out.push_back(word[i]);
  }
  return out;
}

std::optional<std::string> SpecialChar(std::string_view word, Rng& rng,
                                       const VisualTable& table) {
  // At least one letter survives; a token of placeholders alone has no
  // canonical key and never enters a lexicon.
  std::vector<size_t> letters = LetterPositions(word);
  if (letters.size() < 2) return std::nullopt;
  const size_t replacements =
      1 + UniformIndex(rng, std::min<size_t>(2, letters.size() - 1));
  std::vector<size_t> chosen = ChooseDistinct(letters, replacements, rng);
  const std::vector<char32_t> placeholders =
      table.SourcesFor(VisualTable::kWildcard);
  std::string out;
  for (size_t i = 0, c = 0; i < word.size(); ++i) {
    if (c >= chosen.size() || chosen[c] != i) {
      out.push_back(word[i]);
      continue;
    }
    ++c;
    std::vector<char32_t> options = table.SourcesFor(word[i]);
    options.insert(options.end(), placeholders.begin(), placeholders.end());
    // Sentence punctuation at a word edge would be read as punctuation.
    if (i == 0 || i + 1 == word.size()) {
      std::erase_if(options, [](char32_t s) {
        return s < 0x80 && IsSentencePunctuation(static_cast<char>(s));
      });
    }
    if (options.empty()) {
      out.push_back(word[i]);
      continue;
    }
    AppendUtf8(options[UniformIndex(rng, options.size())], &out);
  }
  if (out == word) return std::nullopt;
  return out;
}

std::string UppercaseSequence(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (IsAsciiUpper(c)) out.push_back(static_cast<char>(c - 'A' + 'a'));
  }
  return out;
}

std::optional<std::string> MixedCase(std::string_view word,
                                     const Dictionary& dictionary, Rng& rng) {
  std::vector<size_t> letters = LetterPositions(word);
  if (letters.empty()) return std::nullopt;
  for (int attempt = 0; attempt < kMixedCaseAttempts; ++attempt) {
    const size_t count =
        1 + UniformIndex(rng, std::max<size_t>(1, letters.size() / 2));
    std::string out(word);
    for (size_t pos : ChooseDistinct(letters, count, rng)) {
      out[pos] = Upper(out[pos]);
    }
    const std::string upper = UppercaseSequence(out);
    if (upper.size() < 2 || !dictionary.Contains(upper)) return out;
  }
  std::string out(word);
  const size_t pos = letters[UniformIndex(rng, letters.size())];
  out[pos] = Upper(out[pos]);
  return out;
}

// Leftmost embedding of `sub` in `word`, or empty when absent.
std::vector<size_t> Embedding(std::string_view sub, std::string_view word) {
  std::vector<size_t> positions;
  size_t j = 0;
  for (size_t i = 0; i < word.size() && j < sub.size(); ++i) {
    if (word[i] == sub[j]) {
      positions.push_back(i);
      ++j;
    }
  }
  if (j < sub.size()) positions.clear();
  return positions;
}

std::optional<std::string> MixedCasePlus(std::string_view word,
                                         const Dictionary& dictionary,
                                         Rng& rng) {
  std::vector<std::string_view> hidden;
  for (const std::string& candidate : dictionary.words()) {
    if (candidate.size() < 2 || candidate.size() >= word.size()) continue;
    if (!Embedding(candidate, word).empty()) hidden.push_back(candidate);
  }
  if (hidden.empty()) return std::nullopt;
  std::string_view chosen = hidden[UniformIndex(rng, hidden.size())];
  std::string out(word);
  for (size_t pos : Embedding(chosen, word)) out[pos] = Upper(out[pos]);
  return out;
}

}  // namespace

std::optional<std::string> GenerateVariant(PerturbationType type,
                                           std::string_view word,
                                           const Dictionary& dictionary,
                                           Rng& rng,
                                           const VisualTable& table) {
  switch (type) {
    case PerturbationType::kRepeatChar:
      return RepeatChar(word, rng);
    case PerturbationType::kAbbr:
      return Abbr(word, rng);
    case PerturbationType::kSpecialChar:
      return SpecialChar(word, rng, table);
    case PerturbationType::kMixedCase:
      return MixedCase(word, dictionary, rng);
    case PerturbationType::kMixedCasePlus:
      return MixedCasePlus(word, dictionary, rng);
    case PerturbationType::kMixed:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace perturbkit
