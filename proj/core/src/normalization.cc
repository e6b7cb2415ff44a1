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

#include "perturbkit/normalization.h"

#include <algorithm>
#include <fstream>
#include <limits>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"

namespace perturbkit {
namespace {

using internal::Json;

constexpr int kInfinity = std::numeric_limits<int>::max() / 4;
constexpr char32_t kWildcard = VisualTable::kWildcard;

bool InAlphabet(char32_t c) { return (c >= U'a' && c <= U'z') || c == U'\''; }
bool IsLetter(char32_t c) { return c >= U'a' && c <= U'z'; }

// Levenshtein distance from `word` to `target` if it is at most `limit`,
// else -1. Insertions and substitutions may only produce alphabet
// characters; a wildcard in `word` matches any letter for free.
int BoundedDistance(std::u32string_view word, std::u32string_view target,
                    int limit) {
  const size_t n = word.size();
  const size_t m = target.size();
  std::vector<int> prev(m + 1);
  std::vector<int> cur(m + 1);
  prev[0] = 0;
  for (size_t j = 1; j <= m; ++j) {
    prev[j] = InAlphabet(target[j - 1]) ? std::min(prev[j - 1] + 1, kInfinity)
                                        : kInfinity;
  }
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    int row_min = cur[0];
    for (size_t j = 1; j <= m; ++j) {
      const char32_t a = word[i - 1];
      const char32_t b = target[j - 1];
      int substitute;
      if (a == b || (a == kWildcard && IsLetter(b))) {
        substitute = prev[j - 1];
      } else {
        substitute = InAlphabet(b) ? prev[j - 1] + 1 : kInfinity;
      }
      const int insert = InAlphabet(b) ? cur[j - 1] + 1 : kInfinity;
      const int remove = prev[j] + 1;
      cur[j] = std::min({substitute, insert, remove, kInfinity});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > limit) return -1;
    prev.swap(cur);
  }
  return prev[m] <= limit ? prev[m] : -1;
}

std::string Encode(std::u32string_view s) {
  std::string out;
  for (char32_t c : s) AppendUtf8(c, &out);
  return out;
}

}  // namespace

FrequencyTable::FrequencyTable(
    const std::vector<std::pair<std::string, int64_t>>& counts) {
  for (const auto& [word, count] : counts) {
    if (word.empty() || count < 0) continue;
    counts_[AsciiLower(word)] += count;
    total_ += count;
  }
  for (const auto& [word, count] : counts_) {
    std::u32string decoded = DecodeUtf8(word);
    if (by_length_.size() <= decoded.size()) {
      by_length_.resize(decoded.size() + 1);
    }
    by_length_[decoded.size()].push_back(std::move(decoded));
  }
  for (auto& bucket : by_length_) std::sort(bucket.begin(), bucket.end());
}

absl::StatusOr<FrequencyTable> FrequencyTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  std::vector<std::pair<std::string, int64_t>> counts;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    int64_t count = 0;
    if (tab == std::string::npos || tab == 0 ||
        !absl::SimpleAtoi(line.substr(tab + 1), &count) || count < 0) {
      return internal::MalformedAt(line_number, "expected word<TAB>count");
    }
    counts.emplace_back(line.substr(0, tab), count);
  }
  FrequencyTable table(counts);
  if (table.total() <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-table", path);
  }
  return table;
}

int64_t FrequencyTable::Count(std::string_view word) const {
  auto it = counts_.find(AbslView(word));
  return it == counts_.end() ? 0 : it->second;
}

const std::vector<std::u32string>& FrequencyTable::WordsOfLength(
    size_t length) const {
  static const std::vector<std::u32string>* const kEmpty =
      new std::vector<std::u32string>();
  return length < by_length_.size() ? by_length_[length] : *kEmpty;
}

SpellCorrector::SpellCorrector(const FrequencyTable& table,
                               CorrectorOptions options,
                               const VisualTable& visual)
    : table_(table), options_(options), visual_(visual) {}

std::string SpellCorrector::PreNormalize(std::string_view word) const {
  const std::u32string folded = DecodeUtf8(LeetFold(word, visual_));
  std::string out;
  for (size_t i = 0; i < folded.size(); ++i) {
    if (i >= 2 && folded[i] == folded[i - 1] && folded[i] == folded[i - 2]) {
      continue;
    }
    AppendUtf8(folded[i], &out);
  }
  return out;
}

std::vector<std::pair<std::string, int>> SpellCorrector::CandidatesWithDistance(
    std::string_view word, int max_edit) const {
  const std::u32string decoded = DecodeUtf8(word);
  std::vector<std::pair<std::string, int>> out;
  const size_t lo = decoded.size() > static_cast<size_t>(max_edit)
                        ? decoded.size() - max_edit
                        : 0;
  const size_t hi = decoded.size() + max_edit;
  for (size_t length = lo; length <= hi; ++length) {
    for (const std::u32string& target : table_.WordsOfLength(length)) {
      const int distance = BoundedDistance(decoded, target, max_edit);
      if (distance >= 0) out.emplace_back(Encode(target), distance);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> SpellCorrector::Candidates(std::string_view word,
                                                    int max_edit) const {
  std::vector<std::string> out;
  for (auto& [candidate, distance] : CandidatesWithDistance(word, max_edit)) {
    out.push_back(std::move(candidate));
  }
  return out;
}

double SpellCorrector::ErrorModel(int distance) const {
  return distance <= 1 ? options_.near_weight : options_.far_weight;
}

std::string SpellCorrector::Correct(std::string_view word) const {
  const std::string lowered = AsciiLower(word);
  if (table_.Contains(lowered)) return lowered;
  const std::string normalized =
      options_.perturbation_aware ? PreNormalize(word) : lowered;
  if (table_.Contains(normalized)) return normalized;

  std::vector<std::pair<std::string, int>> candidates =
      CandidatesWithDistance(normalized, 1);
  if (candidates.empty()) candidates = CandidatesWithDistance(normalized, 2);
  if (candidates.empty()) return normalized;

  const std::string* best = nullptr;
  double best_score = -1.0;
  double mass = 0.0;
  // Candidates are sorted, so ties go to the alphabetically first word.
  for (const auto& [candidate, distance] : candidates) {
    const double score =
        table_.Probability(candidate) * ErrorModel(distance);
    mass += score;
    if (score > best_score) {
      best_score = score;
      best = &candidate;
    }
  }
  if (!options_.always_guess &&
      (mass <= 0.0 || best_score / mass < options_.min_confidence)) {
    return normalized;
  }
  return *best;
}

absl::StatusOr<NormalizationReport> EvaluateNormalization(
    std::span<const NormalizationPair> pairs,
    const SpellCorrector& corrector) {
  if (pairs.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-input");
  }
  NormalizationReport report;
  int64_t total_correct = 0;
  for (const NormalizationPair& pair : pairs) {
    ++report.n[pair.type];
    const bool ok =
        AsciiLower(corrector.Correct(pair.perturbed)) == AsciiLower(pair.clean);
    report.correct[pair.type] += ok ? 1 : 0;
    total_correct += ok ? 1 : 0;
  }
  for (const auto& [type, n] : report.n) {
    report.accuracy[type] =
        static_cast<double>(report.correct[type]) / static_cast<double>(n);
  }
  report.total = static_cast<int64_t>(pairs.size());
  report.overall =
      static_cast<double>(total_correct) / static_cast<double>(report.total);
  return report;
}

std::string NormalizationReportJson(const NormalizationReport& report,
                                    std::string_view corrector_name) {
  nlohmann::ordered_json j;
  j["corrector"] = std::string(corrector_name);
  j["per_type"] = nlohmann::ordered_json::object();
  for (PerturbationType type : kAllTypes) {
    auto it = report.n.find(type);
    if (it == report.n.end()) continue;
    j["per_type"][std::string(TypeName(type))] = {
        {"n", it->second},
        {"correct", report.correct.at(type)},
        {"accuracy", report.accuracy.at(type)}};
  }
  j["total"] = report.total;
  j["overall"] = report.overall;
  auto plus = report.accuracy.find(PerturbationType::kMixedCasePlus);
  j["mixed_case_plus_accuracy"] =
      plus == report.accuracy.end() ? nlohmann::ordered_json(nullptr)
                                    : nlohmann::ordered_json(plus->second);
  return j.dump(2) + "\n";
}

std::string NormalizationReportCsv(const NormalizationReport& report,
                                   std::string_view corrector_name) {
  std::string header = "corrector";
  std::string row(corrector_name);
  for (PerturbationType type : kBaseTypes) {
    absl::StrAppend(&header, ",", AbslView(TypeLabel(type)));
    auto it = report.accuracy.find(type);
    absl::StrAppend(&row, ",",
                    it == report.accuracy.end()
                        ? std::string()
                        : absl::StrFormat("%.3f", it->second));
  }
  absl::StrAppend(&header, ",Overall\n");
  absl::StrAppend(&row, ",", absl::StrFormat("%.3f", report.overall), "\n");
  return header + row;
}

absl::StatusOr<std::vector<NormalizationPair>> LoadNormalizationPairs(
    const std::string& path) {
  std::vector<NormalizationPair> pairs;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        auto pick = [&](const char* a, const char* b) -> const Json* {
          if (auto it = j.find(a); it != j.end() && it->is_string()) {
            return &*it;
          }
          if (auto it = j.find(b); it != j.end() && it->is_string()) {
            return &*it;
          }
          return nullptr;
        };
        const Json* clean = pick("clean", "clean_word");
        const Json* perturbed = pick("perturbed", "perturbed_word");
        const Json* type = pick("type", "type");
        if (clean == nullptr || perturbed == nullptr || type == nullptr) {
          return internal::MalformedAt(line,
                                       "need clean, perturbed and type");
        }
        std::optional<PerturbationType> parsed =
            ParseType(type->get<std::string>());
        if (!parsed) return internal::MalformedAt(line, "unknown type");
        pairs.push_back(
            {clean->get<std::string>(), perturbed->get<std::string>(), *parsed});
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return pairs;
}

}  // namespace perturbkit
