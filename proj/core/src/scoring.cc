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

#include "perturbkit/scoring.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"
#include "perturbkit/typing.h"

namespace perturbkit {

std::vector<absl::StatusOr<ScoreResult>> Scorer::BatchScore(
    std::span<const std::string> texts) const {
  std::vector<absl::StatusOr<ScoreResult>> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) out.push_back(Score(text));
  return out;
}

LexiconScorer::LexiconScorer(
    const std::vector<std::pair<std::string, double>>& terms,
    const VisualTable& table)
    : table_(&table) {
  for (const auto& [term, weight] : terms) {
    std::string key = NormalizeToken(term);
    if (key.empty()) continue;
    auto [it, inserted] = weights_.emplace(key, weight);
    if (!inserted) it->second = std::max(it->second, weight);
  }
}

absl::StatusOr<LexiconScorer> LexiconScorer::Load(const std::string& path,
                                                  const VisualTable& table) {
  std::ifstream in(path);
  if (!in) return MakeError(absl::StatusCode::kNotFound, "io", path);
  std::vector<std::pair<std::string, double>> terms;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    double weight = 0.0;
    if (tab == std::string::npos || tab == 0 ||
        !absl::SimpleAtod(line.substr(tab + 1), &weight) ||
        !(weight >= 0.0 && weight <= 1.0)) {
      return internal::MalformedAt(line_number,
                                   "expected term<TAB>weight in [0,1]");
    }
    std::string term = line.substr(0, tab);
    if (std::any_of(term.begin(), term.end(), IsAsciiSpace)) {
      return internal::MalformedAt(line_number, "terms are single tokens");
    }
    terms.emplace_back(std::move(term), weight);
  }
  return LexiconScorer(terms, table);
}

std::string LexiconScorer::NormalizeToken(std::string_view token) const {
  return CollapseRepeats(LeetFold(SplitEdgePunctuation(token).core, *table_));
}

absl::StatusOr<ScoreResult> LexiconScorer::Score(std::string_view text) const {
  // Distinct matches, multiplied in term order so the value does not depend
  // on token order.
  std::set<std::pair<std::string_view, double>> matched;
  for (const std::string& token : SplitWords(text)) {
    auto it = weights_.find(NormalizeToken(token));
    if (it != weights_.end()) matched.emplace(it->first, it->second);
  }
  double keep = 1.0;
  for (const auto& [term, weight] : matched) keep *= 1.0 - weight;
  return ScoreResult{std::string(text), std::clamp(1.0 - keep, 0.0, 1.0)};
}

absl::Status ScorerConfig::Validate() const {
  if (timeout_ms <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "timeout_ms must be positive");
  }
  if (max_in_flight <= 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "max_in_flight must be positive");
  }
  const bool lexicon = kind == Kind::kLexicon;
  if (lexicon && (lexicon_path.empty() || !endpoint.empty())) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "lexicon scorer needs a lexicon path and no endpoint");
  }
  if (!lexicon && (endpoint.empty() || !lexicon_path.empty())) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "remote scorer needs an endpoint and no lexicon path");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<Scorer>> MakeScorer(
    const ScorerConfig& config) {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  if (config.kind == ScorerConfig::Kind::kLexicon) {
    absl::StatusOr<LexiconScorer> scorer =
        LexiconScorer::Load(config.lexicon_path);
    if (!scorer.ok()) return scorer.status();
    return std::make_unique<LexiconScorer>(*std::move(scorer));
  }
  absl::StatusOr<std::unique_ptr<RemoteScorer>> remote = RemoteScorer::Create(
      config.endpoint, config.timeout_ms, config.max_in_flight);
  if (!remote.ok()) return remote.status();
  return std::unique_ptr<Scorer>(*std::move(remote));
}

}  // namespace perturbkit
