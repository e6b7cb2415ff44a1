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

#include "perturbkit/perturber.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "jsonl.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"
#include "perturbkit/typing.h"

namespace perturbkit {
namespace {

using internal::Json;

bool Usable(std::string_view perturbation) {
  return !perturbation.empty() &&
         std::none_of(perturbation.begin(), perturbation.end(), IsAsciiSpace);
}

}  // namespace

absl::Status PerturbConfig::Validate() const {
  if (k < 1) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "k must be >= 1");
  }
  if (!(theta >= 0.0)) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "theta must be >= 0");
  }
  if (seeds.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "bad-config",
                     "seeds must be non-empty");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> WordImportance(
    std::span<const std::string> words, const Scorer& scorer) {
  if (words.empty()) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-sentence");
  }
  std::vector<std::string> texts;
  texts.reserve(words.size() + 1);
  texts.push_back(JoinWords(words));
  std::vector<std::string> masked;
  for (size_t i = 0; i < words.size(); ++i) {
    masked.assign(words.begin(), words.end());
    masked.erase(masked.begin() + static_cast<std::ptrdiff_t>(i));
    texts.push_back(JoinWords(masked));
  }
  std::vector<absl::StatusOr<ScoreResult>> scores = scorer.BatchScore(texts);
  for (const auto& s : scores) {
    if (!s.ok()) return s.status();
  }
  std::vector<double> importance(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    importance[i] = std::abs(scores[0]->score - scores[i + 1]->score);
  }
  return importance;
}

absl::StatusOr<double> TypeDistributionEntropy(const TypeCounts& counts) {
  int64_t total = 0;
  for (const auto& [type, n] : counts) {
    if (n < 0) {
      return MakeError(absl::StatusCode::kInvalidArgument, "negative-count");
    }
    total += n;
  }
  if (total == 0) {
    return MakeError(absl::StatusCode::kInvalidArgument, "empty-distribution");
  }
  double entropy = 0.0;
  for (const auto& [type, n] : counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / static_cast<double>(total);
    entropy -= p * std::log2(p);
  }
  return entropy;
}

std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k, Rng& rng) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const size_t m = std::min(n, k);
  for (size_t i = 0; i < m; ++i) {
    std::swap(order[i], order[i + UniformIndex(rng, n - i)]);
  }
  order.resize(m);
  return order;
}

std::vector<size_t> WeightedSampleWithoutReplacement(
    std::span<const double> weights, size_t k, Rng& rng) {
  std::vector<std::pair<double, size_t>> keyed;
  keyed.reserve(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) {
    keyed.emplace_back(std::log(UniformOpenUnit(rng)) / weights[i], i);
  }
  const size_t m = std::min(k, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(m),
                    keyed.end(), [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });
  std::vector<size_t> out;
  out.reserve(m);
  for (size_t i = 0; i < m; ++i) out.push_back(keyed[i].second);
  return out;
}

Perturber::Perturber(const Scorer& scorer, const Lexicon& lexicon,
                     const Dictionary& dictionary, const VisualTable& table)
    : scorer_(scorer) {
  for (PerturbationType t : kAllTypes) type_counts_[t] = 0;
  for (const auto& [clean, cluster] : lexicon.clusters()) {
    std::vector<TypedPerturbation> pool;
    for (const std::string& p : cluster.perturbations) {
      if (!Usable(p)) continue;
      absl::StatusOr<PerturbationType> type =
          Classify(clean, p, dictionary, table);
      if (!type.ok()) continue;
      pool.push_back({p, *type});
      ++type_counts_[*type];
    }
    if (!pool.empty()) pools_.emplace(clean, std::move(pool));
  }
}

const std::vector<TypedPerturbation>& Perturber::Pool(
    std::string_view word) const {
  static const std::vector<TypedPerturbation>* const kEmpty =
      new std::vector<TypedPerturbation>();
  auto it = pools_.find(AbslView(word));
  return it == pools_.end() ? *kEmpty : it->second;
}

absl::StatusOr<Perturber::Sentence> Perturber::Analyze(
    const SentenceRecord& record) const {
  Sentence sentence;
  sentence.words = SplitWords(record.text);
  if (sentence.words.empty()) return sentence;
  absl::StatusOr<std::vector<double>> importance =
      WordImportance(sentence.words, scorer_);
  if (!importance.ok()) return importance.status();
  sentence.importance = *std::move(importance);
  return sentence;
}

void Perturber::EmitWord(const SentenceRecord& record,
                         const Sentence& sentence, size_t index, size_t k,
                         uint64_t seed, Sampling sampling,
                         std::vector<PerturbedCandidate>* out) const {
  const std::string& token = sentence.words[index];
  const WordParts parts = SplitEdgePunctuation(token);
  if (parts.core.empty()) return;
  const std::vector<TypedPerturbation>& pool = Pool(AsciiLower(parts.core));
  if (pool.empty()) return;

  Rng rng(DeriveSeed(seed, record.id, index));
  std::vector<size_t> picks;
  if (sampling == Sampling::kUniform) {
    picks = SampleWithoutReplacement(pool.size(), k, rng);
  } else {
    std::vector<double> weights;
    weights.reserve(pool.size());
    for (const TypedPerturbation& p : pool) {
      weights.push_back(1.0 /
                        (1.0 + static_cast<double>(type_counts_.at(p.type))));
    }
    picks = WeightedSampleWithoutReplacement(weights, k, rng);
  }

  const std::string clean_text = JoinWords(sentence.words);
  std::vector<std::string> words = sentence.words;
  for (size_t pick : picks) {
    const TypedPerturbation& p = pool[pick];
    words[index] = absl::StrCat(AbslView(parts.lead), p.text,
                                 AbslView(parts.trail));
    PerturbedCandidate candidate;
    candidate.record_id = record.id;
    candidate.clean_text = clean_text;
    candidate.perturbed_text = JoinWords(words);
    candidate.target_index = static_cast<int>(index);
    candidate.clean_word = std::string(parts.core);
    candidate.perturbed_word = p.text;
    candidate.type = p.type;
    candidate.importance = sentence.importance[index];
    out->push_back(std::move(candidate));
  }
}

std::vector<PerturbedCandidate> Perturber::Generate(
    const SentenceRecord& record, const Sentence& sentence,
    const PerturbConfig& config, uint64_t seed, Sampling sampling) const {
  std::vector<PerturbedCandidate> out;
  const size_t k = static_cast<size_t>(config.k);
  if (sentence.words.empty()) return out;
  if (config.mode == PerturbMode::kAllImportant) {
    for (size_t i = 0; i < sentence.words.size(); ++i) {
      if (sentence.importance[i] > config.theta) {
        EmitWord(record, sentence, i, k, seed, sampling, &out);
      }
    }
    return out;
  }
  const auto best = std::max_element(sentence.importance.begin(),
                                     sentence.importance.end());
  if (*best > config.theta) {
    EmitWord(record, sentence,
             static_cast<size_t>(best - sentence.importance.begin()), k, seed,
             sampling, &out);
  }
  return out;
}

absl::StatusOr<std::vector<PerturbedCandidate>> Perturber::PerturbAll(
    const SentenceRecord& record, const PerturbConfig& config,
    uint64_t seed) const {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  absl::StatusOr<Sentence> sentence = Analyze(record);
  if (!sentence.ok()) return sentence.status();
  PerturbConfig all = config;
  all.mode = PerturbMode::kAllImportant;
  return Generate(record, *sentence, all, seed, Sampling::kUniform);
}

absl::StatusOr<std::vector<PerturbedCandidate>> Perturber::PerturbTop1(
    const SentenceRecord& record, const PerturbConfig& config,
    uint64_t seed) const {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  absl::StatusOr<Sentence> sentence = Analyze(record);
  if (!sentence.ok()) return sentence.status();
  PerturbConfig top1 = config;
  top1.mode = PerturbMode::kTop1;
  return Generate(record, *sentence, top1, seed, Sampling::kUniform);
}

absl::StatusOr<BalancedResult> Perturber::GenerateBalanced(
    std::span<const SentenceRecord> records,
    const PerturbConfig& config) const {
  if (absl::Status status = config.Validate(); !status.ok()) return status;
  // Importance does not depend on the seed; score each sentence once.
  std::vector<Sentence> sentences;
  sentences.reserve(records.size());
  for (const SentenceRecord& record : records) {
    absl::StatusOr<Sentence> sentence = Analyze(record);
    if (!sentence.ok()) return sentence.status();
    sentences.push_back(*std::move(sentence));
  }

  BalancedResult result;
  bool have_best = false;
  for (uint64_t seed : config.seeds) {
    std::vector<PerturbedCandidate> candidates;
    for (size_t r = 0; r < records.size(); ++r) {
      std::vector<PerturbedCandidate> part =
          Generate(records[r], sentences[r], config, seed,
                   Sampling::kInverseTypeFrequency);
      std::move(part.begin(), part.end(), std::back_inserter(candidates));
    }
    BalancedRun run;
    run.seed = seed;
    run.candidates = candidates.size();
    for (const PerturbedCandidate& c : candidates) ++run.counts[c.type];
    if (!candidates.empty()) {
      run.entropy = *TypeDistributionEntropy(run.counts);
      const bool better =
          !have_best || run.entropy > result.entropy ||
          (run.entropy == result.entropy && seed < result.chosen_seed);
      if (better) {
        have_best = true;
        result.chosen_seed = seed;
        result.entropy = run.entropy;
        result.candidates = std::move(candidates);
      }
    }
    result.runs.push_back(std::move(run));
  }
  if (!have_best) {
    return MakeError(absl::StatusCode::kFailedPrecondition, "no-candidates");
  }
  result.degenerate = result.entropy == 0.0;
  return result;
}

absl::Status WriteCandidates(const std::string& path,
                             std::span<const PerturbedCandidate> candidates) {
  std::string out;
  for (const PerturbedCandidate& c : candidates) {
    nlohmann::ordered_json j;
    j["record_id"] = c.record_id;
    j["clean_text"] = c.clean_text;
    j["perturbed_text"] = c.perturbed_text;
    j["target_index"] = c.target_index;
    j["clean_word"] = c.clean_word;
    j["perturbed_word"] = c.perturbed_word;
    j["type"] = std::string(TypeName(c.type));
    j["importance"] = c.importance;
    out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
    out.push_back('\n');
  }
  return internal::WriteFile(path, out);
}

absl::StatusOr<std::vector<PerturbedCandidate>> LoadCandidates(
    const std::string& path) {
  std::vector<PerturbedCandidate> out;
  absl::Status status =
      internal::ForEachJsonLine(path, [&](const Json& j, int line) {
        if (!j.is_object()) return internal::MalformedAt(line, "not an object");
        PerturbedCandidate c;
        for (auto [field, target] :
             {std::pair{"record_id", &c.record_id},
              std::pair{"clean_text", &c.clean_text},
              std::pair{"perturbed_text", &c.perturbed_text},
              std::pair{"clean_word", &c.clean_word},
              std::pair{"perturbed_word", &c.perturbed_word}}) {
          auto it = j.find(field);
          if (it == j.end() || !it->is_string()) {
            return internal::MalformedAt(
                line, absl::StrCat(field, " must be a string"));
          }
          *target = it->get<std::string>();
        }
        auto index = j.find("target_index");
        if (index == j.end() || !index->is_number_integer() ||
            index->get<int64_t>() < 0) {
          return internal::MalformedAt(line, "target_index must be >= 0");
        }
        c.target_index = index->get<int>();
        auto type = j.find("type");
        std::optional<PerturbationType> parsed =
            type != j.end() && type->is_string()
                ? ParseType(type->get<std::string>())
                : std::nullopt;
        if (!parsed) return internal::MalformedAt(line, "unknown type");
        c.type = *parsed;
        auto importance = j.find("importance");
        if (importance != j.end()) {
          if (!importance->is_number()) {
            return internal::MalformedAt(line, "importance must be a number");
          }
          c.importance = importance->get<double>();
        }
        out.push_back(std::move(c));
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return out;
}

}  // namespace perturbkit
