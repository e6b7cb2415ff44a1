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

#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "perturbkit/status.h"
#include "perturbkit/text.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::DataPath;
using ::perturbkit::testing::TempPath;
using ::perturbkit::testing::WriteFileOrDie;
using ::testing::DoubleNear;

TEST(LexiconScorerTest, ToxicTermPresent) {
  LexiconScorer scorer({{"idiot", 1.0}});
  EXPECT_GT(scorer.Score("you are an idiot")->score, 0.0);
  EXPECT_EQ(scorer.Score("you are kind")->score, 0.0);
  EXPECT_EQ(scorer.Score("")->score, 0.0);
}

TEST(LexiconScorerTest, CombinationFormula) {
  LexiconScorer scorer({{"idiot", 0.8}, {"stupid", 0.6}});
  // 1 - (1 - 0.8) * (1 - 0.6)
  EXPECT_THAT(scorer.Score("stupid idiot")->score, DoubleNear(0.92, 1e-12));
  EXPECT_THAT(scorer.Score("idiot stupid")->score, DoubleNear(0.92, 1e-12));
  // Distinct terms: repeating a term does not stack.
  EXPECT_THAT(scorer.Score("idiot idiot")->score, DoubleNear(0.8, 1e-12));
}

TEST(LexiconScorerTest, MatchesThroughCaseLeetAndRepeats) {
  LexiconScorer scorer({{"idiot", 0.8}});
  for (const char* text : {"IDIOT", "1d10t", "idiooot!!!", "idiot,"}) {
    EXPECT_THAT(scorer.Score(text)->score, DoubleNear(0.8, 1e-12)) << text;
  }
  // Deletions and placeholders still evade it.
  EXPECT_EQ(scorer.Score("idot")->score, 0.0);
  EXPECT_EQ(scorer.Score("id*ot")->score, 0.0);
}

TEST(LexiconScorerTest, ScoreEchoesText) {
  LexiconScorer scorer({{"idiot", 0.8}});
  EXPECT_EQ(scorer.Score("what an idiot")->text, "what an idiot");
}

TEST(LexiconScorerTest, AddingAToxicTermNeverLowersTheScore) {
  LexiconScorer scorer = *LexiconScorer::Load(DataPath("toxic_terms.tsv"));
  const std::vector<std::string> vocabulary = {
      "you", "are", "idiot", "stupid", "moron", "kind", "trash", "the",
      "hate", "loser", "ugly", "crap", "nice"};
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<size_t> pick(0, vocabulary.size() - 1);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> words;
    for (int n = static_cast<int>(pick(rng)) % 8; n >= 0; --n) {
      words.push_back(vocabulary[pick(rng)]);
    }
    const double before = scorer.Score(JoinWords(words))->score;
    words.insert(words.begin() + static_cast<long>(pick(rng) % words.size()),
                 vocabulary[pick(rng)]);
    const double after = scorer.Score(JoinWords(words))->score;
    EXPECT_GE(after, before);
    EXPECT_GE(after, 0.0);
    EXPECT_LE(after, 1.0);
  }
}

TEST(LexiconScorerTest, BatchScoreKeepsOrder) {
  LexiconScorer scorer({{"idiot", 0.8}, {"stupid", 0.6}});
  std::vector<std::string> texts = {"idiot", "kind", "stupid"};
  auto results = scorer.BatchScore(texts);
  ASSERT_EQ(results.size(), 3u);
  EXPECT_THAT(results[0]->score, DoubleNear(0.8, 1e-12));
  EXPECT_EQ(results[1]->score, 0.0);
  EXPECT_THAT(results[2]->score, DoubleNear(0.6, 1e-12));
  EXPECT_TRUE(scorer.BatchScore({}).empty());
}

TEST(LexiconScorerTest, LoadValidatesLines) {
  const std::string path = TempPath("terms.tsv");
  WriteFileOrDie(path, "# comment\nidiot\t0.8\n\nIDIOT\t0.9\n");
  LexiconScorer scorer = *LexiconScorer::Load(path);
  EXPECT_EQ(scorer.size(), 1u);
  EXPECT_THAT(scorer.Score("idiot")->score, DoubleNear(0.9, 1e-12));

  for (const char* bad : {"idiot\t1.5\n", "idiot 0.5\n", "idiot\tx\n",
                          "two words\t0.5\n"}) {
    WriteFileOrDie(path, bad);
    EXPECT_EQ(ErrorCode(LexiconScorer::Load(path).status()),
              "malformed-record")
        << bad;
  }
  EXPECT_EQ(ErrorCode(LexiconScorer::Load("/nonexistent").status()), "io");
}

TEST(ScorerConfigTest, Validate) {
  ScorerConfig config;
  EXPECT_EQ(ErrorCode(config.Validate()), "bad-config");
  config.lexicon_path = "x.tsv";
  EXPECT_TRUE(config.Validate().ok());
  config.endpoint = "http://localhost:1";
  EXPECT_EQ(ErrorCode(config.Validate()), "bad-config");
  config.kind = ScorerConfig::Kind::kRemote;
  config.lexicon_path.clear();
  EXPECT_TRUE(config.Validate().ok());
  config.timeout_ms = 0;
  EXPECT_EQ(ErrorCode(config.Validate()), "bad-config");
  config.timeout_ms = 10;
  config.max_in_flight = 0;
  EXPECT_EQ(ErrorCode(config.Validate()), "bad-config");
}

TEST(MakeScorerTest, BuildsLexiconScorer) {
  ScorerConfig config;
  config.lexicon_path = DataPath("toxic_terms.tsv");
  absl::StatusOr<std::unique_ptr<Scorer>> scorer = MakeScorer(config);
  ASSERT_TRUE(scorer.ok()) << scorer.status();
  EXPECT_GT((*scorer)->Score("idiot")->score, 0.0);
}

}  // namespace
}  // namespace perturbkit
