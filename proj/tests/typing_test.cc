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

#include "perturbkit/typing.h"

#include <iostream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "perturbkit/generators.h"
#include "perturbkit/random.h"
#include "perturbkit/status.h"
#include "test_util.h"

namespace perturbkit {
namespace {

using ::perturbkit::testing::DataPath;

class ClassifyTest : public ::testing::Test {
 protected:
  PerturbationType Type(std::string_view clean, std::string_view perturbed) {
    absl::StatusOr<PerturbationType> type = Classify(clean, perturbed, dict_);
    EXPECT_TRUE(type.ok()) << clean << " " << perturbed << ": "
                           << type.status();
    return type.value_or(PerturbationType::kMixed);
  }

  Dictionary dict_{"stupid", "republicans", "lie", "democrats", "rat",
                   "rats", "idiot", "don", "t", "coffee", "on"};
};

TEST_F(ClassifyTest, GoldenExamples) {
  EXPECT_EQ(Type("stupid", "stuppppid"), PerturbationType::kRepeatChar);
  EXPECT_EQ(Type("stupid", "stupd"), PerturbationType::kAbbr);
  EXPECT_EQ(Type("stupid", "5tupid"), PerturbationType::kSpecialChar);
  EXPECT_EQ(Type("stupid", "st*pid"), PerturbationType::kSpecialChar);
  EXPECT_EQ(Type("stupid", "sTuPId"), PerturbationType::kMixedCase);
  EXPECT_EQ(Type("republicans", "repubLIEcans"),
            PerturbationType::kMixedCasePlus);
}

TEST_F(ClassifyTest, IdenticalPairIsAnError) {
  EXPECT_EQ(ErrorCode(Classify("stupid", "stupid", dict_).status()),
            "identical-pair");
}

TEST_F(ClassifyTest, EmptyPerturbationIsAnError) {
  EXPECT_FALSE(Classify("stupid", "", dict_).ok());
}

TEST_F(ClassifyTest, UnrelatedWordsAreUnclassifiable) {
  EXPECT_EQ(ErrorCode(Classify("stupid", "moron", dict_).status()),
            "unclassifiable");
  EXPECT_EQ(ErrorCode(Classify("stupid", "stupidity", dict_).status()),
            "unclassifiable");
}

TEST_F(ClassifyTest, MoreRules) {
  EXPECT_EQ(Type("democrats", "democRATs"), PerturbationType::kMixedCasePlus);
  // Upper case letters that spell nothing.
  EXPECT_EQ(Type("stupid", "stuPiD"), PerturbationType::kMixedCase);
  EXPECT_EQ(Type("stupid", "STUPID"), PerturbationType::kMixedCase);
  EXPECT_EQ(Type("stupid", "$tup!d"), PerturbationType::kSpecialChar);
  EXPECT_EQ(Type("stupid", "st__pid"), PerturbationType::kSpecialChar);
  EXPECT_EQ(Type("stupid", "5tuuupid"), PerturbationType::kSpecialChar);
  EXPECT_EQ(Type("coffee", "cofee"), PerturbationType::kAbbr);
  EXPECT_EQ(Type("coffee", "cofffee"), PerturbationType::kRepeatChar);
}

TEST_F(ClassifyTest, CombinationsAreMixed) {
  EXPECT_EQ(Type("stupid", "st*pd"), PerturbationType::kMixed);
  EXPECT_EQ(Type("stupid", "5tupd"), PerturbationType::kMixed);
  EXPECT_EQ(Type("stupid", "5tpdd"), PerturbationType::kMixed);
}

TEST_F(ClassifyTest, ApostropheOfTheCleanWordIsNotASignal) {
  EXPECT_EQ(Type("don't", "donn't"), PerturbationType::kRepeatChar);
  EXPECT_EQ(Type("don't", "DOn't"), PerturbationType::kMixedCase);
  EXPECT_EQ(Type("don't", "dn't"), PerturbationType::kAbbr);
  EXPECT_EQ(Type("don't", "d0n't"), PerturbationType::kSpecialChar);
}

TEST_F(ClassifyTest, NeverMixedCasePlusWithoutADictionaryWord) {
  Dictionary empty_ish{"stupid"};
  for (const char* perturbed : {"STupid", "sTuPId", "stUPId", "STUPID"}) {
    absl::StatusOr<PerturbationType> type =
        Classify("stupid", perturbed, empty_ish);
    ASSERT_TRUE(type.ok());
    EXPECT_NE(*type, PerturbationType::kMixedCasePlus) << perturbed;
  }
  // With "up" in the dictionary, stUPid hides a word.
  Dictionary with_up{"stupid", "up"};
  EXPECT_EQ(*Classify("stupid", "stUPid", with_up),
            PerturbationType::kMixedCasePlus);
}

TEST(CollapseRepeatsTest, Examples) {
  EXPECT_EQ(CollapseRepeats("stuppppid"), "stupid");
  EXPECT_EQ(CollapseRepeats("aab"), "ab");
  EXPECT_EQ(CollapseRepeats(""), "");
  EXPECT_EQ(CollapseRepeats("\xc3\xa9\xc3\xa9x"), "\xc3\xa9x");
}

TEST(ClassifyRoundTripTest, GeneratorsRoundTripOnThousandWords) {
  absl::StatusOr<Dictionary> dict =
      Dictionary::Load(DataPath("words_1000.txt"));
  ASSERT_TRUE(dict.ok());
  ASSERT_EQ(dict->size(), 1000u);
  int total = 0;
  int matched = 0;
  for (const std::string& word : dict->words()) {
    for (PerturbationType type : kBaseTypes) {
      Rng rng(DeriveSeed(1, word, static_cast<uint64_t>(type)));
      std::optional<std::string> variant =
          GenerateVariant(type, word, *dict, rng);
      if (!variant) continue;
      ++total;
      absl::StatusOr<PerturbationType> got = Classify(word, *variant, *dict);
      if (got.ok() && *got == type) {
        ++matched;
      } else {
        // Genuine collisions are allowed within the 1% budget; log them.
        std::cout << "collision: " << word << " -> " << *variant
                      << " generated as " << TypeName(type) << ", got "
                      << (got.ok() ? std::string(TypeName(*got))
                                   : got.status().ToString())
                  << "\n";
      }
    }
  }
  RecordProperty("collisions", total - matched);
  EXPECT_GT(total, 4000);
  EXPECT_GE(matched, total * 99 / 100);
}

}  // namespace
}  // namespace perturbkit
