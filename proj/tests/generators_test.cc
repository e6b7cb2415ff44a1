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

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "perturbkit/random.h"
#include "perturbkit/text.h"
#include "perturbkit/typing.h"

namespace perturbkit {
namespace {

class GeneratorsTest : public ::testing::Test {
 protected:
  std::string Generate(PerturbationType type, std::string_view word,
                       uint64_t seed) {
    Rng rng(seed);
    std::optional<std::string> out = GenerateVariant(type, word, dict_, rng);
    EXPECT_TRUE(out.has_value()) << TypeName(type) << " " << word;
    return out.value_or("");
  }

  Dictionary dict_{"stupid", "republicans", "lie", "pub", "can", "cans",
                   "up", "is", "it"};
};

TEST_F(GeneratorsTest, RepeatCharAddsRunsOnly) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::string v = Generate(PerturbationType::kRepeatChar, "stupid", seed);
    EXPECT_GT(v.size(), 6u);
    EXPECT_LE(v.size(), 9u);
    EXPECT_EQ(CollapseRepeats(v), "stupid") << v;
  }
}

TEST_F(GeneratorsTest, AbbrDeletesOneOrTwoLetters) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::string v = Generate(PerturbationType::kAbbr, "stupid", seed);
    EXPECT_GE(v.size(), 4u);
    EXPECT_LE(v.size(), 5u);
  }
  Rng rng(1);
  EXPECT_FALSE(
      GenerateVariant(PerturbationType::kAbbr, "is", dict_, rng).has_value());
}

TEST_F(GeneratorsTest, SpecialCharFoldsBack) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::string v = Generate(PerturbationType::kSpecialChar, "stupid", seed);
    EXPECT_TRUE(HasNonLetter(v)) << v;
    EXPECT_FALSE(IsSentencePunctuation(v.front())) << v;
    EXPECT_FALSE(IsSentencePunctuation(v.back())) << v;
    EXPECT_EQ(*Classify("stupid", v, dict_), PerturbationType::kSpecialChar)
        << v;
  }
}

TEST_F(GeneratorsTest, MixedCaseAvoidsHiddenWords) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::string v = Generate(PerturbationType::kMixedCase, "stupid", seed);
    EXPECT_EQ(AsciiLower(v), "stupid");
    EXPECT_NE(v, "stupid");
    EXPECT_EQ(*Classify("stupid", v, dict_), PerturbationType::kMixedCase)
        << v;
  }
}

TEST_F(GeneratorsTest, MixedCasePlusUppercasesADictionaryWord) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    std::string v =
        Generate(PerturbationType::kMixedCasePlus, "republicans", seed);
    EXPECT_EQ(AsciiLower(v), "republicans");
    EXPECT_EQ(*Classify("republicans", v, dict_),
              PerturbationType::kMixedCasePlus)
        << v;
  }
  Rng rng(1);
  EXPECT_FALSE(GenerateVariant(PerturbationType::kMixedCasePlus, "xyz", dict_,
                               rng)
                   .has_value());
}

TEST_F(GeneratorsTest, MixedIsNeverGenerated) {
  Rng rng(1);
  EXPECT_FALSE(GenerateVariant(PerturbationType::kMixed, "stupid", dict_, rng)
                   .has_value());
}

TEST_F(GeneratorsTest, SameSeedSameVariant) {
  for (PerturbationType type : kBaseTypes) {
    EXPECT_EQ(Generate(type, "republicans", 9), Generate(type, "republicans", 9));
  }
}

}  // namespace
}  // namespace perturbkit
