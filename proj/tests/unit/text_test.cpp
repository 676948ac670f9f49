// Copyright 2026 The R3 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "r3/text.hpp"

namespace r3 {
namespace {

TEST(TextTest, NormalizeFoldsCaseAndWhitespace) {
  EXPECT_EQ(normalize("  Silvio\t\tBERLUSCONI \n"), "silvio berlusconi");
  EXPECT_EQ(normalize(""), "");
  EXPECT_EQ(normalize(" \t "), "");
}

TEST(TextTest, NormalizeComposesToNfc) {
  // "e" followed by a combining acute accent composes to U+00E9.
  EXPECT_EQ(normalize("Cafe\xCC\x81"), "caf\xC3\xA9");
  EXPECT_EQ(normalize("CAF\xC3\x89"), "caf\xC3\xA9");
}

TEST(TextTest, NormalizeIsIdempotent) {
  for (std::string s : {"Carla Bruni", "  Marie   Curie ", "\xC3\x89MILE Zola", "a_b"}) {
    EXPECT_EQ(normalize(normalize(s)), normalize(s)) << s;
  }
}

TEST(TextTest, NormalizeNameReadsUnderscoresAsSpaces) {
  EXPECT_EQ(normalize_name("Virginia_Raggi"), "virginia raggi");
  EXPECT_EQ(normalize_name("place_of__birth"), "place of birth");
  EXPECT_EQ(normalize("place_of_birth"), "place_of_birth");
}

TEST(TextTest, TrimAndSplit) {
  EXPECT_EQ(trim("\r\n x y \t"), "x y");
  EXPECT_EQ(split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(split("", ','), (std::vector<std::string>{""}));
}

TEST(TextTest, WordTokensKeepUtf8LettersTogether) {
  const std::string text = normalize("Émile-Zola's 2 books");
  auto tokens = word_tokens(text);
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[0], "\xC3\xA9mile");
  EXPECT_EQ(tokens[1], "zola");
  EXPECT_EQ(tokens[2], "s");
  EXPECT_EQ(tokens[3], "2");
  EXPECT_EQ(tokens[4], "books");
  EXPECT_TRUE(word_tokens("  ,;  ").empty());
}

}  // namespace
}  // namespace r3
