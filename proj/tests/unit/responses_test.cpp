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

#include "r3/responses.hpp"

namespace r3 {
namespace {

TEST(ResponsesTest, EntitiesLineSplitsOnSemicolons) {
  auto names = parse_entities_response("Sure.\n  ENTITIES: Carla Bruni ; Milan;;\nENTITIES: ignored");
  ASSERT_TRUE(names);
  EXPECT_EQ(*names, (std::vector<std::string>{"Carla Bruni", "Milan"}));
  EXPECT_EQ(parse_entities_response("ENTITIES:"), std::vector<std::string>{});
  EXPECT_FALSE(parse_entities_response("entities: x"));
  EXPECT_FALSE(parse_entities_response("ENTITIES x"));
}

TEST(ResponsesTest, AxiomKeepsPrecedingTextAsNaturalLanguage) {
  auto r = parse_axiom_response("A minor is under 18.\r\nSo:\nAXIOM: age(Q1) < 18\nAXIOM: other(Q1)");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->natural_text, "A minor is under 18. So:");
  EXPECT_EQ(r->axiom_text, "age(Q1) < 18");
  EXPECT_FALSE(parse_axiom_response("AXIOM:   \n"));
  EXPECT_FALSE(parse_axiom_response("no rule here"));
}

TEST(ResponsesTest, IndexLists) {
  EXPECT_EQ(parse_index_list(" 3, 1 ,2"), (std::vector<long long>{3, 1, 2}));
  EXPECT_EQ(parse_index_list("  "), std::vector<long long>{});
  EXPECT_EQ(parse_index_list("-4"), std::vector<long long>{-4});
  EXPECT_FALSE(parse_index_list("1,,2"));
  EXPECT_FALSE(parse_index_list("1, two"));
  EXPECT_FALSE(parse_index_list("1.5"));
  EXPECT_EQ(parse_select_response("SELECT: 4,2"), (std::vector<long long>{4, 2}));
  EXPECT_FALSE(parse_select_response("SELECT: a"));
}

TEST(ResponsesTest, JudgeStatusAndEvidence) {
  auto r = parse_judge_response("STATUS: VIOLATED\nEVIDENCE: 2, 5");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->verdict, JudgeVerdict::Violated);
  EXPECT_EQ(r->evidence, (std::vector<long long>{2, 5}));
  EXPECT_TRUE(r->evidence_line_present);

  auto bare = parse_judge_response("STATUS: UNKNOWN");
  ASSERT_TRUE(bare);
  EXPECT_FALSE(bare->evidence_line_present);
  EXPECT_TRUE(bare->evidence.empty());

  EXPECT_FALSE(parse_judge_response("STATUS: MAYBE\nEVIDENCE: 1"));
  EXPECT_FALSE(parse_judge_response("STATUS: SATISFIED\nEVIDENCE: first"));
  EXPECT_FALSE(parse_judge_response("status: satisfied"));
}

TEST(ResponsesTest, MeiNeedsBothLinesAndANonEmptyEntity) {
  auto r = parse_mei_response("MISSING: where Carla was born\nENTITY: Carla_Dall'Oglio");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->missing, "where Carla was born");
  EXPECT_EQ(r->entity, "Carla_Dall'Oglio");
  EXPECT_FALSE(parse_mei_response("MISSING: x"));
  EXPECT_FALSE(parse_mei_response("MISSING: x\nENTITY:  "));
}

}  // namespace
}  // namespace r3
