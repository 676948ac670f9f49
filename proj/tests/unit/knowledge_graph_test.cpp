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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "r3/errors.hpp"
#include "r3/knowledge_graph.hpp"

namespace r3 {
namespace {

KnowledgeGraph small_kg() {
  return KnowledgeGraph::build({{"Q1", "spouse", "Q2"},
                                {"Q1", "age", "45"},
                                {"Q2", "occupation", "singer"},
                                {"Q3", "capital", "Q1"}},
                               {{"Q1", "Silvio Berlusconi"}, {"Q1", "Berlusconi"}, {"Q2", "Carla Bruni"},
                                {"Q4", "Carla Bruni"}});
}

TEST(KnowledgeGraphTest, TailsAreTypedOnce) {
  const auto kg = small_kg();
  EXPECT_EQ(kg.triple(0).tail.kind, TailValue::Kind::Entity);
  EXPECT_EQ(kg.triple(1).tail.kind, TailValue::Kind::Number);
  EXPECT_EQ(kg.triple(1).tail.number->to_string(), "45");
  EXPECT_EQ(kg.triple(2).tail.kind, TailValue::Kind::Text);
  EXPECT_EQ(kg.tail_display(kg.triple(0)), "Carla Bruni");
}

TEST(KnowledgeGraphTest, FirstLabelIsPrimaryAndLaterOnesAreAliases) {
  const auto kg = small_kg();
  EXPECT_EQ(kg.label_of("Q1"), "Silvio Berlusconi");
  EXPECT_EQ(kg.resolve_label("berlusconi"), std::vector<EntityId>{"Q1"});
  EXPECT_EQ(kg.resolve_label("  SILVIO   berlusconi "), std::vector<EntityId>{"Q1"});
  // Shared label: both ids in registration order.
  EXPECT_EQ(kg.resolve_label("Carla Bruni"), (std::vector<EntityId>{"Q2", "Q4"}));
  // Unlabelled head labels itself.
  EXPECT_EQ(kg.label_of("Q3"), "Q3");
  EXPECT_TRUE(kg.has_entity("Q3"));
  EXPECT_FALSE(kg.has_entity("singer"));
  EXPECT_TRUE(kg.resolve_label("nobody").empty());
}

TEST(KnowledgeGraphTest, OneHopIsHeadMatchOnly) {
  const auto kg = small_kg();
  auto sg = one_hop_subgraph(kg, {"Q2", "Q1", "Q1"});
  EXPECT_EQ(sg.anchor_set, (std::vector<EntityId>{"Q1", "Q2"}));
  EXPECT_EQ(sg.triple_ids, (std::vector<TripleId>{0, 1, 2}));
  EXPECT_TRUE(one_hop_subgraph(kg, {}).triple_ids.empty());
  EXPECT_TRUE(one_hop_subgraph(kg, {"Q9"}).triple_ids.empty());
}

TEST(KnowledgeGraphTest, OneHopMatchesBruteForceOnRandomGraphs) {
  std::mt19937 rng(7);
  for (unsigned seed = 1; seed <= 300; ++seed) {
    auto random = testing::random_kg(seed, 60, 12);
    const auto kg = KnowledgeGraph::build(random.triples, random.labels);
    std::vector<EntityId> anchors;
    std::uniform_int_distribution<int> count(0, 5), entity(0, 13);
    for (int i = count(rng); i > 0; --i) anchors.push_back("E" + std::to_string(entity(rng)));

    std::vector<TripleId> expected;
    for (std::size_t i = 0; i < random.triples.size(); ++i) {
      if (std::find(anchors.begin(), anchors.end(), random.triples[i].head) != anchors.end()) expected.push_back(i);
    }
    const auto sg = one_hop_subgraph(kg, anchors);
    ASSERT_EQ(sg.triple_ids, expected) << "seed " << seed;
    ASSERT_TRUE(std::is_sorted(sg.anchor_set.begin(), sg.anchor_set.end()));
    ASSERT_EQ(std::set<EntityId>(anchors.begin(), anchors.end()).size(), sg.anchor_set.size());
  }
}

TEST(KnowledgeGraphTest, MergeAppendsIdsAfterBase) {
  const auto kg = small_kg();
  const auto merged = kg.merged_with({{"Sam", "allergy", "allium allergy"}}, {{"Sam", "Sam"}});
  ASSERT_EQ(merged.size(), kg.size() + 1);
  for (TripleId id = 0; id < kg.size(); ++id) EXPECT_EQ(merged.raw_triples()[id], kg.raw_triples()[id]);
  EXPECT_EQ(merged.triple(kg.size()).head, "Sam");
  EXPECT_EQ(merged.resolve_label("sam"), std::vector<EntityId>{"Sam"});
  EXPECT_EQ(kg.size(), 4u);
}

TEST(KnowledgeGraphTest, TsvRoundTrip) {
  const auto kg = small_kg();
  std::stringstream triples, labels;
  kg.write_triples_tsv(triples);
  kg.write_labels_tsv(labels);
  const auto back = KnowledgeGraph::build(parse_triples_tsv(triples), parse_labels_tsv(labels));
  EXPECT_EQ(back.raw_triples(), kg.raw_triples());
  EXPECT_EQ(back.resolve_label("carla bruni"), kg.resolve_label("carla bruni"));
}

TEST(KnowledgeGraphTest, MalformedTsvNamesTheLine) {
  std::istringstream in("Q1\tage\t45\n\nQ2\tbroken\n");
  try {
    parse_triples_tsv(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  std::istringstream empty_head("\tage\t45\n");
  EXPECT_THROW(parse_triples_tsv(empty_head), ParseError);
  std::istringstream labels("Q1\tone\nQ2\n");
  EXPECT_THROW(parse_labels_tsv(labels), ParseError);
}

TEST(KnowledgeGraphTest, FixtureGraphLoads) {
  const auto& kg = testing::base_kg();
  EXPECT_GT(kg.size(), 50u);
  EXPECT_FALSE(kg.resolve_label("Silvio Berlusconi").empty());
  EXPECT_THROW(load_kg("/nonexistent/triples.tsv"), Error);
}

}  // namespace
}  // namespace r3
