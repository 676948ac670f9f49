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

#include <random>

#include "r3/audit.hpp"
#include "r3/axiom.hpp"
#include "r3/errors.hpp"
#include "r3/prompts.hpp"
#include "r3/scripted_backend.hpp"

namespace r3 {
namespace {

TEST(AxiomTest, ParsesDisjunctionOfConjunctions) {
  auto axiom = parse_axiom("spouse(Q11860) AND place_of_birth(Q3660) = Q490 OR age(Virginia_Raggi) <= 17");
  ASSERT_EQ(axiom.clauses.size(), 2u);
  ASSERT_EQ(axiom.clauses[0].size(), 2u);
  EXPECT_EQ(axiom.premise_count(), 3u);

  const auto& pred = axiom.clauses[0][0];
  EXPECT_EQ(pred.kind, Premise::Kind::Predicate);
  EXPECT_EQ(pred.name, "spouse");
  EXPECT_EQ(pred.subject, "Q11860");
  EXPECT_FALSE(pred.op);

  const auto& eq = axiom.clauses[0][1];
  EXPECT_EQ(eq.kind, Premise::Kind::Function);
  EXPECT_EQ(*eq.op, CompareOp::Eq);
  EXPECT_EQ(eq.comparand->kind, Literal::Kind::EntityRef);
  EXPECT_EQ(eq.comparand->text, "Q490");

  const auto& le = axiom.clauses[1][0];
  EXPECT_EQ(*le.op, CompareOp::Le);
  EXPECT_EQ(le.comparand->kind, Literal::Kind::Number);
  EXPECT_EQ(le.comparand->number->to_string(), "17");
}

TEST(AxiomTest, AcceptsUnicodeOperatorsAndFlexibleWhitespace) {
  auto a = parse_axiom("  age( Q1 )≤ 17\tAND height(Q1)≥-1.5 AND x(Q1)≠\"a \\\"b\\\"\"  ");
  ASSERT_EQ(a.clauses.size(), 1u);
  ASSERT_EQ(a.clauses[0].size(), 3u);
  EXPECT_EQ(*a.clauses[0][0].op, CompareOp::Le);
  EXPECT_EQ(*a.clauses[0][1].op, CompareOp::Ge);
  EXPECT_EQ(a.clauses[0][1].comparand->text, "-1.5");
  EXPECT_EQ(*a.clauses[0][2].op, CompareOp::Ne);
  EXPECT_EQ(a.clauses[0][2].comparand->kind, Literal::Kind::String);
  EXPECT_EQ(a.clauses[0][2].comparand->text, "a \"b\"");
}

struct BadAxiom {
  const char* text;
  std::size_t offset;
};

TEST(AxiomTest, SyntaxErrorsCarryTheOffendingOffset) {
  const BadAxiom cases[] = {
      {"", 0},
      {"   ", 3},
      {"spouse Q1", 7},
      {"spouse(Q1", 9},
      {"spouse()", 7},
      {"spouse(Q1) AND", 14},
      {"spouse(Q1) OR OR b(Q2)", 14},
      {"spouse(Q1) XOR b(Q2)", 11},
      {"age(Q1) =< 3", 8},
      {"age(Q1) = AND b(Q1)", 10},
      {"age(Q1) <", 9},
      {"name(Q1) = \"open", 16},
      {"(Q1)", 0},
  };
  for (const auto& c : cases) {
    try {
      parse_axiom(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), c.offset) << c.text << " -> " << e.what();
    }
  }
}

// Random well-formed axioms for the round-trip property.
Axiom random_axiom(std::mt19937& rng) {
  static const char* kNames[] = {"spouse", "age", "place_of_birth", "x1", "Has_Child"};
  static const char* kRefs[] = {"Q1", "Q3660", "Virginia_Raggi", "Carla_Dall'Oglio", "e-9", "Sam"};
  static const char* kNumbers[] = {"17", "-2.50", "0", "1939", "+3"};
  static const char* kStrings[] = {"", "a b", "quote \" inside", "back\\slash", "AND OR"};
  static const CompareOp kOps[] = {CompareOp::Eq, CompareOp::Ne, CompareOp::Lt,
                                   CompareOp::Le, CompareOp::Gt, CompareOp::Ge};
  auto pick = [&](auto& arr) -> const auto& {
    return arr[std::uniform_int_distribution<std::size_t>(0, std::size(arr) - 1)(rng)];
  };
  std::uniform_int_distribution<int> count(1, 3), kind(0, 3);
  Axiom axiom;
  for (int c = count(rng); c > 0; --c) {
    Clause clause;
    for (int p = count(rng); p > 0; --p) {
      Premise premise;
      premise.name = pick(kNames);
      premise.subject = pick(kRefs);
      int k = kind(rng);
      if (k > 0) {
        premise.kind = Premise::Kind::Function;
        premise.op = pick(kOps);
        Literal lit;
        if (k == 1) {
          lit.kind = Literal::Kind::Number;
          lit.text = pick(kNumbers);
          lit.number = Decimal::parse(lit.text);
        } else if (k == 2) {
          lit.kind = Literal::Kind::String;
          lit.text = pick(kStrings);
        } else {
          lit.kind = Literal::Kind::EntityRef;
          lit.text = pick(kRefs);
        }
        premise.comparand = lit;
      }
      clause.push_back(premise);
    }
    axiom.clauses.push_back(clause);
  }
  return axiom;
}

TEST(AxiomTest, SerializeThenParseIsIdentity) {
  std::mt19937 rng(1234);
  for (int i = 0; i < 2000; ++i) {
    const Axiom axiom = random_axiom(rng);
    const std::string text = serialize_axiom(axiom);
    Axiom back;
    ASSERT_NO_THROW(back = parse_axiom(text)) << text;
    ASSERT_TRUE(structurally_equal(axiom, back)) << text;
    ASSERT_EQ(serialize_axiom(back), text);
  }
}

TEST(AxiomTest, SurfacingParsesTheAxiomLine) {
  ScriptedBackend backend(nlohmann::json{{"axiom", {"Minors are under 18.\nAXIOM: age(Q1) < 18"}}});
  AuditLog audit;
  auto axiom = surface_axiom(backend, PromptLibrary::defaults(), "Is Raggi a minor?", std::nullopt, {}, audit);
  ASSERT_TRUE(axiom);
  EXPECT_EQ(axiom->natural_text, "Minors are under 18.");
  EXPECT_EQ(serialize_axiom(*axiom), "age(Q1) < 18");
  EXPECT_TRUE(audit.events().empty());
}

TEST(AxiomTest, SurfacingShowsPriorAxiomsAndOption) {
  ScriptedBackend backend(nlohmann::json{{"axiom", {"AXIOM: b(Q1)"}}});
  AuditLog audit;
  auto prior = parse_axiom("a(Q1) OR c(Q2)");
  surface_axiom(backend, PromptLibrary::defaults(), "q", std::string("Option text"), {prior}, audit);
  const auto prompt = backend.call_log().at(0).prompt;
  EXPECT_NE(prompt.find("a(Q1) OR c(Q2)"), std::string::npos);
  EXPECT_NE(prompt.find("Option text"), std::string::npos);
}

TEST(AxiomTest, SurfacingFailuresAreAudited) {
  ScriptedBackend backend(nlohmann::json{{"axiom", {"I cannot say.", "AXIOM: spouse(Q1) AND"}}});
  AuditLog audit;
  EXPECT_FALSE(surface_axiom(backend, PromptLibrary::defaults(), "q", std::nullopt, {}, audit));
  EXPECT_FALSE(surface_axiom(backend, PromptLibrary::defaults(), "q", std::nullopt, {}, audit));
  EXPECT_EQ(audit.count(AuditKind::SurfacingFailure), 2u);
}

}  // namespace
}  // namespace r3
