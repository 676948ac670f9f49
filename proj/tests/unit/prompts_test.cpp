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

#include <fstream>

#include "r3/errors.hpp"
#include "r3/prompts.hpp"

namespace r3 {
namespace {

TEST(PromptsTest, EveryRoleHasABuiltInTemplate) {
  for (LlmRole role : kAllRoles) {
    EXPECT_FALSE(PromptLibrary::defaults().template_for(role).empty()) << to_string(role);
    EXPECT_EQ(role_from_string(to_string(role)), role);
  }
  EXPECT_FALSE(role_from_string("oracle"));
}

TEST(PromptsTest, JudgePromptListsFactsOneBased) {
  PromptContext ctx;
  ctx.premise = "age(Q1) <= 17";
  ctx.triples = std::vector<std::string>{"Virginia Raggi occupation politician", "Virginia Raggi age 45"};
  const auto prompt = render_prompt(LlmRole::Judge, ctx);
  EXPECT_NE(prompt.find("Premise: age(Q1) <= 17"), std::string::npos);
  EXPECT_NE(prompt.find("1. Virginia Raggi occupation politician\n2. Virginia Raggi age 45\n"), std::string::npos);
  EXPECT_EQ(prompt.find("{{"), std::string::npos);
  EXPECT_EQ(prompt.find("Rule being checked"), std::string::npos);
}

TEST(PromptsTest, MissingRequiredFieldIsAContractError) {
  PromptContext ctx;
  ctx.premise = "p(Q1)";
  EXPECT_THROW(render_prompt(LlmRole::Judge, ctx), ContractError);
  EXPECT_THROW(render_prompt(LlmRole::EntityExtract, PromptContext{}), ContractError);
}

TEST(PromptsTest, RenderingIsDeterministic) {
  PromptContext ctx;
  ctx.query = "Is Raggi a minor?";
  ctx.options = std::vector<std::string>{"a", "b"};
  EXPECT_EQ(render_prompt(LlmRole::Axiom, ctx), render_prompt(LlmRole::Axiom, ctx));
}

TEST(PromptsTest, NumberedListKeepsInputOrder) {
  EXPECT_EQ(numbered_list({"b", "a"}), "1. b\n2. a\n");
  EXPECT_EQ(numbered_list({}), "");
}

TEST(PromptsTest, DirectoryOverridesReplaceSingleRoles) {
  const auto dir = std::filesystem::temp_directory_path() / "r3_prompts_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "entity_extract.txt");
    out << "Names in: {{query}}";
  }
  auto lib = PromptLibrary::with_overrides(dir);
  PromptContext ctx;
  ctx.query = "Rome";
  EXPECT_EQ(lib.render(LlmRole::EntityExtract, ctx), "Names in: Rome");
  EXPECT_EQ(lib.template_for(LlmRole::Judge), PromptLibrary::defaults().template_for(LlmRole::Judge));
  {
    std::ofstream out(dir / "entity_extract.txt");
    out << "{{nonsense}}";
  }
  EXPECT_THROW(PromptLibrary::with_overrides(dir).render(LlmRole::EntityExtract, ctx), ContractError);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(PromptLibrary::with_overrides(dir), Error);
}

}  // namespace
}  // namespace r3
