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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "r3/llm_backend.hpp"

namespace r3 {

inline constexpr const char* kPromptTemplateVersion = "v1";

// Fields a template may reference. Each role requires a fixed subset; a
// missing required field is a ContractError.
struct PromptContext {
  std::optional<std::string> query;
  std::optional<std::string> option;
  std::optional<std::vector<std::string>> options;
  std::optional<std::string> axiom;
  std::optional<std::string> premise;
  std::optional<std::vector<std::string>> triples;  // verbalized, in triple-id order
  std::optional<std::vector<std::string>> prior_axioms;
  std::optional<std::vector<std::string>> unsatisfied_premises;
};

// Role -> template text. Defaults are compiled in from resources/prompts;
// a directory of <role>.txt files may override any of them.
class PromptLibrary {
 public:
  static const PromptLibrary& defaults();
  static PromptLibrary with_overrides(const std::filesystem::path& dir);

  const std::string& template_for(LlmRole role) const;
  std::string render(LlmRole role, const PromptContext& context) const;

 private:
  std::map<LlmRole, std::string> templates_;
};

inline std::string render_prompt(LlmRole role, const PromptContext& context) {
  return PromptLibrary::defaults().render(role, context);
}

// "1. first\n2. second\n": 1-based, input order preserved.
std::string numbered_list(const std::vector<std::string>& items);

}  // namespace r3
