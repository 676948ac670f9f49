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

#include "r3/prompts.hpp"

#include <fstream>
#include <sstream>

#include "r3/errors.hpp"

namespace r3 {

namespace generated {
extern const std::string_view kEntityExtractTemplate;
extern const std::string_view kAxiomTemplate;
extern const std::string_view kTripleSelectTemplate;
extern const std::string_view kJudgeTemplate;
extern const std::string_view kMeiTemplate;
extern const std::string_view kAnswerTemplate;
}  // namespace generated

namespace {

std::string_view builtin_template(LlmRole role) {
  switch (role) {
    case LlmRole::EntityExtract: return generated::kEntityExtractTemplate;
    case LlmRole::Axiom: return generated::kAxiomTemplate;
    case LlmRole::TripleSelect: return generated::kTripleSelectTemplate;
    case LlmRole::Judge: return generated::kJudgeTemplate;
    case LlmRole::Mei: return generated::kMeiTemplate;
    case LlmRole::Answer: return generated::kAnswerTemplate;
  }
  return {};
}

std::vector<std::string_view> required_fields(LlmRole role) {
  switch (role) {
    case LlmRole::EntityExtract: return {"query"};
    case LlmRole::Axiom: return {"query"};
    case LlmRole::TripleSelect: return {"axiom", "triples"};
    case LlmRole::Judge: return {"premise", "triples"};
    case LlmRole::Mei: return {"query", "axiom", "triples", "unsatisfied"};
    case LlmRole::Answer: return {"query", "triples"};
  }
  return {};
}

std::string bullet_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += "- " + item + "\n";
  return out;
}

[[noreturn]] void missing_field(LlmRole role, std::string_view field) {
  throw ContractError("prompt for role '" + std::string(to_string(role)) + "' needs field '" +
                      std::string(field) + "'");
}

// Value for a {{placeholder}}; *_block names expand to "" when their field
// is absent.
std::string placeholder_value(LlmRole role, std::string_view name, const PromptContext& ctx) {
  auto field = [&](const std::optional<std::string>& v) -> std::string {
    if (!v) missing_field(role, name);
    return *v;
  };
  if (name == "query") return field(ctx.query);
  if (name == "option") return field(ctx.option);
  if (name == "axiom") return field(ctx.axiom);
  if (name == "premise") return field(ctx.premise);
  if (name == "triples") {
    if (!ctx.triples) missing_field(role, name);
    return ctx.triples->empty() ? std::string("(no facts)\n") : numbered_list(*ctx.triples);
  }
  if (name == "unsatisfied") {
    if (!ctx.unsatisfied_premises) missing_field(role, name);
    return bullet_list(*ctx.unsatisfied_premises);
  }
  if (name == "option_block") {
    return ctx.option ? "Option under consideration: " + *ctx.option + "\n" : std::string();
  }
  if (name == "options_block") {
    if (!ctx.options || ctx.options->empty()) return {};
    return "Options:\n" + numbered_list(*ctx.options);
  }
  if (name == "axiom_block") {
    return ctx.axiom ? "Rule being checked: " + *ctx.axiom + "\n" : std::string();
  }
  if (name == "prior_axioms_block") {
    if (!ctx.prior_axioms || ctx.prior_axioms->empty()) return {};
    return "Do not repeat these axioms; state a different one:\n" + bullet_list(*ctx.prior_axioms);
  }
  throw ContractError("unknown prompt placeholder '{{" + std::string(name) + "}}'");
}

bool has_field(std::string_view name, const PromptContext& ctx) {
  if (name == "query") return ctx.query.has_value();
  if (name == "axiom") return ctx.axiom.has_value();
  if (name == "premise") return ctx.premise.has_value();
  if (name == "triples") return ctx.triples.has_value();
  if (name == "unsatisfied") return ctx.unsatisfied_premises.has_value();
  return false;
}

}  // namespace

std::string numbered_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += std::to_string(i + 1) + ". " + items[i] + "\n";
  }
  return out;
}

const PromptLibrary& PromptLibrary::defaults() {
  static const PromptLibrary lib = [] {
    PromptLibrary l;
    for (LlmRole role : kAllRoles) l.templates_[role] = std::string(builtin_template(role));
    return l;
  }();
  return lib;
}

PromptLibrary PromptLibrary::with_overrides(const std::filesystem::path& dir) {
  PromptLibrary lib = defaults();
  if (!std::filesystem::is_directory(dir)) throw Error("prompt override directory not found: " + dir.string());
  for (LlmRole role : kAllRoles) {
    auto file = dir / (std::string(to_string(role)) + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file);
    std::ostringstream buf;
    buf << in.rdbuf();
    lib.templates_[role] = buf.str();
  }
  return lib;
}

const std::string& PromptLibrary::template_for(LlmRole role) const { return templates_.at(role); }

std::string PromptLibrary::render(LlmRole role, const PromptContext& context) const {
  for (auto field : required_fields(role)) {
    if (!has_field(field, context)) missing_field(role, field);
  }
  const std::string& tpl = template_for(role);
  std::string out;
  out.reserve(tpl.size() + 256);
  std::size_t pos = 0;
  while (true) {
    auto open = tpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      break;
    }
    auto close = tpl.find("}}", open + 2);
    if (close == std::string::npos) throw ContractError("unterminated placeholder in prompt template");
    out.append(tpl, pos, open - pos);
    out += placeholder_value(role, std::string_view(tpl).substr(open + 2, close - open - 2), context);
    pos = close + 2;
  }
  return out;
}

}  // namespace r3
