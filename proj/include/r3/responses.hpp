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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace r3 {

// Line-oriented response grammars. Keys are case-sensitive and the first line
// starting with a key wins. nullopt means the response did not match.

// ENTITIES: name; name; ...
std::optional<std::vector<std::string>> parse_entities_response(std::string_view response);

struct AxiomResponse {
  std::string natural_text;  // non-AXIOM lines before the AXIOM line
  std::string axiom_text;    // after "AXIOM: "
};
std::optional<AxiomResponse> parse_axiom_response(std::string_view response);

// SELECT: i,j,...  (1-based, as written; no range validation here)
std::optional<std::vector<long long>> parse_select_response(std::string_view response);

enum class JudgeVerdict { Satisfied, Violated, Unknown };
struct JudgeResponse {
  JudgeVerdict verdict;
  std::vector<long long> evidence;  // 1-based, as written
  bool evidence_line_present = false;
};
std::optional<JudgeResponse> parse_judge_response(std::string_view response);

struct MeiResponse {
  std::string missing;
  std::string entity;
};
std::optional<MeiResponse> parse_mei_response(std::string_view response);

// Comma separated integers; empty (or whitespace) list is valid and empty.
std::optional<std::vector<long long>> parse_index_list(std::string_view text);

}  // namespace r3
