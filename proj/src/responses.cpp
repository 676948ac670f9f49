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

#include "r3/responses.hpp"

#include <charconv>

#include "r3/text.hpp"

namespace r3 {

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// Value after "KEY:" on the first line that starts with it (leading
// whitespace on the line is tolerated).
std::optional<std::string_view> keyed_value(std::string_view response, std::string_view key) {
  for (auto line : lines_of(response)) {
    auto stripped = trim(line);
    if (stripped.size() >= key.size() + 1 && stripped.substr(0, key.size()) == key &&
        stripped[key.size()] == ':') {
      return trim(stripped.substr(key.size() + 1));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<long long>> parse_index_list(std::string_view text) {
  std::vector<long long> out;
  text = trim(text);
  if (text.empty()) return out;
  for (const auto& part : split(text, ',')) {
    auto token = trim(part);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    out.push_back(value);
  }
  return out;
}

std::optional<std::vector<std::string>> parse_entities_response(std::string_view response) {
  auto value = keyed_value(response, "ENTITIES");
  if (!value) return std::nullopt;
  std::vector<std::string> names;
  for (const auto& part : split(*value, ';')) {
    auto name = trim(part);
    if (!name.empty()) names.emplace_back(name);
  }
  return names;
}

std::optional<AxiomResponse> parse_axiom_response(std::string_view response) {
  AxiomResponse out;
  std::string natural;
  for (auto line : lines_of(response)) {
    auto stripped = trim(line);
    if (stripped.substr(0, 6) == "AXIOM:") {
      out.axiom_text = std::string(trim(stripped.substr(6)));
      if (out.axiom_text.empty()) return std::nullopt;
      out.natural_text = std::string(trim(natural));
      return out;
    }
    if (!stripped.empty()) {
      if (!natural.empty()) natural += ' ';
      natural += stripped;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<long long>> parse_select_response(std::string_view response) {
  auto value = keyed_value(response, "SELECT");
  if (!value) return std::nullopt;
  return parse_index_list(*value);
}

std::optional<JudgeResponse> parse_judge_response(std::string_view response) {
  auto status = keyed_value(response, "STATUS");
  if (!status) return std::nullopt;
  JudgeResponse out;
  if (*status == "SATISFIED") {
    out.verdict = JudgeVerdict::Satisfied;
  } else if (*status == "VIOLATED") {
    out.verdict = JudgeVerdict::Violated;
  } else if (*status == "UNKNOWN") {
    out.verdict = JudgeVerdict::Unknown;
  } else {
    return std::nullopt;
  }
  if (auto evidence = keyed_value(response, "EVIDENCE")) {
    auto ids = parse_index_list(*evidence);
    if (!ids) return std::nullopt;
    out.evidence = std::move(*ids);
    out.evidence_line_present = true;
  }
  return out;
}

std::optional<MeiResponse> parse_mei_response(std::string_view response) {
  auto missing = keyed_value(response, "MISSING");
  auto entity = keyed_value(response, "ENTITY");
  if (!missing || !entity || entity->empty()) return std::nullopt;
  return MeiResponse{std::string(*missing), std::string(*entity)};
}

}  // namespace r3
