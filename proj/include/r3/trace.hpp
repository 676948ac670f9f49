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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "r3/knowledge_graph.hpp"

namespace r3 {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kTraceSchemaVersion = "r3-trace/1";

enum class StepKind {
  EntityLinking,
  SubgraphExtraction,
  AxiomSurfacing,
  Pruning,
  PremiseGrounding,
  Evaluation,
  MEI,
  Expansion,
  OptionResult,
  FinalAnswer,
};

std::string_view to_string(StepKind kind);
std::optional<StepKind> step_kind_from_string(std::string_view name);

// Position of a step in the search tree; absent coordinates serialize as null.
struct StepScope {
  std::optional<int> option;
  std::optional<int> branch;
  std::optional<int> depth;
};

struct TraceStep {
  std::uint64_t seq = 0;
  StepKind kind = StepKind::EntityLinking;
  StepScope scope;
  Json payload;
};

// Append-only record of one query evaluation. Serialization is
// deterministic: keys keep insertion order and numbers print exactly.
class ReasoningTrace {
 public:
  bool baseline = false;
  Json query = Json::object();
  Json config = Json::object();
  Json kg = Json::object();     // {base_size, extra_triples, extra_labels}
  Json answer = nullptr;
  Json audit = Json::object();
  int branches_used = 0;

  // Appends with the next seq (0, 1, 2, ...) and returns that seq.
  std::uint64_t record(StepKind kind, StepScope scope, Json payload);

  const std::vector<TraceStep>& steps() const { return steps_; }
  std::vector<TraceStep>& mutable_steps() { return steps_; }

  Json to_json() const;
  std::string serialize() const;

  // Throws TraceSchemaError on anything that is not a trace of this schema.
  static ReasoningTrace from_json(const Json& doc);
  static ReasoningTrace parse(std::string_view text);

 private:
  std::vector<TraceStep> steps_;
  std::uint64_t next_seq_ = 0;
};

// {id, head, relation, tail} as stored in the KG.
Json triple_json(const KnowledgeGraph& kg, TripleId id);

// Write to a sibling temp file, then rename over `path`.
void write_trace_file(const std::filesystem::path& path, const ReasoningTrace& trace);
ReasoningTrace read_trace_file(const std::filesystem::path& path);

}  // namespace r3
