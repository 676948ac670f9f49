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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "r3/embedder.hpp"
#include "r3/entity_linking.hpp"
#include "r3/knowledge_graph.hpp"
#include "r3/scripted_backend.hpp"
#include "r3/search.hpp"

namespace r3::testing {

std::filesystem::path fixture_dir();
const KnowledgeGraph& base_kg();

struct Scenario {
  std::string name;
  Query query;
  std::vector<RawTriple> personal_kg;
  std::vector<LabelEntry> personal_labels;
  nlohmann::json script;
  nlohmann::json expect;
};

Scenario load_scenario(const std::string& name);
std::vector<std::string> scenario_names();

struct ScenarioRun {
  KnowledgeGraph kg;  // base plus personal triples
  QueryResult result;
  std::map<LlmRole, std::size_t> unconsumed;
};

ScenarioRun run_scenario(const Scenario& scenario, const SearchConfig& config = {});

// Premise/evidence triples cited by non-Unknown groundings, as (head, relation, tail).
std::vector<std::vector<std::string>> cited_triples(const ReasoningTrace& trace);

// Largest depth recorded on any step.
int max_depth(const ReasoningTrace& trace);

// Embedder over small integer vectors so that distances are exact in float
// and in 64-bit integer arithmetic alike. Text "v:<i>" maps to row i.
class TableEmbedder final : public Embedder {
 public:
  explicit TableEmbedder(std::vector<std::vector<int>> rows, std::vector<int> query);
  Embedding embed(std::string_view text) const override;
  std::size_t dimension() const override { return query_.size(); }
  std::string name() const override { return "table"; }

 private:
  std::vector<std::vector<int>> rows_;
  std::vector<int> query_;
};

// Splits "a\tb\tc"-free random KGs out of a seeded generator.
struct RandomKg {
  std::vector<RawTriple> triples;
  std::vector<LabelEntry> labels;
};
RandomKg random_kg(unsigned seed, std::size_t max_triples, std::size_t entities);

}  // namespace r3::testing
