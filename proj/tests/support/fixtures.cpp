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

#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "r3/trace.hpp"

namespace r3::testing {

std::filesystem::path fixture_dir() { return R3_FIXTURE_DIR; }

const KnowledgeGraph& base_kg() {
  static const KnowledgeGraph kg = load_kg(fixture_dir() / "kg" / "triples.tsv", fixture_dir() / "kg" / "labels.tsv");
  return kg;
}

Scenario load_scenario(const std::string& name) {
  std::ifstream in(fixture_dir() / "scenarios" / (name + ".json"));
  if (!in) throw std::runtime_error("missing scenario " + name);
  const auto doc = nlohmann::json::parse(in);
  Scenario s;
  s.name = name;
  s.query.text = doc.at("query").get<std::string>();
  const std::string task = doc.at("task").get<std::string>();
  s.query.task = task == "claim" ? TaskKind::Claim : task == "preference" ? TaskKind::MultipleChoice : TaskKind::QaYesNo;
  if (doc.contains("options")) s.query.options = doc.at("options").get<std::vector<std::string>>();
  for (const auto& t : doc.value("personal_kg", nlohmann::json::array())) {
    s.personal_kg.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
  }
  for (const auto& l : doc.value("personal_labels", nlohmann::json::array())) {
    s.personal_labels.push_back({l[0].get<std::string>(), l[1].get<std::string>()});
  }
  s.script = doc.at("script");
  s.expect = doc.at("expect");
  return s;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir() / "scenarios")) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

ScenarioRun run_scenario(const Scenario& scenario, const SearchConfig& config) {
  ScenarioRun run;
  run.kg = base_kg().merged_with(scenario.personal_kg, scenario.personal_labels);
  ScriptedBackend backend(scenario.script);
  backend.set_report_unconsumed(false);
  HashingEmbedder embedder;
  run.result = answer_query(run.kg, embedder, backend, scenario.query, config);
  run.result.trace.kg = kg_provenance(base_kg().size(), scenario.personal_kg, scenario.personal_labels);
  run.unconsumed = backend.remaining();
  for (auto it = run.unconsumed.begin(); it != run.unconsumed.end();) {
    it = it->second == 0 ? run.unconsumed.erase(it) : std::next(it);
  }
  return run;
}

std::vector<std::vector<std::string>> cited_triples(const ReasoningTrace& trace) {
  std::vector<std::vector<std::string>> out;
  for (const auto& step : trace.steps()) {
    if (step.kind != StepKind::PremiseGrounding) continue;
    for (const auto& e : step.payload.at("evidence")) {
      std::vector<std::string> t{e.at("head").get<std::string>(), e.at("relation").get<std::string>(),
                                 e.at("tail").get<std::string>()};
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  return out;
}

int max_depth(const ReasoningTrace& trace) {
  int depth = 0;
  for (const auto& step : trace.steps()) depth = std::max(depth, step.scope.depth.value_or(0));
  return depth;
}

TableEmbedder::TableEmbedder(std::vector<std::vector<int>> rows, std::vector<int> query)
    : rows_(std::move(rows)), query_(std::move(query)) {}

Embedding TableEmbedder::embed(std::string_view text) const {
  const std::vector<int>* source = &query_;
  if (text.substr(0, 2) == "v:") source = &rows_.at(std::stoul(std::string(text.substr(2))));
  return Embedding(source->begin(), source->end());
}

RandomKg random_kg(unsigned seed, std::size_t max_triples, std::size_t entities) {
  std::mt19937 rng(seed);
  RandomKg kg;
  std::uniform_int_distribution<std::size_t> count(0, max_triples);
  std::uniform_int_distribution<std::size_t> entity(0, entities - 1);
  std::uniform_int_distribution<int> relation(0, 5);
  std::uniform_int_distribution<int> kind(0, 2);
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::string tail;
    switch (kind(rng)) {
      case 0: tail = "E" + std::to_string(entity(rng)); break;
      case 1: tail = std::to_string(relation(rng) * 7); break;
      default: tail = "text " + std::to_string(entity(rng)); break;
    }
    kg.triples.push_back({"E" + std::to_string(entity(rng)), "r" + std::to_string(relation(rng)), tail});
  }
  for (std::size_t e = 0; e < entities; ++e) kg.labels.push_back({"E" + std::to_string(e), "entity " + std::to_string(e)});
  return kg;
}

}  // namespace r3::testing
