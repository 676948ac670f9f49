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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "r3/entity_linking.hpp"
#include "r3/knowledge_graph.hpp"
#include "r3/prompts.hpp"
#include "r3/search.hpp"
#include "r3/trace.hpp"

namespace r3 {

class Embedder;
class LlmBackend;

enum class DatasetTask { Qa, Claim, Preference };

std::string_view to_string(DatasetTask task);

// Gold answer: a truth value for qa/claim, an option index for preference.
struct Gold {
  std::optional<Truth> truth;
  std::optional<int> option;
};

// One JSONL line:
//   {"id", "task": "qa"|"claim"|"preference", "query", "options": [...],
//    "gold": "Yes"|"No"|"Correct"|"Incorrect"|<0-based option index>,
//    "kg": {"triples": path, "labels": path},          optional
//    "personal_kg": [[head, relation, tail], ...],     optional
//    "personal_labels": [[id, label], ...]}            optional
struct DatasetItem {
  std::string id;
  DatasetTask task = DatasetTask::Qa;
  std::string query;
  std::vector<std::string> options;
  Gold gold;
  std::optional<std::filesystem::path> kg_triples;
  std::optional<std::filesystem::path> kg_labels;
  std::vector<RawTriple> personal_kg;
  std::vector<LabelEntry> personal_labels;
};

// Throws ParseError on a malformed item.
DatasetItem parse_dataset_item(const Json& line);
Query to_query(const DatasetItem& item);
bool is_correct(const DatasetItem& item, const Answer& answer);
Json gold_json(const DatasetItem& item);

struct DatasetLoad {
  std::vector<DatasetItem> items;
  std::vector<std::string> warnings;  // one per skipped line
  std::size_t skipped = 0;
};

// Malformed lines are skipped and reported, never fatal. Relative KG paths
// resolve against `base_dir`.
DatasetLoad parse_dataset(std::istream& in, const std::filesystem::path& base_dir = {});
DatasetLoad load_dataset(const std::filesystem::path& path);

struct ItemResult {
  std::string id;
  std::string task;
  Answer answer;
  Json gold;
  bool correct = false;
  std::optional<std::string> trace_path;
  bool checked = false;   // verify_trace ran
  bool verified = false;  // and passed
  double grounding_precision = 1.0;
  int rejected_citations = 0;
  std::optional<std::string> error;  // transport or script failure

  Json to_json() const;
};

struct Metrics {
  std::size_t items = 0;
  std::size_t correct = 0;
  std::size_t answered = 0;
  std::size_t errors = 0;
  std::size_t verification_failures = 0;
  std::size_t skipped = 0;
  std::optional<double> accuracy;     // absent for an empty run
  std::optional<double> answer_rate;  // absent for an empty run
  std::optional<double> grounding_precision;
  int rejected_citations = 0;

  Json to_json() const;
};

// Unknown counts as incorrect; accuracy and answer_rate are over all
// evaluated items, grounding precision is the mean over verified traces.
Metrics compute_metrics(const std::vector<ItemResult>& results, std::size_t skipped);

struct EvalOptions {
  SearchConfig config;
  bool baseline = false;
  std::optional<std::filesystem::path> trace_dir;  // <dir>/<id>.trace.json
  std::size_t workers = 1;
  const PromptLibrary* prompts = nullptr;
};

// Backend for one item. Must stay valid for the whole run.
using BackendProvider = std::function<LlmBackend&(const DatasetItem&)>;

struct EvalRun {
  Metrics metrics;
  std::vector<ItemResult> results;  // dataset order
};

// Runs every item, verifies every trace and writes traces atomically.
// Items may run on `workers` threads; results and metrics do not depend on
// completion order.
EvalRun run_eval(const DatasetLoad& dataset, const KnowledgeGraph& kg, const Embedder& embedder,
                 const BackendProvider& backends, const EvalOptions& options);

// Results JSONL, one ItemResult per line, atomically replaced.
void write_results(const std::filesystem::path& path, const std::vector<ItemResult>& results);

}  // namespace r3
