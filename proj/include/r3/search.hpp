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

#include <optional>
#include <string>
#include <vector>

#include "r3/audit.hpp"
#include "r3/entity_linking.hpp"
#include "r3/evidence_expansion.hpp"
#include "r3/kleene.hpp"
#include "r3/knowledge_graph.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/trace.hpp"

namespace r3 {

class Embedder;

struct SearchConfig {
  int max_breadth = 2;   // axioms surfaced per option
  int max_depth = 3;     // evidence expansions per axiom
  int top_k = 10;
  int llm_window = 40;

  // Throws ContractError unless every budget is positive.
  void validate() const;
  PruneParams prune_params() const;
};

struct Answer {
  Truth value = Truth::Unknown;
  std::optional<int> selected_option;  // multiple choice only, 0-based
  std::string display;                 // "Yes", "Correct", option text, "I don't know", ...
};

// Backend-call bookkeeping for one option (or the single pass of a yes/no or
// claim query). Indices count calls made by this query only.
struct OptionOutcome {
  std::optional<int> option;
  Truth value = Truth::Unknown;
  int branches = 0;
  int max_premises = 0;
  std::size_t calls_begin = 0;
  std::size_t calls_at_decision = 0;  // == calls_end unless undecided
  std::size_t calls_end = 0;
};

struct QueryResult {
  Answer answer;
  ReasoningTrace trace;
  AuditCounters audit;
  std::vector<AuditEvent> events;
  int branches_used = 0;
  std::vector<CallRecord> calls;
  std::vector<OptionOutcome> options;
};

std::string answer_display(const Query& query, const Answer& answer);

// Yes/no and claim queries. Option-bearing queries are routed to
// answer_multiple_choice.
QueryResult answer_query(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                         const Query& query, const SearchConfig& config = {},
                         const PromptLibrary& prompts = PromptLibrary::defaults());

// Options in listed order; the first True option is selected, later options
// are never evaluated.
QueryResult answer_multiple_choice(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                                   const Query& query, const SearchConfig& config = {},
                                   const PromptLibrary& prompts = PromptLibrary::defaults());

// Shares one KG, embedder and backend across any number of concurrent
// answer() calls; all per-query state lives on the caller's stack.
class R3Engine {
 public:
  R3Engine(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend, SearchConfig config = {},
           const PromptLibrary* prompts = nullptr);

  QueryResult answer(const Query& query) const;
  QueryResult answer(const Query& query, const KnowledgeGraph& kg) const;

  const SearchConfig& config() const { return config_; }

 private:
  const KnowledgeGraph& kg_;
  const Embedder& embedder_;
  LlmBackend& backend_;
  SearchConfig config_;
  const PromptLibrary& prompts_;
};

// Trace "kg" header: size of the KG the query ran against minus the extras,
// plus the extra triples and labels merged in for this query.
Json kg_provenance(std::size_t base_size, const std::vector<RawTriple>& extra_triples,
                   const std::vector<LabelEntry>& extra_labels);

Json audit_json(const AuditLog& audit);
Json query_json(const Query& query);

}  // namespace r3
