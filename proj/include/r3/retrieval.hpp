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
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "r3/embedder.hpp"
#include "r3/knowledge_graph.hpp"

namespace r3 {

class AuditLog;
class LlmBackend;
class PromptLibrary;
struct Axiom;

// "<head label> <relation> <tail label or literal>"
std::string verbalize(const KnowledgeGraph& kg, const Triple& triple);
inline std::string verbalize(const KnowledgeGraph& kg, TripleId id) { return verbalize(kg, kg.triple(id)); }

// What an axiom is embedded as: its sentence followed by its structured form.
std::string axiom_retrieval_text(const Axiom& axiom);

// Candidates ranked by (squared Euclidean distance, id); the first k are
// returned. `query` and every row must share one dimension.
std::vector<TripleId> rank_nearest(std::span<const float> query, std::span<const TripleId> ids,
                                   std::span<const float> rows, std::size_t k);

// The k triples (not in `exclude`) nearest to `text` in embedding space,
// closest first, ties broken by smaller id.
std::vector<TripleId> top_k_similar(const Embedder& embedder, std::string_view text, const KnowledgeGraph& kg,
                                    std::span<const TripleId> triples, std::size_t k,
                                    const std::set<TripleId>& exclude);

// Shows the backend at most `window` candidates (ascending id) as a 1-based
// list and returns the ids it SELECTs. Out-of-range indices are dropped and
// audited; an unparseable response selects nothing.
std::vector<TripleId> llm_select_triples(LlmBackend& backend, const PromptLibrary& prompts,
                                         const KnowledgeGraph& kg, const Axiom& axiom,
                                         std::span<const TripleId> candidates, std::size_t window,
                                         AuditLog& audit);

// Axiom-relevant triples of one search branch. `triple_ids` accumulates over
// depths; `consumed` is everything already surfaced and never offered again.
struct PrunedTripleSet {
  std::set<TripleId> triple_ids;
  std::set<TripleId> consumed;
};

struct PruneOutcome {
  std::vector<TripleId> top_k;
  std::vector<TripleId> llm_selected;
  std::vector<TripleId> added;  // union of the two, ascending
};

struct PruneParams {
  std::size_t top_k = 10;
  std::size_t llm_window = 40;
};

// top_k_similar(exclude = consumed) united with llm_select_triples over the
// unconsumed part of the subgraph. The result is folded into `state`.
PruneOutcome prune_subgraph(const Embedder& embedder, LlmBackend& backend, const PromptLibrary& prompts,
                            const KnowledgeGraph& kg, const Axiom& axiom, std::span<const TripleId> subgraph,
                            const PruneParams& params, PrunedTripleSet& state, AuditLog& audit);

}  // namespace r3
