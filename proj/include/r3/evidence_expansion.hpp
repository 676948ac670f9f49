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
#include <string_view>
#include <vector>

#include "r3/axiom.hpp"
#include "r3/entity_linking.hpp"
#include "r3/grounding.hpp"
#include "r3/knowledge_graph.hpp"
#include "r3/retrieval.hpp"

namespace r3 {

class AuditLog;
class Embedder;
class LlmBackend;
class PromptLibrary;

// Evidence state of one axiom branch. Sets only grow while depth advances,
// and every subgraph triple has its head in `anchors`.
struct BranchState {
  Axiom axiom;
  int depth = 0;
  AnchorEntitySet anchors;
  Subgraph subgraph;
  PrunedTripleSet pruned;
  AxiomGroundings groundings;
};

struct MissingEvidence {
  std::string description;
  std::string entity_name;
  std::optional<EntityId> resolved;
  bool already_anchor = false;
  std::string resolved_via;  // "label", "subgraph_tail" or empty
};

// Entity a MEI name refers to: KG labels and aliases first, then ids and
// labels of entity tails inside `subgraph`. When the label route is
// ambiguous, a candidate that is a subgraph tail is preferred.
std::optional<EntityId> resolve_missing_entity(const KnowledgeGraph& kg, std::string_view name,
                                               const Subgraph& subgraph, std::string* via = nullptr,
                                               AuditLog* audit = nullptr);

// Asks the backend (role mei) what is missing for the Unknown premises of
// `state`. nullopt, with an ExpansionFailure event, when the response is
// unparseable or the entity does not resolve.
std::optional<MissingEvidence> identify_missing(LlmBackend& backend, const PromptLibrary& prompts,
                                                const KnowledgeGraph& kg, std::string_view query_text,
                                                const BranchState& state, AuditLog& audit);

struct ExpansionOutcome {
  EntityId entity;
  bool already_anchor = false;
  std::vector<TripleId> subgraph_added;  // new subgraph triples, ascending
  PruneOutcome prune;
};

// Adds missing.resolved to the branch (or, for an existing anchor, pulls its
// next top-k unconsumed triples) and advances depth by one. Throws
// ContractError when missing.resolved is empty.
ExpansionOutcome expand(const KnowledgeGraph& kg, BranchState& state, const MissingEvidence& missing,
                        const Embedder& embedder, LlmBackend& backend, const PromptLibrary& prompts,
                        const PruneParams& params, AuditLog& audit);

}  // namespace r3
