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

#include "r3/evidence_expansion.hpp"

#include <algorithm>
#include <set>

#include "r3/audit.hpp"
#include "r3/embedder.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/responses.hpp"
#include "r3/text.hpp"

namespace r3 {

namespace {

std::vector<EntityId> subgraph_tails(const KnowledgeGraph& kg, const Subgraph& subgraph) {
  std::vector<EntityId> tails;
  std::set<EntityId> seen;
  for (TripleId id : subgraph.triple_ids) {
    const Triple& t = kg.triple(id);
    if (t.tail.is_entity() && seen.insert(t.tail.raw).second) tails.push_back(t.tail.raw);
  }
  return tails;
}

}  // namespace

std::optional<EntityId> resolve_missing_entity(const KnowledgeGraph& kg, std::string_view name,
                                               const Subgraph& subgraph, std::string* via, AuditLog* audit) {
  const auto tails = subgraph_tails(kg, subgraph);
  auto is_tail = [&](const EntityId& id) { return std::find(tails.begin(), tails.end(), id) != tails.end(); };

  auto by_label = resolve_name(kg, name);
  if (!by_label.empty()) {
    if (via) *via = "label";
    if (by_label.size() == 1) return by_label.front();
    auto pick = std::find_if(by_label.begin(), by_label.end(), is_tail);
    EntityId chosen = pick != by_label.end() ? *pick : by_label.front();
    if (audit) {
      audit->record(AuditKind::AmbiguousName, "MEI entity '" + std::string(name) + "' matches " +
                                                  std::to_string(by_label.size()) + " entities; chose " + chosen);
    }
    return chosen;
  }

  const std::string want = normalize_name(name);
  for (const auto& id : tails) {
    if (id == name || normalize_name(id) == want || normalize(kg.label_of(id)) == want) {
      if (via) *via = "subgraph_tail";
      return id;
    }
  }
  return std::nullopt;
}

std::optional<MissingEvidence> identify_missing(LlmBackend& backend, const PromptLibrary& prompts,
                                                const KnowledgeGraph& kg, std::string_view query_text,
                                                const BranchState& state, AuditLog& audit) {
  std::vector<std::string> unknown;
  for (const auto& clause : state.groundings) {
    for (const auto& g : clause) {
      if (g.status == GroundingStatus::Unknown) unknown.push_back(serialize_premise(g.premise));
    }
  }
  if (unknown.empty()) throw ContractError("identify_missing: no Unknown premise");

  PromptContext ctx;
  ctx.query = std::string(query_text);
  ctx.axiom = serialize_axiom(state.axiom);
  ctx.unsatisfied_premises = std::move(unknown);
  std::vector<std::string> lines;
  for (TripleId id : state.pruned.triple_ids) lines.push_back(verbalize(kg, id));
  ctx.triples = std::move(lines);

  auto response = backend.complete({LlmRole::Mei, prompts.render(LlmRole::Mei, ctx), 0.0});
  auto parsed = parse_mei_response(response);
  if (!parsed) {
    audit.record(AuditKind::ParseFailure, "mei response lacks MISSING/ENTITY lines");
    audit.record(AuditKind::ExpansionFailure, "unparseable mei response");
    return std::nullopt;
  }

  MissingEvidence missing;
  missing.description = parsed->missing;
  missing.entity_name = parsed->entity;
  missing.resolved = resolve_missing_entity(kg, parsed->entity, state.subgraph, &missing.resolved_via, &audit);
  if (!missing.resolved) {
    audit.record(AuditKind::UnresolvedName, "mei entity '" + parsed->entity + "'");
    audit.record(AuditKind::ExpansionFailure, "mei entity '" + parsed->entity + "' does not resolve");
    return std::nullopt;
  }
  missing.already_anchor = state.anchors.contains(*missing.resolved);
  return missing;
}

ExpansionOutcome expand(const KnowledgeGraph& kg, BranchState& state, const MissingEvidence& missing,
                        const Embedder& embedder, LlmBackend& backend, const PromptLibrary& prompts,
                        const PruneParams& params, AuditLog& audit) {
  if (!missing.resolved) throw ContractError("expand: missing entity is unresolved");
  const EntityId& entity = *missing.resolved;

  ExpansionOutcome out;
  out.entity = entity;
  out.already_anchor = state.anchors.contains(entity);

  if (out.already_anchor) {
    const auto& own = kg.head_triples(entity);
    out.prune.top_k = top_k_similar(embedder, axiom_retrieval_text(state.axiom), kg, own, params.top_k,
                                    state.pruned.consumed);
    out.prune.added = out.prune.top_k;
    std::sort(out.prune.added.begin(), out.prune.added.end());
    for (TripleId id : out.prune.added) {
      state.pruned.triple_ids.insert(id);
      state.pruned.consumed.insert(id);
    }
  } else {
    state.anchors.add(entity, AnchorProvenance::Mei);
    std::set<TripleId> merged(state.subgraph.triple_ids.begin(), state.subgraph.triple_ids.end());
    for (TripleId id : kg.head_triples(entity)) {
      if (merged.insert(id).second) out.subgraph_added.push_back(id);
    }
    std::sort(out.subgraph_added.begin(), out.subgraph_added.end());
    state.subgraph.triple_ids.assign(merged.begin(), merged.end());
    auto pos = std::lower_bound(state.subgraph.anchor_set.begin(), state.subgraph.anchor_set.end(), entity);
    if (pos == state.subgraph.anchor_set.end() || *pos != entity) state.subgraph.anchor_set.insert(pos, entity);
    out.prune = prune_subgraph(embedder, backend, prompts, kg, state.axiom, state.subgraph.triple_ids, params,
                               state.pruned, audit);
  }
  ++state.depth;
  return out;
}

}  // namespace r3
