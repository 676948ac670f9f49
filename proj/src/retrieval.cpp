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

#include "r3/retrieval.hpp"

#include <algorithm>
#include <numeric>

#include "r3/audit.hpp"
#include "r3/axiom.hpp"
#include "r3/distance.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/responses.hpp"

namespace r3 {

std::string verbalize(const KnowledgeGraph& kg, const Triple& triple) {
  return kg.label_of(triple.head) + " " + triple.relation + " " + kg.tail_display(triple);
}

std::string axiom_retrieval_text(const Axiom& axiom) {
  std::string structured = serialize_axiom(axiom);
  return axiom.natural_text.empty() ? structured : axiom.natural_text + " " + structured;
}

std::vector<TripleId> rank_nearest(std::span<const float> query, std::span<const TripleId> ids,
                                   std::span<const float> rows, std::size_t k) {
  const std::size_t dim = query.size();
  if (rows.size() != ids.size() * dim) throw ContractError("rank_nearest: rows do not match ids");
  std::vector<float> dist(ids.size());
  simd::squared_l2_rows(query, rows, dim, dist);

  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  auto closer = [&](std::size_t a, std::size_t b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : ids[a] < ids[b];
  };
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);

  std::vector<TripleId> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(ids[order[i]]);
  return out;
}

std::vector<TripleId> top_k_similar(const Embedder& embedder, std::string_view text, const KnowledgeGraph& kg,
                                    std::span<const TripleId> triples, std::size_t k,
                                    const std::set<TripleId>& exclude) {
  if (k == 0) return {};
  std::vector<TripleId> ids;
  ids.reserve(triples.size());
  for (TripleId id : triples) {
    if (!exclude.contains(id)) ids.push_back(id);
  }
  if (ids.empty()) return {};

  const std::size_t dim = embedder.dimension();
  const Embedding query = embedder.embed(text);
  std::vector<float> rows;
  rows.reserve(ids.size() * dim);
  for (TripleId id : ids) {
    Embedding e = embedder.embed(verbalize(kg, id));
    rows.insert(rows.end(), e.begin(), e.end());
  }
  return rank_nearest(query, ids, rows, k);
}

std::vector<TripleId> llm_select_triples(LlmBackend& backend, const PromptLibrary& prompts,
                                         const KnowledgeGraph& kg, const Axiom& axiom,
                                         std::span<const TripleId> candidates, std::size_t window,
                                         AuditLog& audit) {
  std::vector<TripleId> shown(candidates.begin(), candidates.end());
  std::sort(shown.begin(), shown.end());
  shown.erase(std::unique(shown.begin(), shown.end()), shown.end());
  if (shown.size() > window) shown.resize(window);
  if (shown.empty()) return {};

  PromptContext ctx;
  ctx.axiom = serialize_axiom(axiom);
  std::vector<std::string> lines;
  for (TripleId id : shown) lines.push_back(verbalize(kg, id));
  ctx.triples = std::move(lines);

  std::string response =
      backend.complete({LlmRole::TripleSelect, prompts.render(LlmRole::TripleSelect, ctx), 0.0});
  auto picks = parse_select_response(response);
  if (!picks) {
    audit.record(AuditKind::ParseFailure, "triple_select response lacks a valid SELECT line");
    return {};
  }
  std::set<TripleId> selected;
  std::vector<long long> rejected;
  for (long long index : *picks) {
    if (index < 1 || index > static_cast<long long>(shown.size())) {
      rejected.push_back(index);
      continue;
    }
    selected.insert(shown[static_cast<std::size_t>(index - 1)]);
  }
  if (!rejected.empty()) {
    std::string detail = "SELECT indices out of range 1.." + std::to_string(shown.size()) + ":";
    for (auto r : rejected) detail += " " + std::to_string(r);
    audit.record(AuditKind::ParseFailure, detail);
  }
  return {selected.begin(), selected.end()};
}

PruneOutcome prune_subgraph(const Embedder& embedder, LlmBackend& backend, const PromptLibrary& prompts,
                            const KnowledgeGraph& kg, const Axiom& axiom, std::span<const TripleId> subgraph,
                            const PruneParams& params, PrunedTripleSet& state, AuditLog& audit) {
  PruneOutcome out;
  out.top_k = top_k_similar(embedder, axiom_retrieval_text(axiom), kg, subgraph, params.top_k, state.consumed);

  std::vector<TripleId> fresh;
  for (TripleId id : subgraph) {
    if (!state.consumed.contains(id)) fresh.push_back(id);
  }
  out.llm_selected = llm_select_triples(backend, prompts, kg, axiom, fresh, params.llm_window, audit);

  std::set<TripleId> added(out.top_k.begin(), out.top_k.end());
  added.insert(out.llm_selected.begin(), out.llm_selected.end());
  out.added.assign(added.begin(), added.end());
  state.triple_ids.insert(added.begin(), added.end());
  state.consumed.insert(added.begin(), added.end());
  return out;
}

}  // namespace r3
