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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "r3/entity_linking.hpp"
#include "r3/knowledge_graph.hpp"
#include "r3/prompts.hpp"
#include "r3/search.hpp"

namespace r3 {

class Embedder;
class LlmBackend;

// First word token of the normalized response that is yes/true (True) or
// no/false (False); Unknown when neither occurs.
Truth keyword_answer(std::string_view response);

// First integer in the response that names an option (1-based), as a
// 0-based index.
std::optional<int> option_answer(std::string_view response, std::size_t option_count);

struct BaselineResult {
  Answer answer;
  ReasoningTrace trace;
  std::vector<TripleId> retrieved;  // closest first
  std::string response;
};

// Retrieve-and-read: the k triples closest to the query text (within the
// one-hop subgraph of lexically linked entities, or the whole KG when no
// entity links) go into one answer prompt. No grounding is enforced; the
// trace is flagged as a baseline trace.
BaselineResult baseline_retrieve_read(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                                      const Query& query, std::size_t k,
                                      const PromptLibrary& prompts = PromptLibrary::defaults());

}  // namespace r3
