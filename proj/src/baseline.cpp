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

#include "r3/baseline.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "r3/embedder.hpp"
#include "r3/llm_backend.hpp"
#include "r3/retrieval.hpp"
#include "r3/text.hpp"

namespace r3 {

Truth keyword_answer(std::string_view response) {
  const std::string text = normalize(response);
  for (const auto& token : word_tokens(text)) {
    if (token == "yes" || token == "true") return Truth::True;
    if (token == "no" || token == "false") return Truth::False;
  }
  return Truth::Unknown;
}

std::optional<int> option_answer(std::string_view response, std::size_t option_count) {
  std::size_t i = 0;
  while (i < response.size()) {
    if (response[i] < '0' || response[i] > '9') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < response.size() && response[j] >= '0' && response[j] <= '9') ++j;
    unsigned long long n = 0;
    auto [ptr, ec] = std::from_chars(response.data() + i, response.data() + j, n);
    if (ec == std::errc() && n >= 1 && n <= option_count) return static_cast<int>(n - 1);
    i = j;
  }
  return std::nullopt;
}

BaselineResult baseline_retrieve_read(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                                      const Query& query, std::size_t k, const PromptLibrary& prompts) {
  validate(query);
  BaselineResult out;
  ReasoningTrace& trace = out.trace;
  trace.baseline = true;
  trace.query = query_json(query);
  Json config = Json::object();
  config["max_breadth"] = 1;
  config["max_depth"] = 1;
  config["top_k"] = k;
  config["embedder"] = embedder.name();
  config["prompt_templates"] = kPromptTemplateVersion;
  trace.config = std::move(config);
  trace.kg = kg_provenance(kg.size(), {}, {});

  std::string text = query.text;
  for (const auto& option : query.options) text += "\n" + option;

  const auto lexical = lexical_matches(kg, text);
  std::vector<EntityId> anchors;
  Json lexical_json = Json::array();
  for (const auto& m : lexical) {
    lexical_json.push_back(Json{{"surface", m.surface}, {"offset", m.offset}, {"ids", m.ids}});
    for (const auto& id : m.ids) {
      if (std::find(anchors.begin(), anchors.end(), id) == anchors.end()) anchors.push_back(id);
    }
  }
  Json linking = Json::object();
  linking["text"] = text;
  linking["lexical"] = std::move(lexical_json);
  linking["anchors"] = anchors;
  trace.record(StepKind::EntityLinking, {}, std::move(linking));

  std::vector<TripleId> pool;
  if (anchors.empty()) {
    pool.resize(kg.size());
    std::iota(pool.begin(), pool.end(), TripleId{0});
  } else {
    pool = one_hop_subgraph(kg, anchors).triple_ids;
  }
  Json sub = Json::object();
  sub["anchors"] = anchors;
  sub["whole_kg"] = anchors.empty();
  sub["triple_ids"] = pool;
  trace.record(StepKind::SubgraphExtraction, {}, std::move(sub));

  out.retrieved = top_k_similar(embedder, query.text, kg, pool, k, {});
  std::vector<TripleId> shown = out.retrieved;
  std::sort(shown.begin(), shown.end());
  Json pruning = Json::object();
  pruning["axiom_seq"] = nullptr;
  pruning["source"] = "query_top_k";
  pruning["top_k"] = out.retrieved;
  pruning["llm_selected"] = Json::array();
  pruning["added"] = shown;
  pruning["presented"] = shown;
  trace.record(StepKind::Pruning, {}, std::move(pruning));

  PromptContext ctx;
  ctx.query = query.text;
  if (!query.options.empty()) ctx.options = query.options;
  std::vector<std::string> lines;
  for (TripleId id : shown) lines.push_back(verbalize(kg, id));
  ctx.triples = std::move(lines);
  out.response = backend.complete({LlmRole::Answer, prompts.render(LlmRole::Answer, ctx), 0.0});

  if (query.options.empty()) {
    out.answer.value = keyword_answer(out.response);
  } else if (auto pick = option_answer(out.response, query.options.size())) {
    out.answer.value = Truth::True;
    out.answer.selected_option = pick;
  }
  out.answer.display = answer_display(query, out.answer);

  Json fa = Json::object();
  fa["value"] = to_string(out.answer.value);
  fa["selected_option"] = out.answer.selected_option ? Json(*out.answer.selected_option) : Json(nullptr);
  fa["display"] = out.answer.display;
  fa["response"] = out.response;
  trace.record(StepKind::FinalAnswer, {}, fa);
  trace.answer = std::move(fa);
  Json audit = Json::object();
  audit["rejected_citations"] = 0;
  audit["unresolved_names"] = 0;
  audit["parse_failures"] = 0;
  audit["events"] = Json::array();
  trace.audit = std::move(audit);
  trace.branches_used = 0;
  return out;
}

}  // namespace r3
