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

#include "r3/search.hpp"

#include <algorithm>

#include "r3/embedder.hpp"
#include "r3/errors.hpp"
#include "r3/grounding.hpp"
#include "r3/retrieval.hpp"

namespace r3 {

void SearchConfig::validate() const {
  if (max_breadth <= 0 || max_depth <= 0 || top_k <= 0 || llm_window <= 0) {
    throw ContractError("search budgets must be positive");
  }
}

PruneParams SearchConfig::prune_params() const {
  return {static_cast<std::size_t>(top_k), static_cast<std::size_t>(llm_window)};
}

std::string answer_display(const Query& query, const Answer& answer) {
  if (answer.value == Truth::Unknown) return "I don't know";
  switch (query.task) {
    case TaskKind::QaYesNo: return answer.value == Truth::True ? "Yes" : "No";
    case TaskKind::Claim: return answer.value == Truth::True ? "Correct" : "Incorrect";
    case TaskKind::MultipleChoice:
      if (answer.selected_option) return query.options.at(static_cast<std::size_t>(*answer.selected_option));
      return "I don't know";
  }
  return "I don't know";
}

Json kg_provenance(std::size_t base_size, const std::vector<RawTriple>& extra_triples,
                   const std::vector<LabelEntry>& extra_labels) {
  Json kg = Json::object();
  kg["base_size"] = base_size;
  Json triples = Json::array();
  for (const auto& t : extra_triples) triples.push_back(Json::array({t.head, t.relation, t.tail}));
  kg["extra_triples"] = std::move(triples);
  Json labels = Json::array();
  for (const auto& l : extra_labels) labels.push_back(Json::array({l.id, l.label}));
  kg["extra_labels"] = std::move(labels);
  return kg;
}

Json audit_json(const AuditLog& audit) {
  const auto c = audit.counters();
  Json j = Json::object();
  j["rejected_citations"] = c.rejected_citations;
  j["unresolved_names"] = c.unresolved_names;
  j["parse_failures"] = c.parse_failures;
  Json events = Json::array();
  for (const auto& e : audit.events()) {
    events.push_back(Json{{"kind", to_string(e.kind)}, {"detail", e.detail}});
  }
  j["events"] = std::move(events);
  return j;
}

Json query_json(const Query& query) {
  Json j = Json::object();
  j["text"] = query.text;
  j["task"] = to_string(query.task);
  j["options"] = query.options;
  return j;
}

namespace {

// Per-query view of the shared backend, so each query owns its call log.
class QueryBackend final : public LlmBackend {
 public:
  explicit QueryBackend(LlmBackend& inner) : inner_(inner) {}

 protected:
  std::string do_complete(const LlmRequest& request) override { return inner_.complete(request); }

 private:
  LlmBackend& inner_;
};

Json ids_json(const std::vector<TripleId>& ids) { return Json(ids); }

Json ids_json(const std::set<TripleId>& ids) { return Json(std::vector<TripleId>(ids.begin(), ids.end())); }

struct OptionRun {
  Truth value = Truth::Unknown;
  int branches = 0;
  int max_premises = 0;
  std::optional<std::size_t> calls_at_decision;
};

class Search {
 public:
  Search(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend, const SearchConfig& config,
         const PromptLibrary& prompts, ReasoningTrace& trace, AuditLog& audit)
      : kg_(kg), embedder_(embedder), backend_(backend), config_(config), prompts_(prompts), trace_(trace),
        audit_(audit) {}

  OptionRun run(const std::string& query_text, const std::optional<std::string>& option,
                std::optional<int> option_index) {
    OptionRun out;
    const std::string context_text = option ? query_text + "\n" + *option : query_text;

    auto linking = anchor_entities(kg_, backend_, prompts_, context_text, audit_);
    trace_.record(StepKind::EntityLinking, {option_index, std::nullopt, std::nullopt}, linking_json(linking, context_text));

    const Subgraph subgraph = one_hop_subgraph(kg_, linking.anchors.ids());
    Json sub = Json::object();
    sub["anchors"] = subgraph.anchor_set;
    sub["triple_ids"] = ids_json(subgraph.triple_ids);
    trace_.record(StepKind::SubgraphExtraction, {option_index, std::nullopt, std::nullopt}, std::move(sub));

    std::vector<Axiom> prior;
    for (int branch = 0; branch < config_.max_breadth; ++branch) {
      ++out.branches;
      const StepScope root{option_index, branch, 0};
      auto axiom = surface_axiom(backend_, prompts_, query_text, option, prior, audit_);
      if (!axiom) {
        Json p = Json::object();
        p["status"] = "failed";
        p["natural_text"] = "";
        p["axiom"] = nullptr;
        p["clauses"] = Json::array();
        trace_.record(StepKind::AxiomSurfacing, root, std::move(p));
        continue;
      }
      prior.push_back(*axiom);
      out.max_premises = std::max(out.max_premises, static_cast<int>(axiom->premise_count()));

      BranchState state;
      state.axiom = *axiom;
      state.anchors = linking.anchors;
      state.subgraph = subgraph;
      const std::uint64_t axiom_seq = trace_.record(StepKind::AxiomSurfacing, root, surfacing_json(*axiom));

      auto prune = prune_subgraph(embedder_, backend_, prompts_, kg_, state.axiom, state.subgraph.triple_ids,
                                  config_.prune_params(), state.pruned, audit_);
      trace_.record(StepKind::Pruning, root, pruning_json(axiom_seq, "subgraph", prune, state));

      std::vector<std::vector<std::uint64_t>> grounding_seqs;
      for (std::size_t c = 0; c < state.axiom.clauses.size(); ++c) {
        state.groundings.emplace_back();
        grounding_seqs.emplace_back();
        for (std::size_t p = 0; p < state.axiom.clauses[c].size(); ++p) {
          state.groundings[c].push_back(ground(state, c, p));
          grounding_seqs[c].push_back(record_grounding(root, axiom_seq, c, p, state.groundings[c][p]));
        }
      }
      Truth value = evaluate_axiom(state.axiom, state.groundings);
      record_evaluation(root, axiom_seq, value, state, grounding_seqs);

      while (value == Truth::Unknown && state.depth < config_.max_depth) {
        const StepScope here{option_index, branch, state.depth};
        auto missing = identify_missing(backend_, prompts_, kg_, context_text, state, audit_);
        trace_.record(StepKind::MEI, here, mei_json(axiom_seq, missing));
        if (!missing) break;

        auto expansion = expand(kg_, state, *missing, embedder_, backend_, prompts_, config_.prune_params(), audit_);
        const StepScope deeper{option_index, branch, state.depth};
        Json e = Json::object();
        e["axiom_seq"] = axiom_seq;
        e["entity"] = expansion.entity;
        e["already_anchor"] = expansion.already_anchor;
        e["subgraph_added"] = ids_json(expansion.subgraph_added);
        trace_.record(StepKind::Expansion, deeper, std::move(e));
        trace_.record(StepKind::Pruning, deeper,
                      pruning_json(axiom_seq, expansion.already_anchor ? "anchor_top_k" : "subgraph",
                                   expansion.prune, state));

        for (std::size_t c = 0; c < state.axiom.clauses.size(); ++c) {
          for (std::size_t p = 0; p < state.axiom.clauses[c].size(); ++p) {
            if (state.groundings[c][p].status != GroundingStatus::Unknown) continue;
            state.groundings[c][p] = ground(state, c, p);
            grounding_seqs[c][p] = record_grounding(deeper, axiom_seq, c, p, state.groundings[c][p]);
          }
        }
        value = evaluate_axiom(state.axiom, state.groundings);
        record_evaluation(deeper, axiom_seq, value, state, grounding_seqs);
      }

      if (value != Truth::Unknown) {
        out.value = value;
        out.calls_at_decision = backend_.call_count();
        return out;
      }
    }
    return out;
  }

 private:
  PremiseGrounding ground(const BranchState& state, std::size_t c, std::size_t p) {
    std::vector<TripleId> presented(state.pruned.triple_ids.begin(), state.pruned.triple_ids.end());
    return ground_premise(kg_, backend_, prompts_, state.axiom.clauses[c][p], presented, &state.anchors,
                          &state.axiom, audit_);
  }

  std::uint64_t record_grounding(const StepScope& scope, std::uint64_t axiom_seq, std::size_t c, std::size_t p,
                                 const PremiseGrounding& g) {
    Json j = Json::object();
    j["axiom_seq"] = axiom_seq;
    j["clause"] = c;
    j["premise_index"] = p;
    j["premise"] = serialize_premise(g.premise);
    j["subject"] = g.premise.subject;
    j["resolved_subject"] = g.subject ? Json(*g.subject) : Json(nullptr);
    j["method"] = to_string(g.method);
    j["status"] = to_string(g.status);
    Json evidence = Json::array();
    for (TripleId id : g.evidence) evidence.push_back(triple_json(kg_, id));
    j["evidence"] = std::move(evidence);
    return trace_.record(StepKind::PremiseGrounding, scope, std::move(j));
  }

  void record_evaluation(const StepScope& scope, std::uint64_t axiom_seq, Truth value, const BranchState& state,
                         const std::vector<std::vector<std::uint64_t>>& seqs) {
    Json j = Json::object();
    j["axiom_seq"] = axiom_seq;
    j["value"] = to_string(value);
    Json clauses = Json::array();
    for (std::size_t c = 0; c < seqs.size(); ++c) {
      Json clause = Json::array();
      for (std::size_t p = 0; p < seqs[c].size(); ++p) {
        clause.push_back(Json{{"grounding_seq", seqs[c][p]}, {"status", to_string(state.groundings[c][p].status)}});
      }
      clauses.push_back(std::move(clause));
    }
    j["clauses"] = std::move(clauses);
    trace_.record(StepKind::Evaluation, scope, std::move(j));
  }

  Json linking_json(const LinkingResult& linking, const std::string& text) const {
    Json j = Json::object();
    j["text"] = text;
    Json lexical = Json::array();
    for (const auto& m : linking.lexical) {
      lexical.push_back(Json{{"surface", m.surface}, {"offset", m.offset}, {"ids", m.ids}});
    }
    j["lexical"] = std::move(lexical);
    j["llm_names"] = linking.llm_names;
    Json resolved = Json::array();
    for (const auto& r : linking.resolved) resolved.push_back(Json{{"name", r.name}, {"ids", r.ids}});
    j["resolved"] = std::move(resolved);
    j["unresolved"] = linking.unresolved;
    Json anchors = Json::array();
    for (const auto& a : linking.anchors.entries()) {
      anchors.push_back(Json{{"id", a.id}, {"provenance", to_string(a.provenance)}});
    }
    j["anchors"] = std::move(anchors);
    return j;
  }

  static Json surfacing_json(const Axiom& axiom) {
    Json j = Json::object();
    j["status"] = "ok";
    j["natural_text"] = axiom.natural_text;
    j["axiom"] = serialize_axiom(axiom);
    Json clauses = Json::array();
    for (const auto& clause : axiom.clauses) {
      Json premises = Json::array();
      for (const auto& p : clause) premises.push_back(serialize_premise(p));
      clauses.push_back(std::move(premises));
    }
    j["clauses"] = std::move(clauses);
    return j;
  }

  static Json pruning_json(std::uint64_t axiom_seq, const char* source, const PruneOutcome& prune,
                           const BranchState& state) {
    Json j = Json::object();
    j["axiom_seq"] = axiom_seq;
    j["source"] = source;
    j["top_k"] = ids_json(prune.top_k);
    j["llm_selected"] = ids_json(prune.llm_selected);
    j["added"] = ids_json(prune.added);
    j["presented"] = ids_json(state.pruned.triple_ids);
    return j;
  }

  static Json mei_json(std::uint64_t axiom_seq, const std::optional<MissingEvidence>& missing) {
    Json j = Json::object();
    j["axiom_seq"] = axiom_seq;
    j["status"] = missing ? "ok" : "failed";
    j["description"] = missing ? Json(missing->description) : Json(nullptr);
    j["entity_name"] = missing ? Json(missing->entity_name) : Json(nullptr);
    j["resolved"] = missing && missing->resolved ? Json(*missing->resolved) : Json(nullptr);
    j["already_anchor"] = missing ? missing->already_anchor : false;
    j["resolved_via"] = missing ? Json(missing->resolved_via) : Json(nullptr);
    return j;
  }

  const KnowledgeGraph& kg_;
  const Embedder& embedder_;
  LlmBackend& backend_;
  const SearchConfig& config_;
  const PromptLibrary& prompts_;
  ReasoningTrace& trace_;
  AuditLog& audit_;
};

ReasoningTrace start_trace(const KnowledgeGraph& kg, const Embedder& embedder, const Query& query,
                           const SearchConfig& config) {
  ReasoningTrace trace;
  trace.query = query_json(query);
  Json c = Json::object();
  c["max_breadth"] = config.max_breadth;
  c["max_depth"] = config.max_depth;
  c["top_k"] = config.top_k;
  c["llm_window"] = config.llm_window;
  c["embedder"] = embedder.name();
  c["prompt_templates"] = kPromptTemplateVersion;
  trace.config = std::move(c);
  trace.kg = kg_provenance(kg.size(), {}, {});
  return trace;
}

void finish(QueryResult& result, const Query& query, const AuditLog& audit, const QueryBackend& calls) {
  result.answer.display = answer_display(query, result.answer);
  Json fa = Json::object();
  fa["value"] = to_string(result.answer.value);
  fa["selected_option"] = result.answer.selected_option ? Json(*result.answer.selected_option) : Json(nullptr);
  fa["display"] = result.answer.display;
  result.trace.record(StepKind::FinalAnswer, {}, fa);
  result.trace.answer = fa;
  result.trace.audit = audit_json(audit);
  result.trace.branches_used = result.branches_used;
  result.audit = audit.counters();
  result.events = audit.events();
  result.calls = calls.call_log();
}

}  // namespace

QueryResult answer_query(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                         const Query& query, const SearchConfig& config, const PromptLibrary& prompts) {
  validate(query);
  if (query.task == TaskKind::MultipleChoice) {
    return answer_multiple_choice(kg, embedder, backend, query, config, prompts);
  }
  config.validate();
  QueryBackend calls(backend);
  AuditLog audit;
  QueryResult result;
  result.trace = start_trace(kg, embedder, query, config);
  Search search(kg, embedder, calls, config, prompts, result.trace, audit);

  OptionOutcome outcome;
  auto run = search.run(query.text, std::nullopt, std::nullopt);
  outcome.value = run.value;
  outcome.branches = run.branches;
  outcome.max_premises = run.max_premises;
  outcome.calls_end = calls.call_count();
  outcome.calls_at_decision = run.calls_at_decision.value_or(outcome.calls_end);
  result.options.push_back(outcome);
  result.branches_used = run.branches;
  result.answer.value = run.value;
  finish(result, query, audit, calls);
  return result;
}

QueryResult answer_multiple_choice(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend,
                                   const Query& query, const SearchConfig& config, const PromptLibrary& prompts) {
  validate(query);
  if (query.options.empty()) throw ContractError("answer_multiple_choice: no options");
  config.validate();
  QueryBackend calls(backend);
  AuditLog audit;
  QueryResult result;
  result.trace = start_trace(kg, embedder, query, config);
  Search search(kg, embedder, calls, config, prompts, result.trace, audit);

  for (std::size_t i = 0; i < query.options.size(); ++i) {
    const int index = static_cast<int>(i);
    OptionOutcome outcome;
    outcome.option = index;
    outcome.calls_begin = calls.call_count();
    auto run = search.run(query.text, query.options[i], index);
    outcome.value = run.value;
    outcome.branches = run.branches;
    outcome.max_premises = run.max_premises;
    outcome.calls_end = calls.call_count();
    outcome.calls_at_decision = run.calls_at_decision.value_or(outcome.calls_end);
    result.branches_used += run.branches;

    Json r = Json::object();
    r["option"] = index;
    r["text"] = query.options[i];
    r["value"] = to_string(run.value);
    result.trace.record(StepKind::OptionResult, {index, std::nullopt, std::nullopt}, std::move(r));
    result.options.push_back(outcome);
    if (run.value == Truth::True) {
      result.answer.value = Truth::True;
      result.answer.selected_option = index;
      break;
    }
  }
  finish(result, query, audit, calls);
  return result;
}

R3Engine::R3Engine(const KnowledgeGraph& kg, const Embedder& embedder, LlmBackend& backend, SearchConfig config,
                   const PromptLibrary* prompts)
    : kg_(kg), embedder_(embedder), backend_(backend), config_(config),
      prompts_(prompts ? *prompts : PromptLibrary::defaults()) {
  config_.validate();
}

QueryResult R3Engine::answer(const Query& query) const { return answer(query, kg_); }

QueryResult R3Engine::answer(const Query& query, const KnowledgeGraph& kg) const {
  return answer_query(kg, embedder_, backend_, query, config_, prompts_);
}

}  // namespace r3
