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

#include "r3/grounding.hpp"

#include <algorithm>
#include <set>

#include "r3/audit.hpp"
#include "r3/entity_linking.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/responses.hpp"
#include "r3/retrieval.hpp"
#include "r3/text.hpp"

namespace r3 {

std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::False: return "False";
    case Truth::Unknown: return "Unknown";
    case Truth::True: return "True";
  }
  return "Unknown";
}

std::optional<Truth> truth_from_string(std::string_view s) {
  if (s == "True") return Truth::True;
  if (s == "False") return Truth::False;
  if (s == "Unknown") return Truth::Unknown;
  return std::nullopt;
}

std::string_view to_string(GroundingStatus s) {
  switch (s) {
    case GroundingStatus::Satisfied: return "Satisfied";
    case GroundingStatus::Violated: return "Violated";
    case GroundingStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(GroundingMethod m) {
  return m == GroundingMethod::Symbolic ? "symbolic" : "llm_judge";
}

std::optional<GroundingStatus> grounding_status_from_string(std::string_view s) {
  if (s == "Satisfied") return GroundingStatus::Satisfied;
  if (s == "Violated") return GroundingStatus::Violated;
  if (s == "Unknown") return GroundingStatus::Unknown;
  return std::nullopt;
}

Truth status_truth(GroundingStatus s) {
  switch (s) {
    case GroundingStatus::Satisfied: return Truth::True;
    case GroundingStatus::Violated: return Truth::False;
    case GroundingStatus::Unknown: return Truth::Unknown;
  }
  return Truth::Unknown;
}

std::optional<EntityId> resolve_subject(const KnowledgeGraph& kg, std::string_view subject,
                                        const AnchorEntitySet* anchors) {
  if (kg.has_entity(subject)) return EntityId(subject);
  auto ids = resolve_name(kg, subject);
  if (ids.empty()) return std::nullopt;
  if (anchors != nullptr) {
    for (const auto& id : ids) {
      if (anchors->contains(id)) return id;
    }
  }
  return ids.front();
}

namespace {

bool apply_order(std::strong_ordering cmp, CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return cmp == 0;
    case CompareOp::Ne: return cmp != 0;
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Le: return cmp <= 0;
    case CompareOp::Gt: return cmp > 0;
    case CompareOp::Ge: return cmp >= 0;
  }
  return false;
}

bool same_value(const KnowledgeGraph& kg, const TailValue& tail, const Literal& lit) {
  if (lit.kind == Literal::Kind::EntityRef && tail.is_entity() && tail.raw == lit.text) return true;
  const std::string want =
      lit.kind == Literal::Kind::String ? normalize(lit.text) : normalize_name(lit.text);
  if (normalize(tail.raw) == want) return true;
  if (tail.is_entity() && normalize(kg.label_of(tail.raw)) == want) return true;
  return false;
}

// nullopt: the comparison is undefined for this pair (ordering on text).
std::optional<bool> compare_tail(const KnowledgeGraph& kg, const TailValue& tail, CompareOp op,
                                 const Literal& lit) {
  if (lit.kind == Literal::Kind::Number && tail.number && lit.number) {
    return apply_order(*tail.number <=> *lit.number, op);
  }
  if (op == CompareOp::Eq) return same_value(kg, tail, lit);
  if (op == CompareOp::Ne) return !same_value(kg, tail, lit);
  return std::nullopt;
}

}  // namespace

std::optional<PremiseGrounding> ground_premise_symbolic(const KnowledgeGraph& kg, const Premise& premise,
                                                        const EntityId& subject,
                                                        std::span<const TripleId> triples) {
  const std::string relation = normalize_name(premise.name);
  std::vector<TripleId> matching;
  for (TripleId id : triples) {
    const Triple& t = kg.triple(id);
    if (t.head == subject && normalize_name(t.relation) == relation) matching.push_back(id);
  }
  std::sort(matching.begin(), matching.end());
  matching.erase(std::unique(matching.begin(), matching.end()), matching.end());
  if (matching.empty()) return std::nullopt;

  PremiseGrounding g;
  g.premise = premise;
  g.method = GroundingMethod::Symbolic;
  g.subject = subject;

  if (premise.kind == Premise::Kind::Predicate) {
    g.status = GroundingStatus::Satisfied;
    g.evidence = std::move(matching);
    return g;
  }
  if (!premise.op || !premise.comparand) throw ContractError("function premise without operator");

  std::vector<TripleId> holds;
  std::vector<TripleId> fails;
  bool undefined = false;
  for (TripleId id : matching) {
    auto r = compare_tail(kg, kg.triple(id).tail, *premise.op, *premise.comparand);
    if (!r) {
      undefined = true;
    } else if (*r) {
      holds.push_back(id);
    } else {
      fails.push_back(id);
    }
  }
  // F(e) != v reads as "v is not among the values of F(e)": one equal value
  // violates it and it holds only when every value differs.
  if (*premise.op == CompareOp::Ne) {
    if (!fails.empty()) {
      g.status = GroundingStatus::Violated;
      g.evidence = std::move(fails);
      return g;
    }
    if (!undefined) {
      g.status = GroundingStatus::Satisfied;
      g.evidence = std::move(holds);
      return g;
    }
    return std::nullopt;
  }
  if (!holds.empty()) {
    g.status = GroundingStatus::Satisfied;
    g.evidence = std::move(holds);
    return g;
  }
  if (!undefined) {
    g.status = GroundingStatus::Violated;
    g.evidence = std::move(fails);
    return g;
  }
  return std::nullopt;
}

PremiseGrounding ground_premise_judge(LlmBackend& backend, const PromptLibrary& prompts,
                                      const KnowledgeGraph& kg, const Premise& premise,
                                      const std::optional<EntityId>& subject, const Axiom* axiom,
                                      std::span<const TripleId> triples, AuditLog& audit) {
  PremiseGrounding g;
  g.premise = premise;
  g.method = GroundingMethod::LlmJudge;
  g.subject = subject;

  std::vector<TripleId> shown(triples.begin(), triples.end());
  std::sort(shown.begin(), shown.end());
  shown.erase(std::unique(shown.begin(), shown.end()), shown.end());
  if (shown.empty()) return g;

  PromptContext ctx;
  std::string premise_text = serialize_premise(premise);
  if (subject && kg.label_of(*subject) != premise.subject) {
    premise_text += "   [" + premise.subject + " = " + kg.label_of(*subject) + "]";
  }
  ctx.premise = premise_text;
  if (axiom != nullptr) ctx.axiom = serialize_axiom(*axiom);
  std::vector<std::string> lines;
  for (TripleId id : shown) lines.push_back(verbalize(kg, id));
  ctx.triples = std::move(lines);

  std::string response = backend.complete({LlmRole::Judge, prompts.render(LlmRole::Judge, ctx), 0.0});
  auto parsed = parse_judge_response(response);
  if (!parsed) {
    audit.record(AuditKind::ParseFailure, "judge response for " + serialize_premise(premise) + " is unparseable");
    return g;
  }
  if (parsed->verdict == JudgeVerdict::Unknown) return g;

  std::set<TripleId> cited;
  std::vector<long long> invalid;
  for (long long index : parsed->evidence) {
    if (index < 1 || index > static_cast<long long>(shown.size())) {
      invalid.push_back(index);
    } else {
      cited.insert(shown[static_cast<std::size_t>(index - 1)]);
    }
  }
  if (!invalid.empty() || cited.empty()) {
    std::string detail = serialize_premise(premise) + ": ";
    if (invalid.empty()) {
      detail += "verdict without evidence";
    } else {
      detail += "evidence index out of range 1.." + std::to_string(shown.size()) + ":";
      for (auto i : invalid) detail += " " + std::to_string(i);
    }
    if (cited.empty()) detail += "; demoted to Unknown";
    audit.record(AuditKind::RejectedCitation, detail);
  }
  if (cited.empty()) return g;

  g.status = parsed->verdict == JudgeVerdict::Satisfied ? GroundingStatus::Satisfied : GroundingStatus::Violated;
  g.evidence.assign(cited.begin(), cited.end());
  return g;
}

PremiseGrounding ground_premise(const KnowledgeGraph& kg, LlmBackend& backend, const PromptLibrary& prompts,
                                const Premise& premise, std::span<const TripleId> triples,
                                const AnchorEntitySet* anchors, const Axiom* axiom, AuditLog& audit) {
  auto subject = resolve_subject(kg, premise.subject, anchors);
  if (subject) {
    if (auto g = ground_premise_symbolic(kg, premise, *subject, triples)) return *std::move(g);
  }
  return ground_premise_judge(backend, prompts, kg, premise, subject, axiom, triples, audit);
}

Truth evaluate_statuses(const std::vector<std::vector<GroundingStatus>>& clauses) {
  Truth result = Truth::False;
  for (const auto& clause : clauses) {
    if (clause.empty()) throw ContractError("empty clause");
    Truth value = Truth::True;
    for (GroundingStatus s : clause) value = kleene_and(value, status_truth(s));
    result = kleene_or(result, value);
  }
  if (clauses.empty()) throw ContractError("axiom without clauses");
  return result;
}

Truth evaluate_axiom(const Axiom& axiom, const AxiomGroundings& groundings) {
  if (groundings.size() != axiom.clauses.size()) {
    throw ContractError("evaluate_axiom: grounding missing for a clause");
  }
  std::vector<std::vector<GroundingStatus>> statuses;
  for (std::size_t c = 0; c < axiom.clauses.size(); ++c) {
    if (groundings[c].size() != axiom.clauses[c].size()) {
      throw ContractError("evaluate_axiom: grounding missing for a premise in clause " + std::to_string(c));
    }
    auto& row = statuses.emplace_back();
    for (std::size_t p = 0; p < axiom.clauses[c].size(); ++p) {
      if (!(groundings[c][p].premise == axiom.clauses[c][p])) {
        throw ContractError("evaluate_axiom: grounding does not belong to premise " +
                            serialize_premise(axiom.clauses[c][p]));
      }
      row.push_back(groundings[c][p].status);
    }
  }
  return evaluate_statuses(statuses);
}

}  // namespace r3
