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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "r3/axiom.hpp"
#include "r3/kleene.hpp"
#include "r3/knowledge_graph.hpp"

namespace r3 {

class AuditLog;
class AnchorEntitySet;
class LlmBackend;
class PromptLibrary;

enum class GroundingStatus { Satisfied, Violated, Unknown };
enum class GroundingMethod { Symbolic, LlmJudge };

std::string_view to_string(GroundingStatus s);
std::string_view to_string(GroundingMethod m);
std::optional<GroundingStatus> grounding_status_from_string(std::string_view s);

// Invariant: status != Unknown <=> evidence non-empty, and evidence is a
// subset of the triples the premise was grounded against.
struct PremiseGrounding {
  Premise premise;
  GroundingStatus status = GroundingStatus::Unknown;
  std::vector<TripleId> evidence;  // ascending
  GroundingMethod method = GroundingMethod::LlmJudge;
  std::optional<EntityId> subject;  // resolved subject, if any
};

// Latest grounding per premise, shaped like Axiom::clauses.
using AxiomGroundings = std::vector<std::vector<PremiseGrounding>>;

// Entity a premise subject refers to: a KG id as written, else a label or
// alias match (underscores read as spaces). Among several matches an anchor
// wins, then the first registered.
std::optional<EntityId> resolve_subject(const KnowledgeGraph& kg, std::string_view subject,
                                        const AnchorEntitySet* anchors = nullptr);

// Deterministic fast path. Applies when a presented triple has head ==
// subject and a relation equal to the premise name after normalization.
// Multi-valued relations: "=" and the order operators hold if some value
// satisfies them, "!=" holds only if no value equals the comparand.
// nullopt means "not applicable": the judge must decide.
std::optional<PremiseGrounding> ground_premise_symbolic(const KnowledgeGraph& kg, const Premise& premise,
                                                        const EntityId& subject,
                                                        std::span<const TripleId> triples);

// Asks the backend (role judge) over the presented triples, numbered 1..n in
// ascending id order. Citations are validated here: non-Unknown verdicts
// without a valid index are demoted to Unknown. An empty presentation is
// Unknown without a backend call.
PremiseGrounding ground_premise_judge(LlmBackend& backend, const PromptLibrary& prompts,
                                      const KnowledgeGraph& kg, const Premise& premise,
                                      const std::optional<EntityId>& subject, const Axiom* axiom,
                                      std::span<const TripleId> triples, AuditLog& audit);

// Symbolic path when it applies, judge otherwise.
PremiseGrounding ground_premise(const KnowledgeGraph& kg, LlmBackend& backend, const PromptLibrary& prompts,
                                const Premise& premise, std::span<const TripleId> triples,
                                const AnchorEntitySet* anchors, const Axiom* axiom, AuditLog& audit);

Truth status_truth(GroundingStatus s);

// Kleene fold: clause = AND of premise statuses, axiom = OR of clauses.
// Throws ContractError unless `groundings` matches the axiom premise by
// premise.
Truth evaluate_axiom(const Axiom& axiom, const AxiomGroundings& groundings);

// Same fold over bare statuses.
Truth evaluate_statuses(const std::vector<std::vector<GroundingStatus>>& clauses);

}  // namespace r3
