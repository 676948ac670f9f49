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

#include <string>
#include <string_view>
#include <vector>

#include "r3/knowledge_graph.hpp"

namespace r3 {

class AuditLog;
class LlmBackend;
class PromptLibrary;

enum class TaskKind { QaYesNo, Claim, MultipleChoice };

std::string_view to_string(TaskKind task);

struct Query {
  std::string text;
  std::vector<std::string> options;  // non-empty iff task == MultipleChoice
  TaskKind task = TaskKind::QaYesNo;
};

// Throws ContractError if text is empty or task and options disagree.
void validate(const Query& query);

enum class AnchorProvenance { Lexical, Llm, Mei };

std::string_view to_string(AnchorProvenance p);

struct AnchorEntity {
  EntityId id;
  AnchorProvenance provenance;
  bool operator==(const AnchorEntity&) const = default;
};

// Ordered, duplicate-free anchor entities.
class AnchorEntitySet {
 public:
  // False (and no change) if the id is already present.
  bool add(const EntityId& id, AnchorProvenance provenance);
  bool contains(std::string_view id) const;
  const std::vector<AnchorEntity>& entries() const { return entries_; }
  std::vector<EntityId> ids() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<AnchorEntity> entries_;
};

struct LexicalMatch {
  std::string surface;  // normalized text matched in the query
  std::size_t offset;   // byte offset in the normalized query
  std::vector<EntityId> ids;
};

// Greedy longest-match gazetteer scan of the normalized query against KG
// labels and aliases. Matches start and end on word boundaries; a shorter
// label nested inside a chosen match is suppressed.
std::vector<LexicalMatch> lexical_matches(const KnowledgeGraph& kg, std::string_view query_text);

// Ids of lexical_matches in query order, duplicates removed.
std::vector<EntityId> link_lexical(const KnowledgeGraph& kg, std::string_view query_text);

// Names listed on the ENTITIES line of an entity_extract response. A response
// without that line yields {} and a ParseFailure event.
std::vector<std::string> extract_entities_llm(LlmBackend& backend, const PromptLibrary& prompts,
                                              std::string_view query_text, AuditLog& audit);

struct NameResolution {
  std::string name;
  std::vector<EntityId> ids;
};

struct LinkingResult {
  AnchorEntitySet anchors;
  std::vector<LexicalMatch> lexical;
  std::vector<std::string> llm_names;
  std::vector<NameResolution> resolved;  // LLM names that hit the KG
  std::vector<std::string> unresolved;   // LLM names that did not
};

// Union of the lexical linker and the LLM extractor: lexical hits first in
// query order, then newly resolved LLM names. Unresolvable names are dropped
// and audited.
LinkingResult anchor_entities(const KnowledgeGraph& kg, LlmBackend& backend, const PromptLibrary& prompts,
                              std::string_view query_text, AuditLog& audit);

// Resolution used for LLM-produced names: the surface as written, then with
// underscores read as spaces, then as a literal entity id.
std::vector<EntityId> resolve_name(const KnowledgeGraph& kg, std::string_view name);

}  // namespace r3
