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

#include "r3/entity_linking.hpp"

#include <algorithm>
#include <unordered_map>

#include "r3/audit.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/responses.hpp"
#include "r3/text.hpp"

namespace r3 {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::QaYesNo: return "qa_yes_no";
    case TaskKind::Claim: return "claim";
    case TaskKind::MultipleChoice: return "multiple_choice";
  }
  return "unknown";
}

std::string_view to_string(AnchorProvenance p) {
  switch (p) {
    case AnchorProvenance::Lexical: return "lexical";
    case AnchorProvenance::Llm: return "llm";
    case AnchorProvenance::Mei: return "mei";
  }
  return "unknown";
}

void validate(const Query& query) {
  if (trim(query.text).empty()) throw ContractError("query text is empty");
  bool mc = query.task == TaskKind::MultipleChoice;
  if (mc != !query.options.empty()) {
    throw ContractError("multiple_choice queries need options and only they may have them");
  }
}

bool AnchorEntitySet::add(const EntityId& id, AnchorProvenance provenance) {
  if (contains(id)) return false;
  entries_.push_back({id, provenance});
  return true;
}

bool AnchorEntitySet::contains(std::string_view id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const AnchorEntity& e) { return e.id == id; });
}

std::vector<EntityId> AnchorEntitySet::ids() const {
  std::vector<EntityId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

namespace {

bool boundary_before(std::string_view s, std::size_t pos) {
  return pos == 0 || !is_word_byte(s[pos - 1]);
}
bool boundary_after(std::string_view s, std::size_t end) {
  return end >= s.size() || !is_word_byte(s[end]);
}

}  // namespace

std::vector<LexicalMatch> lexical_matches(const KnowledgeGraph& kg, std::string_view query_text) {
  const std::string text = normalize(query_text);
  const auto& gazetteer = kg.surfaces_by_first_word();
  std::vector<LexicalMatch> out;

  std::size_t i = 0;
  while (i < text.size()) {
    // Advance to the start of the next word.
    while (i < text.size() && !is_word_byte(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t word_end = i;
    while (word_end < text.size() && is_word_byte(text[word_end])) ++word_end;
    std::string_view word(text.data() + i, word_end - i);

    std::string_view best;
    if (auto it = gazetteer.find(std::string(word)); it != gazetteer.end()) {
      for (std::string_view form : it->second) {
        if (text.compare(i, form.size(), form) == 0 && boundary_before(text, i) &&
            boundary_after(text, i + form.size())) {
          best = form;
          break;
        }
      }
    }
    if (!best.empty()) {
      out.push_back({std::string(best), i, kg.surface_index().at(std::string(best))});
      i += best.size();
    } else {
      i = word_end;
    }
  }
  return out;
}

std::vector<EntityId> link_lexical(const KnowledgeGraph& kg, std::string_view query_text) {
  std::vector<EntityId> ids;
  for (const auto& m : lexical_matches(kg, query_text)) {
    for (const auto& id : m.ids) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  return ids;
}

std::vector<std::string> extract_entities_llm(LlmBackend& backend, const PromptLibrary& prompts,
                                              std::string_view query_text, AuditLog& audit) {
  PromptContext ctx;
  ctx.query = std::string(query_text);
  std::string response =
      backend.complete({LlmRole::EntityExtract, prompts.render(LlmRole::EntityExtract, ctx), 0.0});
  auto names = parse_entities_response(response);
  if (!names) {
    audit.record(AuditKind::ParseFailure, "entity_extract response lacks an ENTITIES line");
    return {};
  }
  return *names;
}

std::vector<EntityId> resolve_name(const KnowledgeGraph& kg, std::string_view name) {
  auto ids = kg.resolve_label(name);
  if (!ids.empty()) return ids;
  if (name.find('_') != std::string_view::npos) {
    ids = kg.resolve_label(normalize_name(name));
    if (!ids.empty()) return ids;
  }
  if (kg.has_entity(name)) return {EntityId(name)};
  return {};
}

LinkingResult anchor_entities(const KnowledgeGraph& kg, LlmBackend& backend, const PromptLibrary& prompts,
                              std::string_view query_text, AuditLog& audit) {
  LinkingResult result;
  result.lexical = lexical_matches(kg, query_text);
  for (const auto& m : result.lexical) {
    if (m.ids.size() > 1) {
      audit.record(AuditKind::AmbiguousName, "'" + m.surface + "' matches " + std::to_string(m.ids.size()) +
                                                 " entities; all kept");
    }
    for (const auto& id : m.ids) result.anchors.add(id, AnchorProvenance::Lexical);
  }

  result.llm_names = extract_entities_llm(backend, prompts, query_text, audit);
  for (const auto& name : result.llm_names) {
    auto ids = resolve_name(kg, name);
    if (ids.empty()) {
      audit.record(AuditKind::UnresolvedName, "entity name '" + name + "' not in KG");
      result.unresolved.push_back(name);
      continue;
    }
    if (ids.size() > 1) {
      audit.record(AuditKind::AmbiguousName,
                   "'" + name + "' matches " + std::to_string(ids.size()) + " entities; all kept");
    }
    for (const auto& id : ids) result.anchors.add(id, AnchorProvenance::Llm);
    result.resolved.push_back({name, std::move(ids)});
  }
  if (result.anchors.empty()) audit.record(AuditKind::EmptyAnchorSet, "no anchor entities for query");
  return result;
}

}  // namespace r3
