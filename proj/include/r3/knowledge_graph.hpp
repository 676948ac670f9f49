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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "r3/decimal.hpp"

namespace r3 {

using EntityId = std::string;
using TripleId = std::size_t;

// Tail of a triple, typed once at load time. A token is a number iff it
// parses as a Decimal, otherwise text; text is an entity iff the KG knows
// the token as an entity id.
struct TailValue {
  enum class Kind { Entity, Text, Number };
  Kind kind = Kind::Text;
  std::string raw;
  std::optional<Decimal> number;  // set iff kind == Number

  bool is_entity() const { return kind == Kind::Entity; }
};

struct Triple {
  TripleId id = 0;
  EntityId head;
  std::string relation;
  TailValue tail;
};

struct RawTriple {
  std::string head;
  std::string relation;
  std::string tail;
  bool operator==(const RawTriple&) const = default;
};

struct LabelEntry {
  EntityId id;
  std::string label;
};

// One-hop neighbourhood of an anchor set: every triple whose head is an
// anchor. Both vectors are sorted and duplicate free.
struct Subgraph {
  std::vector<TripleId> triple_ids;
  std::vector<EntityId> anchor_set;
};

// Triple store with label/alias resolution. Immutable once built and safe to
// share between concurrent queries.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Triples get ids in argument order. Labels follow the labels-file rule:
  // first label seen for an id is primary, later ones are aliases. Heads
  // without a label use their own id as label.
  static KnowledgeGraph build(std::vector<RawTriple> triples, std::vector<LabelEntry> labels);

  // Copy of this graph with extra triples appended (ids continue after the
  // existing ones) and extra labels added.
  KnowledgeGraph merged_with(const std::vector<RawTriple>& extra_triples,
                             const std::vector<LabelEntry>& extra_labels) const;

  std::size_t size() const { return triples_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }
  const Triple& triple(TripleId id) const { return triples_.at(id); }
  bool contains(TripleId id) const { return id < triples_.size(); }

  bool has_entity(std::string_view id) const;
  // Primary label, or the id itself when the entity has none.
  std::string label_of(std::string_view id) const;
  // Tail rendered for humans: entity label, or the literal text.
  std::string tail_display(const Triple& t) const;

  // Entities whose primary label or any alias equals normalize(surface).
  // Result is in first-registration order, no duplicates.
  std::vector<EntityId> resolve_label(std::string_view surface) const;

  const std::vector<TripleId>& head_triples(std::string_view id) const;

  // Normalized surface form -> entities; used by the gazetteer linker.
  const std::unordered_map<std::string, std::vector<EntityId>>& surface_index() const {
    return surface_index_;
  }
  // Surface forms keyed by their first word token, longest form first.
  const std::unordered_map<std::string, std::vector<std::string>>& surfaces_by_first_word() const {
    return first_word_index_;
  }

  const std::vector<RawTriple>& raw_triples() const { return raw_; }
  const std::vector<LabelEntry>& label_entries() const { return label_entries_; }

  void write_triples_tsv(std::ostream& out) const;
  void write_labels_tsv(std::ostream& out) const;

 private:
  void add_label(const EntityId& id, const std::string& label);
  void index_triples();
  void index_surfaces();

  std::vector<Triple> triples_;
  std::vector<RawTriple> raw_;
  std::vector<LabelEntry> label_entries_;
  std::unordered_map<EntityId, std::string> labels_;
  std::unordered_map<std::string, std::vector<EntityId>> surface_index_;
  std::unordered_map<std::string, std::vector<std::string>> first_word_index_;
  std::unordered_map<EntityId, std::vector<TripleId>> head_index_;
};

// Parses triples TSV (head TAB relation TAB tail) and optional labels TSV
// (id TAB label). Throws ParseError naming the 1-based line on a wrong
// column count.
KnowledgeGraph load_kg(const std::filesystem::path& triples_file,
                       const std::optional<std::filesystem::path>& labels_file = std::nullopt);

std::vector<RawTriple> parse_triples_tsv(std::istream& in, std::string_view source = "triples");
std::vector<LabelEntry> parse_labels_tsv(std::istream& in, std::string_view source = "labels");

// { t in kg | t.head in anchors }
Subgraph one_hop_subgraph(const KnowledgeGraph& kg, const std::vector<EntityId>& anchors);

inline std::vector<EntityId> resolve_label(const KnowledgeGraph& kg, std::string_view surface) {
  return kg.resolve_label(surface);
}

}  // namespace r3
