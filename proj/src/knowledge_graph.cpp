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

#include "r3/knowledge_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "r3/errors.hpp"
#include "r3/text.hpp"

namespace r3 {

namespace {

std::vector<std::string> tsv_fields(const std::string& line) { return split(line, '\t'); }

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <typename T>
void push_unique(std::vector<T>& v, const T& value) {
  if (std::find(v.begin(), v.end(), value) == v.end()) v.push_back(value);
}

}  // namespace

std::vector<RawTriple> parse_triples_tsv(std::istream& in, std::string_view source) {
  std::vector<RawTriple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 3) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": expected 3 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0].empty()) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": empty head id", line_no);
    }
    out.push_back({std::move(fields[0]), std::move(fields[1]), std::move(fields[2])});
  }
  return out;
}

std::vector<LabelEntry> parse_labels_tsv(std::istream& in, std::string_view source) {
  std::vector<LabelEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto fields = tsv_fields(line);
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    out.push_back({std::move(fields[0]), std::move(fields[1])});
  }
  return out;
}

KnowledgeGraph KnowledgeGraph::build(std::vector<RawTriple> triples, std::vector<LabelEntry> labels) {
  KnowledgeGraph kg;
  for (const auto& entry : labels) kg.add_label(entry.id, entry.label);
  kg.label_entries_ = std::move(labels);
  kg.raw_ = std::move(triples);
  kg.index_triples();
  kg.index_surfaces();
  return kg;
}

KnowledgeGraph KnowledgeGraph::merged_with(const std::vector<RawTriple>& extra_triples,
                                           const std::vector<LabelEntry>& extra_labels) const {
  // Rebuild rather than patch: tail typing of existing triples may change
  // when the extra labels introduce new entity ids.
  std::vector<RawTriple> all = raw_;
  all.insert(all.end(), extra_triples.begin(), extra_triples.end());
  std::vector<LabelEntry> labels = label_entries_;
  labels.insert(labels.end(), extra_labels.begin(), extra_labels.end());
  return build(std::move(all), std::move(labels));
}

void KnowledgeGraph::add_label(const EntityId& id, const std::string& label) {
  auto [it, inserted] = labels_.emplace(id, label);
  (void)it;
  (void)inserted;
  push_unique(surface_index_[normalize(label)], id);
}

void KnowledgeGraph::index_surfaces() {
  for (const auto& [surface, ids] : surface_index_) {
    auto words = word_tokens(surface);
    if (words.empty()) continue;
    first_word_index_[std::string(words.front())].push_back(surface);
  }
  for (auto& [first, forms] : first_word_index_) {
    std::sort(forms.begin(), forms.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
  }
}

void KnowledgeGraph::index_triples() {
  // Heads without a labels-file entry label themselves.
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    const auto& head = raw_[i].head;
    if (!labels_.contains(head)) add_label(head, head);
  }
  triples_.reserve(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    const RawTriple& raw = raw_[i];
    Triple t;
    t.id = i;
    t.head = raw.head;
    t.relation = raw.relation;
    t.tail.raw = raw.tail;
    if (auto number = Decimal::parse(raw.tail)) {
      t.tail.kind = TailValue::Kind::Number;
      t.tail.number = std::move(number);
    } else if (labels_.contains(raw.tail)) {
      t.tail.kind = TailValue::Kind::Entity;
    } else {
      t.tail.kind = TailValue::Kind::Text;
    }
    head_index_[t.head].push_back(t.id);
    triples_.push_back(std::move(t));
  }
}

bool KnowledgeGraph::has_entity(std::string_view id) const {
  return labels_.contains(std::string(id));
}

std::string KnowledgeGraph::label_of(std::string_view id) const {
  auto it = labels_.find(std::string(id));
  return it == labels_.end() ? std::string(id) : it->second;
}

std::string KnowledgeGraph::tail_display(const Triple& t) const {
  return t.tail.is_entity() ? label_of(t.tail.raw) : t.tail.raw;
}

std::vector<EntityId> KnowledgeGraph::resolve_label(std::string_view surface) const {
  auto it = surface_index_.find(normalize(surface));
  if (it == surface_index_.end()) return {};
  return it->second;
}

const std::vector<TripleId>& KnowledgeGraph::head_triples(std::string_view id) const {
  static const std::vector<TripleId> kEmpty;
  auto it = head_index_.find(std::string(id));
  return it == head_index_.end() ? kEmpty : it->second;
}

void KnowledgeGraph::write_triples_tsv(std::ostream& out) const {
  for (const auto& t : raw_) out << t.head << '\t' << t.relation << '\t' << t.tail << '\n';
}

void KnowledgeGraph::write_labels_tsv(std::ostream& out) const {
  for (const auto& e : label_entries_) out << e.id << '\t' << e.label << '\n';
}

KnowledgeGraph load_kg(const std::filesystem::path& triples_file,
                       const std::optional<std::filesystem::path>& labels_file) {
  std::ifstream triples_in(triples_file);
  if (!triples_in) throw Error("cannot open triples file: " + triples_file.string());
  auto triples = parse_triples_tsv(triples_in, triples_file.string());

  std::vector<LabelEntry> labels;
  if (labels_file) {
    std::ifstream labels_in(*labels_file);
    if (!labels_in) throw Error("cannot open labels file: " + labels_file->string());
    labels = parse_labels_tsv(labels_in, labels_file->string());
  }
  return KnowledgeGraph::build(std::move(triples), std::move(labels));
}

Subgraph one_hop_subgraph(const KnowledgeGraph& kg, const std::vector<EntityId>& anchors) {
  Subgraph sg;
  sg.anchor_set = anchors;
  std::sort(sg.anchor_set.begin(), sg.anchor_set.end());
  sg.anchor_set.erase(std::unique(sg.anchor_set.begin(), sg.anchor_set.end()), sg.anchor_set.end());
  for (const auto& anchor : sg.anchor_set) {
    const auto& ids = kg.head_triples(anchor);
    sg.triple_ids.insert(sg.triple_ids.end(), ids.begin(), ids.end());
  }
  std::sort(sg.triple_ids.begin(), sg.triple_ids.end());
  return sg;
}

}  // namespace r3
