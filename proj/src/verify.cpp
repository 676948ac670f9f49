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

#include "r3/verify.hpp"

#include <map>
#include <set>
#include <tuple>

#include "r3/errors.hpp"

namespace r3 {

namespace {

// Truth ranks: False < Unknown < True, so AND is min and OR is max.
int rank_of(const std::string& value) {
  if (value == "False" || value == "Violated") return 0;
  if (value == "Unknown") return 1;
  if (value == "True" || value == "Satisfied") return 2;
  return -1;
}

const char* truth_name(int rank) { return rank == 0 ? "False" : rank == 1 ? "Unknown" : "True"; }

const Json& field(const TraceStep& step, const char* key) {
  if (!step.payload.contains(key)) {
    throw TraceSchemaError("step " + std::to_string(step.seq) + " (" + std::string(to_string(step.kind)) +
                           ") lacks '" + key + "'");
  }
  return step.payload.at(key);
}

std::string string_field(const TraceStep& step, const char* key) {
  const Json& v = field(step, key);
  if (!v.is_string()) throw TraceSchemaError("step " + std::to_string(step.seq) + ": '" + key + "' is not a string");
  return v.get<std::string>();
}

std::uint64_t uint_field(const Json& v, const TraceStep& step, const char* key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw TraceSchemaError("step " + std::to_string(step.seq) + ": '" + key + "' is not a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t uint_field(const TraceStep& step, const char* key) { return uint_field(field(step, key), step, key); }

const Json& array_field(const TraceStep& step, const char* key) {
  const Json& v = field(step, key);
  if (!v.is_array()) throw TraceSchemaError("step " + std::to_string(step.seq) + ": '" + key + "' is not an array");
  return v;
}

int config_int(const ReasoningTrace& trace, const char* key) {
  if (!trace.config.contains(key) || !trace.config.at(key).is_number_integer()) {
    throw TraceSchemaError(std::string("trace config lacks integer '") + key + "'");
  }
  return trace.config.at(key).get<int>();
}

using BranchKey = std::pair<int, int>;  // (option or -1, branch)

BranchKey branch_key(const TraceStep& step) {
  return {step.scope.option.value_or(-1), step.scope.branch.value_or(-1)};
}

struct Surfacing {
  BranchKey branch;
  std::vector<std::vector<std::string>> clauses;
};

struct Grounding {
  BranchKey branch;
  std::uint64_t axiom_seq;
  std::size_t clause;
  std::size_t premise;
  std::string status;
};

struct Evaluation {
  std::uint64_t seq;
  std::optional<int> option;
  std::string value;
};

class Verifier {
 public:
  Verifier(const KnowledgeGraph& kg, const ReasoningTrace& trace) : trace_(trace) {
    const KnowledgeGraph* effective = &kg;
    if (trace.kg.contains("base_size")) {
      const Json& extra_triples = trace.kg.value("extra_triples", Json::array());
      const Json& extra_labels = trace.kg.value("extra_labels", Json::array());
      const std::size_t base = trace.kg.at("base_size").get<std::size_t>();
      if (kg.size() == base && !extra_triples.empty()) {
        std::vector<RawTriple> triples;
        for (const auto& t : extra_triples) {
          if (!t.is_array() || t.size() != 3) throw TraceSchemaError("kg.extra_triples entry is not a triple");
          triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
        }
        std::vector<LabelEntry> labels;
        for (const auto& l : extra_labels) {
          if (!l.is_array() || l.size() != 2) throw TraceSchemaError("kg.extra_labels entry is not a pair");
          labels.push_back({l[0].get<std::string>(), l[1].get<std::string>()});
        }
        merged_ = kg.merged_with(triples, labels);
        effective = &merged_;
      } else if (kg.size() != base + extra_triples.size()) {
        add(0, "V1", "KG has " + std::to_string(kg.size()) + " triples; trace expects " + std::to_string(base) +
                         " plus " + std::to_string(extra_triples.size()) + " extra");
      }
    }
    kg_ = effective;
  }

  VerificationReport run() {
    max_depth_ = config_int(trace_, "max_depth");
    max_breadth_ = config_int(trace_, "max_breadth");
    if (max_depth_ <= 0 || max_breadth_ <= 0) add(0, "V5", "non-positive budget in trace header");

    std::optional<std::uint64_t> last_seq;
    for (const TraceStep& step : trace_.steps()) {
      ++report_.steps_checked;
      if (last_seq && step.seq <= *last_seq) add(step.seq, "V5", "seq not strictly increasing");
      last_seq = step.seq;
      check_bounds(step);
      switch (step.kind) {
        case StepKind::AxiomSurfacing: on_surfacing(step); break;
        case StepKind::Pruning: on_pruning(step); break;
        case StepKind::PremiseGrounding: on_grounding(step); break;
        case StepKind::Evaluation: on_evaluation(step); break;
        case StepKind::Expansion: on_expansion(step); break;
        case StepKind::OptionResult: option_results_.push_back(step); break;
        case StepKind::FinalAnswer: finals_.push_back(step); break;
        default: break;
      }
    }
    if (!trace_.baseline) {
      check_unreferenced();
      check_answer();
    }
    report_.grounding_precision =
        report_.citations == 0 ? 1.0
                               : static_cast<double>(report_.valid_citations) / static_cast<double>(report_.citations);
    report_.ok = report_.violations.empty();
    return report_;
  }

 private:
  void add(std::uint64_t seq, const char* rule, std::string detail) {
    report_.violations.push_back({seq, rule, std::move(detail)});
  }

  bool checks_logic() const { return !trace_.baseline; }

  void check_bounds(const TraceStep& step) {
    if (step.scope.depth && (*step.scope.depth < 0 || *step.scope.depth > max_depth_)) {
      add(step.seq, "V5", "depth " + std::to_string(*step.scope.depth) + " outside 0.." + std::to_string(max_depth_));
    }
    if (step.scope.branch && (*step.scope.branch < 0 || *step.scope.branch >= max_breadth_)) {
      add(step.seq, "V5",
          "branch " + std::to_string(*step.scope.branch) + " outside 0.." + std::to_string(max_breadth_ - 1));
    }
  }

  void on_surfacing(const TraceStep& step) {
    const int option = step.scope.option.value_or(-1);
    if (++surfacings_per_option_[option] > max_breadth_) add(step.seq, "V5", "more axioms surfaced than max_breadth");
    Surfacing s{branch_key(step), {}};
    for (const Json& clause : array_field(step, "clauses")) {
      if (!clause.is_array()) throw TraceSchemaError("step " + std::to_string(step.seq) + ": clause is not an array");
      auto& premises = s.clauses.emplace_back();
      for (const Json& p : clause) {
        if (!p.is_string()) throw TraceSchemaError("step " + std::to_string(step.seq) + ": premise is not a string");
        premises.push_back(p.get<std::string>());
      }
    }
    surfacings_[step.seq] = std::move(s);
  }

  void on_pruning(const TraceStep& step) {
    auto& shown = presented_[branch_key(step)];
    for (const Json& id : array_field(step, "added")) shown.insert(uint_field(id, step, "added"));
  }

  void on_expansion(const TraceStep& step) {
    if (++expansions_[branch_key(step)] > max_depth_) add(step.seq, "V5", "more expansions than max_depth");
  }

  void on_grounding(const TraceStep& step) {
    const std::string status = string_field(step, "status");
    const int status_rank = rank_of(status);
    if (status_rank < 0 || status == "True" || status == "False") {
      throw TraceSchemaError("step " + std::to_string(step.seq) + ": bad grounding status '" + status + "'");
    }
    const Json& evidence = array_field(step, "evidence");
    const auto& shown = presented_[branch_key(step)];
    for (const Json& cite : evidence) {
      if (!cite.is_object() || !cite.contains("id")) throw TraceSchemaError("evidence entry lacks 'id'");
      ++report_.citations;
      const std::uint64_t id = uint_field(cite.at("id"), step, "id");
      if (!kg_->contains(id)) {
        add(step.seq, "V1", "cited triple " + std::to_string(id) + " is not in the KG");
        continue;
      }
      ++report_.valid_citations;
      const Triple& t = kg_->triple(id);
      if (cite.value("head", "") != t.head || cite.value("relation", "") != t.relation ||
          cite.value("tail", "") != t.tail.raw) {
        add(step.seq, "V1", "cited content differs from KG triple " + std::to_string(id));
      }
      if (!shown.count(id)) add(step.seq, "V1", "triple " + std::to_string(id) + " was never presented to this branch");
    }
    if (status == "Unknown" && !evidence.empty()) add(step.seq, "V1", "Unknown grounding carries evidence");
    if (status != "Unknown" && evidence.empty()) add(step.seq, "V1", status + " grounding without evidence");

    if (!checks_logic()) return;
    Grounding g{branch_key(step), uint_field(step, "axiom_seq"), uint_field(step, "clause"),
                uint_field(step, "premise_index"), status};
    auto s = surfacings_.find(g.axiom_seq);
    if (s == surfacings_.end() || s->first >= step.seq) {
      add(step.seq, "V4", "grounding refers to no earlier surfaced axiom");
    } else if (s->second.branch != g.branch) {
      add(step.seq, "V4", "grounding refers to an axiom of another branch");
    } else if (g.clause >= s->second.clauses.size() || g.premise >= s->second.clauses[g.clause].size()) {
      add(step.seq, "V4", "premise position outside the surfaced axiom");
    } else if (s->second.clauses[g.clause][g.premise] != string_field(step, "premise")) {
      add(step.seq, "V4", "premise '" + string_field(step, "premise") + "' is not in the surfaced axiom");
    }
    groundings_[step.seq] = g;
  }

  void on_evaluation(const TraceStep& step) {
    const std::string value = string_field(step, "value");
    if (value != "True" && value != "False" && value != "Unknown") {
      throw TraceSchemaError("step " + std::to_string(step.seq) + ": bad evaluation value '" + value + "'");
    }
    evaluations_.push_back({step.seq, step.scope.option, value});
    last_evaluation_[step.scope.option.value_or(-1)] = evaluations_.back();
    if (!checks_logic()) return;

    const std::uint64_t axiom_seq = uint_field(step, "axiom_seq");
    auto s = surfacings_.find(axiom_seq);
    if (s == surfacings_.end()) {
      add(step.seq, "V2", "evaluation of an axiom that was never surfaced");
      return;
    }
    const Json& clauses = array_field(step, "clauses");
    if (clauses.size() != s->second.clauses.size()) {
      add(step.seq, "V2", "evaluation clause count differs from the axiom");
      return;
    }
    int axiom_rank = 0;
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      if (!clauses[c].is_array() || clauses[c].size() != s->second.clauses[c].size()) {
        add(step.seq, "V2", "clause " + std::to_string(c) + " does not list every premise");
        return;
      }
      int clause_rank = 2;
      for (std::size_t p = 0; p < clauses[c].size(); ++p) {
        const Json& entry = clauses[c][p];
        if (!entry.is_object() || !entry.contains("grounding_seq") || !entry.contains("status")) {
          throw TraceSchemaError("step " + std::to_string(step.seq) + ": malformed evaluation entry");
        }
        const std::uint64_t gseq = uint_field(entry.at("grounding_seq"), step, "grounding_seq");
        const std::string copied = entry.at("status").is_string() ? entry.at("status").get<std::string>() : "";
        auto g = groundings_.find(gseq);
        if (g == groundings_.end() || gseq >= step.seq) {
          add(step.seq, "V2", "refers to missing grounding " + std::to_string(gseq));
          return;
        }
        referenced_.insert(gseq);
        const Grounding& gr = g->second;
        if (gr.axiom_seq != axiom_seq || gr.clause != c || gr.premise != p) {
          add(step.seq, "V2", "grounding " + std::to_string(gseq) + " is for another premise");
        }
        if (copied != gr.status) {
          add(step.seq, "V2", "status of grounding " + std::to_string(gseq) + " recorded as '" + copied +
                                  "' but grounded as '" + gr.status + "'");
        }
        clause_rank = std::min(clause_rank, rank_of(gr.status));
      }
      axiom_rank = std::max(axiom_rank, clause_rank);
    }
    if (clauses.empty()) {
      add(step.seq, "V2", "evaluation of an empty axiom");
    } else if (value != truth_name(axiom_rank)) {
      add(step.seq, "V2", "value " + value + " but groundings fold to " + truth_name(axiom_rank));
    }
  }

  void check_unreferenced() {
    for (const auto& [seq, g] : groundings_) {
      if (!referenced_.count(seq)) add(seq, "V2", "grounding is not used by any evaluation");
    }
  }

  void check_answer() {
    if (finals_.size() != 1) {
      add(finals_.empty() ? 0 : finals_.back().seq, "V3", "expected exactly one FinalAnswer step");
      return;
    }
    const TraceStep& final_step = finals_.front();
    const std::string value = string_field(final_step, "value");
    const Json& selected = field(final_step, "selected_option");
    if (trace_.answer != final_step.payload) add(final_step.seq, "V3", "trace answer differs from FinalAnswer step");

    const bool multiple_choice = !trace_.query.value("options", Json::array()).empty();
    if (!multiple_choice) {
      bool decided = false;
      for (const auto& e : evaluations_) decided = decided || e.value != "Unknown";
      if (value == "Unknown") {
        if (decided) add(final_step.seq, "V3", "answer is Unknown although an evaluation decided");
      } else if (evaluations_.empty() || evaluations_.back().value != value) {
        add(final_step.seq, "V3", "answer " + value + " is not the value of the deciding evaluation");
      }
      if (!selected.is_null()) add(final_step.seq, "V3", "selected_option on a query without options");
      return;
    }

    std::optional<int> first_true;
    std::set<int> seen;
    for (const TraceStep& r : option_results_) {
      const int option = static_cast<int>(uint_field(r, "option"));
      const std::string option_value = string_field(r, "value");
      seen.insert(option);
      auto last = last_evaluation_.find(option);
      const std::string backed = last == last_evaluation_.end() ? "Unknown" : last->second.value;
      if (option_value != backed) {
        add(r.seq, "V3", "option " + std::to_string(option) + " reported " + option_value +
                             " but its last evaluation is " + backed);
      }
      if (option_value == "True" && !first_true) first_true = option;
    }
    if (value == "True") {
      if (!first_true || !selected.is_number_integer() || selected.get<int>() != *first_true) {
        add(final_step.seq, "V3", "selected option is not the first option evaluated True");
      }
      if (!option_results_.empty() && string_field(option_results_.back(), "value") != "True") {
        add(final_step.seq, "V3", "options evaluated after the selected one");
      }
    } else if (value == "Unknown") {
      if (first_true) add(final_step.seq, "V3", "answer is Unknown although an option evaluated True");
      if (!selected.is_null()) add(final_step.seq, "V3", "Unknown answer selects an option");
    } else {
      add(final_step.seq, "V3", "multiple-choice answer must be True or Unknown");
    }
  }

  const ReasoningTrace& trace_;
  const KnowledgeGraph* kg_ = nullptr;
  KnowledgeGraph merged_;
  VerificationReport report_;
  int max_depth_ = 0;
  int max_breadth_ = 0;
  std::map<int, int> surfacings_per_option_;
  std::map<BranchKey, int> expansions_;
  std::map<BranchKey, std::set<std::uint64_t>> presented_;
  std::map<std::uint64_t, Surfacing> surfacings_;
  std::map<std::uint64_t, Grounding> groundings_;
  std::set<std::uint64_t> referenced_;
  std::vector<Evaluation> evaluations_;
  std::map<int, Evaluation> last_evaluation_;
  std::vector<TraceStep> option_results_;
  std::vector<TraceStep> finals_;
};

}  // namespace

VerificationReport verify_trace(const KnowledgeGraph& kg, const ReasoningTrace& trace) {
  try {
    return Verifier(kg, trace).run();
  } catch (const nlohmann::json::exception& e) {
    throw TraceSchemaError(std::string("malformed trace: ") + e.what());
  }
}

}  // namespace r3
