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

#include "r3/trace.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <system_error>

#include "r3/errors.hpp"

namespace r3 {

namespace {

constexpr std::array<std::pair<StepKind, std::string_view>, 10> kKindNames{{
    {StepKind::EntityLinking, "EntityLinking"},
    {StepKind::SubgraphExtraction, "SubgraphExtraction"},
    {StepKind::AxiomSurfacing, "AxiomSurfacing"},
    {StepKind::Pruning, "Pruning"},
    {StepKind::PremiseGrounding, "PremiseGrounding"},
    {StepKind::Evaluation, "Evaluation"},
    {StepKind::MEI, "MEI"},
    {StepKind::Expansion, "Expansion"},
    {StepKind::OptionResult, "OptionResult"},
    {StepKind::FinalAnswer, "FinalAnswer"},
}};

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<int> read_optional_int(const Json& step, const char* key) {
  if (!step.contains(key)) throw TraceSchemaError(std::string("step lacks '") + key + "'");
  const Json& v = step.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number_integer()) throw TraceSchemaError(std::string("step field '") + key + "' is not an integer");
  return v.get<int>();
}

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw TraceSchemaError(std::string("trace lacks '") + key + "'");
  return obj.at(key);
}

}  // namespace

std::string_view to_string(StepKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

std::optional<StepKind> step_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::uint64_t ReasoningTrace::record(StepKind kind, StepScope scope, Json payload) {
  const std::uint64_t seq = next_seq_++;
  steps_.push_back({seq, kind, scope, std::move(payload)});
  return seq;
}

Json ReasoningTrace::to_json() const {
  Json doc = Json::object();
  doc["schema_version"] = kTraceSchemaVersion;
  doc["baseline"] = baseline;
  doc["query"] = query;
  doc["config"] = config;
  doc["kg"] = kg;
  Json steps = Json::array();
  for (const auto& s : steps_) {
    Json j = Json::object();
    j["seq"] = s.seq;
    j["kind"] = to_string(s.kind);
    j["option"] = optional_int(s.scope.option);
    j["branch"] = optional_int(s.scope.branch);
    j["depth"] = optional_int(s.scope.depth);
    j["payload"] = s.payload;
    steps.push_back(std::move(j));
  }
  doc["steps"] = std::move(steps);
  doc["answer"] = answer;
  doc["audit"] = audit;
  doc["branches_used"] = branches_used;
  return doc;
}

std::string ReasoningTrace::serialize() const { return to_json().dump(2) + "\n"; }

ReasoningTrace ReasoningTrace::from_json(const Json& doc) {
  if (!doc.is_object()) throw TraceSchemaError("trace is not a JSON object");
  const Json& version = require(doc, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kTraceSchemaVersion) {
    throw TraceSchemaError("unsupported trace schema " + version.dump());
  }
  ReasoningTrace t;
  const Json& baseline = require(doc, "baseline");
  if (!baseline.is_boolean()) throw TraceSchemaError("'baseline' is not a boolean");
  t.baseline = baseline.get<bool>();
  t.query = require(doc, "query");
  t.config = require(doc, "config");
  t.kg = require(doc, "kg");
  t.answer = require(doc, "answer");
  t.audit = require(doc, "audit");
  const Json& branches = require(doc, "branches_used");
  if (!branches.is_number_integer()) throw TraceSchemaError("'branches_used' is not an integer");
  t.branches_used = branches.get<int>();
  if (!t.query.is_object() || !t.config.is_object() || !t.kg.is_object()) {
    throw TraceSchemaError("query, config and kg must be objects");
  }

  const Json& steps = require(doc, "steps");
  if (!steps.is_array()) throw TraceSchemaError("'steps' is not an array");
  for (const Json& s : steps) {
    if (!s.is_object()) throw TraceSchemaError("step is not an object");
    const Json& seq = require(s, "seq");
    if (!seq.is_number_unsigned() && !seq.is_number_integer()) throw TraceSchemaError("step seq is not an integer");
    const Json& kind = require(s, "kind");
    auto k = kind.is_string() ? step_kind_from_string(kind.get<std::string>()) : std::nullopt;
    if (!k) throw TraceSchemaError("unknown step kind " + kind.dump());
    TraceStep step;
    step.seq = seq.get<std::uint64_t>();
    step.kind = *k;
    step.scope = {read_optional_int(s, "option"), read_optional_int(s, "branch"), read_optional_int(s, "depth")};
    step.payload = require(s, "payload");
    if (!step.payload.is_object()) throw TraceSchemaError("step payload is not an object");
    t.next_seq_ = step.seq + 1;
    t.steps_.push_back(std::move(step));
  }
  return t;
}

ReasoningTrace ReasoningTrace::parse(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw TraceSchemaError(std::string("trace is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

Json triple_json(const KnowledgeGraph& kg, TripleId id) {
  const Triple& t = kg.triple(id);
  Json j = Json::object();
  j["id"] = id;
  j["head"] = t.head;
  j["relation"] = t.relation;
  j["tail"] = t.tail.raw;
  return j;
}

void write_trace_file(const std::filesystem::path& path, const ReasoningTrace& trace) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << trace.serialize();
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ReasoningTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ReasoningTrace::parse(buf.str());
}

}  // namespace r3
