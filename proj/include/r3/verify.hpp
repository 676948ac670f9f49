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

#include <cstdint>
#include <string>
#include <vector>

#include "r3/knowledge_graph.hpp"
#include "r3/trace.hpp"

namespace r3 {

struct Violation {
  std::uint64_t seq = 0;
  std::string rule;  // "V1" .. "V5"
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;
  double grounding_precision = 1.0;  // 1.0 when nothing is cited
  std::size_t citations = 0;
  std::size_t valid_citations = 0;
  std::size_t steps_checked = 0;
};

// Re-checks a trace against the KG using only the trace schema:
//   V1 cited triples exist, match the KG and were presented to that branch;
//      verdicts other than Unknown cite something, Unknown cites nothing
//   V2 each Evaluation equals the three-valued fold of the groundings it names
//   V3 the final answer is backed by a deciding Evaluation
//   V4 each grounded premise belongs to an earlier surfaced axiom
//   V5 seq, depth and breadth stay within the header's budgets
// `kg` may be the base KG (extras in the header are merged in) or the
// already merged one. Baseline traces are checked for V1 and V5 only.
// Throws TraceSchemaError when a payload is missing required fields.
VerificationReport verify_trace(const KnowledgeGraph& kg, const ReasoningTrace& trace);

}  // namespace r3
