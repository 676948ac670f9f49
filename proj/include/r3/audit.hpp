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

namespace r3 {

enum class AuditKind {
  ParseFailure,       // an LLM response did not match its role grammar
  RejectedCitation,   // judge cited an index outside the presented list
  UnresolvedName,     // an LLM-produced entity name matched nothing in the KG
  AmbiguousName,      // a surface form matched several entities
  SurfacingFailure,   // no AXIOM block in an axiom response
  ExpansionFailure,   // MEI could not name a usable entity
  EmptyAnchorSet,
};

std::string_view to_string(AuditKind kind);

struct AuditEvent {
  AuditKind kind;
  std::string detail;
};

struct AuditCounters {
  int rejected_citations = 0;
  int unresolved_names = 0;
  int parse_failures = 0;
  bool operator==(const AuditCounters&) const = default;
};

// Per-query event log. Not shared across queries.
class AuditLog {
 public:
  void record(AuditKind kind, std::string detail);
  const std::vector<AuditEvent>& events() const { return events_; }
  AuditCounters counters() const;
  std::size_t count(AuditKind kind) const;

 private:
  std::vector<AuditEvent> events_;
};

}  // namespace r3
