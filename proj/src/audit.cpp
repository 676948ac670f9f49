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

#include "r3/audit.hpp"

#include <algorithm>

namespace r3 {

std::string_view to_string(AuditKind kind) {
  switch (kind) {
    case AuditKind::ParseFailure: return "parse_failure";
    case AuditKind::RejectedCitation: return "rejected_citation";
    case AuditKind::UnresolvedName: return "unresolved_name";
    case AuditKind::AmbiguousName: return "ambiguous_name";
    case AuditKind::SurfacingFailure: return "surfacing_failure";
    case AuditKind::ExpansionFailure: return "expansion_failure";
    case AuditKind::EmptyAnchorSet: return "empty_anchor_set";
  }
  return "unknown";
}

void AuditLog::record(AuditKind kind, std::string detail) {
  events_.push_back({kind, std::move(detail)});
}

std::size_t AuditLog::count(AuditKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [kind](const AuditEvent& e) { return e.kind == kind; }));
}

AuditCounters AuditLog::counters() const {
  AuditCounters c;
  c.rejected_citations = static_cast<int>(count(AuditKind::RejectedCitation));
  c.unresolved_names = static_cast<int>(count(AuditKind::UnresolvedName));
  // A missing AXIOM block is a grammar failure too.
  c.parse_failures =
      static_cast<int>(count(AuditKind::ParseFailure) + count(AuditKind::SurfacingFailure));
  return c;
}

}  // namespace r3
