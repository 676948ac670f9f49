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
#include <string>
#include <string_view>
#include <vector>

#include "r3/decimal.hpp"

namespace r3 {

class AuditLog;
class LlmBackend;
class PromptLibrary;

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);

// Right-hand side of a function premise.
struct Literal {
  enum class Kind { Number, String, EntityRef };
  Kind kind = Kind::EntityRef;
  std::string text;  // digits as written, unescaped string, or the ref token
  std::optional<Decimal> number;

  bool operator==(const Literal& o) const { return kind == o.kind && text == o.text; }
};

// P(e) or F(e) <op> literal. `subject` is the ref exactly as written in the
// axiom (an entity id or a name with '_' for spaces); grounding resolves it.
struct Premise {
  enum class Kind { Predicate, Function };
  Kind kind = Kind::Predicate;
  std::string name;
  std::string subject;
  std::optional<CompareOp> op;        // Function only
  std::optional<Literal> comparand;   // Function only

  bool operator==(const Premise&) const = default;
};

using Clause = std::vector<Premise>;

// Disjunction of conjunctions. A satisfied clause implies the positive answer
// (yes / correct / this option).
struct Axiom {
  std::string natural_text;
  std::vector<Clause> clauses;

  std::size_t premise_count() const;
};

// Clause-by-clause equality; natural_text is ignored.
bool structurally_equal(const Axiom& a, const Axiom& b);

// AXIOM  := CLAUSE ("OR" CLAUSE)*
// CLAUSE := PREM ("AND" PREM)*
// PREM   := name "(" ref ")" [op literal]
// Whitespace-insensitive; throws ParseError with the byte offset of the
// offending token.
Axiom parse_axiom(std::string_view text);

std::string serialize_premise(const Premise& p);
// Canonical text: " AND " inside clauses, " OR " between them.
std::string serialize_axiom(const Axiom& axiom);

// Asks the backend (role axiom) for a new axiom about `query`, optionally for
// one answer option, steering away from `prior_axioms`. Returns nullopt and
// records a SurfacingFailure when the response carries no parseable AXIOM
// line.
std::optional<Axiom> surface_axiom(LlmBackend& backend, const PromptLibrary& prompts,
                                   std::string_view query, const std::optional<std::string>& option,
                                   const std::vector<Axiom>& prior_axioms, AuditLog& audit);

}  // namespace r3
