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

#include "r3/axiom.hpp"

#include "r3/audit.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/prompts.hpp"
#include "r3/responses.hpp"

namespace r3 {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::size_t Axiom::premise_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

bool structurally_equal(const Axiom& a, const Axiom& b) { return a.clauses == b.clauses; }

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

constexpr std::string_view kUnicodeOps[] = {"\u2260", "\u2264", "\u2265"};  // ≠ ≤ ≥

// Byte length of the operator character at s[pos], or 0.
std::size_t op_char_len(std::string_view s, std::size_t pos) {
  char c = s[pos];
  if (c == '=' || c == '!' || c == '<' || c == '>') return 1;
  for (auto op : kUnicodeOps) {
    if (s.substr(pos, op.size()) == op) return op.size();
  }
  return 0;
}

// Characters that end a ref or bare literal.
bool is_ref_stop(std::string_view s, std::size_t pos) {
  char c = s[pos];
  return is_space(c) || c == '(' || c == ')' || c == '"' || c == ',' || op_char_len(s, pos) > 0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Axiom parse() {
    Axiom axiom;
    skip_ws();
    if (at_end()) fail("empty axiom");
    axiom.clauses.push_back(parse_clause());
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (!accept_keyword("OR")) fail("expected AND, OR or end of axiom");
      axiom.clauses.push_back(parse_clause());
    }
    return axiom;
  }

 private:
  Clause parse_clause() {
    Clause clause;
    skip_ws();
    if (at_end() || peek_keyword("OR") || peek_keyword("AND")) fail("empty clause");
    clause.push_back(parse_premise());
    while (true) {
      skip_ws();
      if (!accept_keyword("AND")) break;
      skip_ws();
      if (at_end() || peek_keyword("OR") || peek_keyword("AND")) fail("empty premise after AND");
      clause.push_back(parse_premise());
    }
    return clause;
  }

  Premise parse_premise() {
    Premise p;
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && is_name_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected premise name");
    p.name = std::string(s_.substr(start, pos_ - start));
    skip_ws();
    expect('(');
    skip_ws();
    p.subject = parse_ref("entity reference");
    skip_ws();
    expect(')');

    std::size_t save = pos_;
    skip_ws();
    if (!at_end() && op_char_len(s_, pos_) > 0) {
      p.kind = Premise::Kind::Function;
      p.op = parse_op();
      skip_ws();
      if (at_end() || peek_keyword("AND") || peek_keyword("OR")) fail("missing comparand after operator");
      p.comparand = parse_literal();
    } else {
      pos_ = save;
      p.kind = Premise::Kind::Predicate;
    }
    return p;
  }

  CompareOp parse_op() {
    std::size_t start = pos_;
    while (!at_end()) {
      std::size_t len = op_char_len(s_, pos_);
      if (len == 0) break;
      pos_ += len;
    }
    std::string token(s_.substr(start, pos_ - start));
    if (token == "=") return CompareOp::Eq;
    if (token == "!=" || token == "≠") return CompareOp::Ne;
    if (token == "<") return CompareOp::Lt;
    if (token == "<=" || token == "≤") return CompareOp::Le;
    if (token == ">") return CompareOp::Gt;
    if (token == ">=" || token == "≥") return CompareOp::Ge;
    fail_at("unknown operator '" + token + "'", start);
  }

  std::string parse_ref(const char* what) {
    std::size_t start = pos_;
    while (!at_end() && !is_ref_stop(s_, pos_)) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    return std::string(s_.substr(start, pos_ - start));
  }

  Literal parse_literal() {
    Literal lit;
    if (s_[pos_] == '"') {
      lit.kind = Literal::Kind::String;
      ++pos_;
      std::string value;
      while (true) {
        if (at_end()) fail("unterminated string literal");
        char c = s_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (at_end()) fail("unterminated escape in string literal");
          value += s_[pos_++];
          continue;
        }
        value += c;
      }
      lit.text = std::move(value);
      return lit;
    }
    std::size_t start = pos_;
    std::string token = parse_ref("literal");
    if (token == "AND" || token == "OR") fail_at("missing comparand after operator", start);
    if (auto number = Decimal::parse(token)) {
      lit.kind = Literal::Kind::Number;
      lit.number = std::move(number);
    } else {
      lit.kind = Literal::Kind::EntityRef;
    }
    lit.text = std::move(token);
    return lit;
  }

  bool peek_keyword(std::string_view kw) const {
    if (s_.substr(pos_, kw.size()) != kw) return false;
    std::size_t end = pos_ + kw.size();
    return end == s_.size() || is_space(s_[end]);
  }

  bool accept_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) return false;
    pos_ += kw.size();
    return true;
  }

  void expect(char c) {
    if (at_end() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && is_space(s_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError("axiom syntax error at offset " + std::to_string(at) + ": " + msg, at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string serialize_literal(const Literal& lit) {
  if (lit.kind != Literal::Kind::String) return lit.text;
  std::string out = "\"";
  for (char c : lit.text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Axiom parse_axiom(std::string_view text) { return Parser(text).parse(); }

std::string serialize_premise(const Premise& p) {
  std::string out = p.name + "(" + p.subject + ")";
  if (p.kind == Premise::Kind::Function && p.op && p.comparand) {
    out += " ";
    out += to_string(*p.op);
    out += " " + serialize_literal(*p.comparand);
  }
  return out;
}

std::string serialize_axiom(const Axiom& axiom) {
  std::string out;
  for (std::size_t c = 0; c < axiom.clauses.size(); ++c) {
    if (c > 0) out += " OR ";
    const auto& clause = axiom.clauses[c];
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (i > 0) out += " AND ";
      out += serialize_premise(clause[i]);
    }
  }
  return out;
}

std::optional<Axiom> surface_axiom(LlmBackend& backend, const PromptLibrary& prompts,
                                   std::string_view query, const std::optional<std::string>& option,
                                   const std::vector<Axiom>& prior_axioms, AuditLog& audit) {
  PromptContext ctx;
  ctx.query = std::string(query);
  ctx.option = option;
  std::vector<std::string> prior;
  for (const auto& a : prior_axioms) prior.push_back(serialize_axiom(a));
  ctx.prior_axioms = std::move(prior);

  std::string response =
      backend.complete({LlmRole::Axiom, prompts.render(LlmRole::Axiom, ctx), 0.0});
  auto parsed = parse_axiom_response(response);
  if (!parsed) {
    audit.record(AuditKind::SurfacingFailure, "no AXIOM line in axiom response");
    return std::nullopt;
  }
  try {
    Axiom axiom = parse_axiom(parsed->axiom_text);
    axiom.natural_text = parsed->natural_text;
    return axiom;
  } catch (const ParseError& e) {
    audit.record(AuditKind::SurfacingFailure, e.what());
    return std::nullopt;
  }
}

}  // namespace r3
