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

#include "r3/decimal.hpp"

namespace r3 {

namespace {
bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}
}  // namespace

std::optional<Decimal> Decimal::parse(std::string_view token) {
  Decimal d;
  if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
    d.negative_ = token.front() == '-';
    token.remove_prefix(1);
  }
  std::string_view int_part = token;
  std::string_view frac_part;
  if (auto dot = token.find('.'); dot != std::string_view::npos) {
    int_part = token.substr(0, dot);
    frac_part = token.substr(dot + 1);
    if (!all_digits(frac_part)) return std::nullopt;
  }
  if (!all_digits(int_part)) return std::nullopt;

  while (!int_part.empty() && int_part.front() == '0') int_part.remove_prefix(1);
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
  d.int_ = std::string(int_part);
  d.frac_ = std::string(frac_part);
  if (d.int_.empty() && d.frac_.empty()) d.negative_ = false;  // -0 == 0
  return d;
}

std::string Decimal::to_string() const {
  std::string s = negative_ ? "-" : "";
  s += int_.empty() ? "0" : int_;
  if (!frac_.empty()) s += "." + frac_;
  return s;
}

namespace {
// Magnitude comparison of two non-negative canonical decimals.
std::strong_ordering compare_magnitude(const Decimal& a, const Decimal& b) {
  const auto& ai = a.integer_digits();
  const auto& bi = b.integer_digits();
  if (ai.size() != bi.size()) return ai.size() <=> bi.size();
  if (auto c = ai.compare(bi); c != 0) return c <=> 0;
  const auto& af = a.fraction_digits();
  const auto& bf = b.fraction_digits();
  // Canonical fractions have no trailing zeros, so lexicographic order on the
  // digit strings is numeric order ("5" > "45", "5" < "51").
  if (auto c = af.compare(bf); c != 0) return c <=> 0;
  return std::strong_ordering::equal;
}
}  // namespace

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  if (a.negative_ != b.negative_) {
    return a.negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto mag = compare_magnitude(a, b);
  if (!a.negative_) return mag;
  return 0 <=> mag;
}

}  // namespace r3
