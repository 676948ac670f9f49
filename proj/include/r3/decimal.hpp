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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace r3 {

// Exact decimal literal: optional sign, digits, optional '.' and digits.
// Comparison is exact on the digit strings, so "0.10" == "0.1" and no
// binary rounding is involved.
class Decimal {
 public:
  static std::optional<Decimal> parse(std::string_view token);

  bool negative() const { return negative_; }
  const std::string& integer_digits() const { return int_; }
  const std::string& fraction_digits() const { return frac_; }
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  bool negative_ = false;
  std::string int_;   // no leading zeros; "" for zero integer part
  std::string frac_;  // no trailing zeros
};

}  // namespace r3
