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

// Canonical form used for every label/alias/relation comparison:
// Unicode NFC, full lowercase, whitespace runs collapsed to one ASCII space,
// leading and trailing whitespace removed.
std::string normalize(std::string_view text);

// normalize() after mapping '_' to ' ' (axiom refs and premise names spell
// spaces as underscores).
std::string normalize_name(std::string_view text);

std::string_view trim(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);

// Bytes that belong to a word: ASCII alphanumerics and any non-ASCII byte
// (so UTF-8 letters are never split).
inline bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z');
}

// Word tokens (maximal runs of word bytes) of an already-normalized string.
std::vector<std::string_view> word_tokens(std::string_view text);

}  // namespace r3
