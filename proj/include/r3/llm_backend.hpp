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

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace r3 {

// One role per LLM-backed module. `Answer` is the direct-answer prompt of the
// retrieve-and-read baseline; the engine itself never uses it.
enum class LlmRole { EntityExtract, Axiom, TripleSelect, Judge, Mei, Answer };

inline constexpr LlmRole kAllRoles[] = {LlmRole::EntityExtract, LlmRole::Axiom, LlmRole::TripleSelect,
                                        LlmRole::Judge,         LlmRole::Mei,   LlmRole::Answer};

std::string_view to_string(LlmRole role);
std::optional<LlmRole> role_from_string(std::string_view name);

struct LlmRequest {
  LlmRole role;
  std::string rendered_prompt;
  double temperature = 0.0;
};

struct CallRecord {
  LlmRole role;
  std::string prompt;
  std::string response;
};

// Completion interface shared by the HTTP client and the scripted test
// backend. complete() is safe to call from several threads; the call log is
// append-only and ordered by completion.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;

  std::string complete(const LlmRequest& request);

  std::vector<CallRecord> call_log() const;
  std::size_t call_count() const;

 protected:
  virtual std::string do_complete(const LlmRequest& request) = 0;

 private:
  mutable std::mutex log_mutex_;
  std::vector<CallRecord> log_;
};

}  // namespace r3
