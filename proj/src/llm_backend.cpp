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

#include "r3/llm_backend.hpp"

namespace r3 {

std::string_view to_string(LlmRole role) {
  switch (role) {
    case LlmRole::EntityExtract: return "entity_extract";
    case LlmRole::Axiom: return "axiom";
    case LlmRole::TripleSelect: return "triple_select";
    case LlmRole::Judge: return "judge";
    case LlmRole::Mei: return "mei";
    case LlmRole::Answer: return "answer";
  }
  return "unknown";
}

std::optional<LlmRole> role_from_string(std::string_view name) {
  for (LlmRole role : kAllRoles) {
    if (to_string(role) == name) return role;
  }
  return std::nullopt;
}

std::string LlmBackend::complete(const LlmRequest& request) {
  std::string response = do_complete(request);
  std::lock_guard lock(log_mutex_);
  log_.push_back({request.role, request.rendered_prompt, response});
  return response;
}

std::vector<CallRecord> LlmBackend::call_log() const {
  std::lock_guard lock(log_mutex_);
  return log_;
}

std::size_t LlmBackend::call_count() const {
  std::lock_guard lock(log_mutex_);
  return log_.size();
}

}  // namespace r3
