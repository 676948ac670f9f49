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

#include <deque>
#include <filesystem>
#include <map>
#include <mutex>

#include <json.hpp>

#include "r3/llm_backend.hpp"

namespace r3 {

// Deterministic backend: every role owns a queue of canned responses that
// complete() pops in order. An empty queue throws ScriptExhausted.
class ScriptedBackend : public LlmBackend {
 public:
  ScriptedBackend() = default;
  // {"judge": ["STATUS: UNKNOWN", ...], "axiom": [...]}; unknown role keys
  // or non-string entries throw ParseError.
  explicit ScriptedBackend(const nlohmann::json& script);
  ~ScriptedBackend() override;

  static ScriptedBackend from_file(const std::filesystem::path& path);

  void push(LlmRole role, std::string response);

  // Responses never consumed, per role. Reported on stderr at destruction
  // unless silenced.
  std::map<LlmRole, std::size_t> remaining() const;
  void set_report_unconsumed(bool on) { report_unconsumed_ = on; }

 protected:
  std::string do_complete(const LlmRequest& request) override;

 private:
  mutable std::mutex mutex_;
  std::map<LlmRole, std::deque<std::string>> queues_;
  bool report_unconsumed_ = true;
};

}  // namespace r3
