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

#include "r3/scripted_backend.hpp"

#include <fstream>
#include <iostream>

#include "r3/errors.hpp"

namespace r3 {

ScriptedBackend::ScriptedBackend(const nlohmann::json& script) {
  if (!script.is_object()) throw ParseError("script must be a JSON object", 0);
  for (const auto& [key, responses] : script.items()) {
    auto role = role_from_string(key);
    if (!role) throw ParseError("unknown role in script: " + key, 0);
    if (!responses.is_array()) throw ParseError("script role '" + key + "' must map to an array", 0);
    auto& queue = queues_[*role];
    for (const auto& r : responses) {
      if (!r.is_string()) throw ParseError("script role '" + key + "' holds a non-string response", 0);
      queue.push_back(r.get<std::string>());
    }
  }
}

ScriptedBackend::~ScriptedBackend() {
  if (!report_unconsumed_) return;
  for (const auto& [role, n] : remaining()) {
    std::cerr << "scripted backend: " << n << " unconsumed '" << to_string(role) << "' response(s)\n";
  }
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open script file: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("script " + path.string() + ": " + e.what(), e.byte);
  }
  return ScriptedBackend(doc);
}

void ScriptedBackend::push(LlmRole role, std::string response) {
  std::lock_guard lock(mutex_);
  queues_[role].push_back(std::move(response));
}

std::map<LlmRole, std::size_t> ScriptedBackend::remaining() const {
  std::lock_guard lock(mutex_);
  std::map<LlmRole, std::size_t> out;
  for (const auto& [role, queue] : queues_) {
    if (!queue.empty()) out[role] = queue.size();
  }
  return out;
}

std::string ScriptedBackend::do_complete(const LlmRequest& request) {
  std::lock_guard lock(mutex_);
  auto it = queues_.find(request.role);
  if (it == queues_.end() || it->second.empty()) {
    throw ScriptExhausted("script exhausted for role '" + std::string(to_string(request.role)) + "'");
  }
  std::string response = std::move(it->second.front());
  it->second.pop_front();
  return response;
}

}  // namespace r3
