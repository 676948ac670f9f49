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

#include <chrono>
#include <string>

#include "r3/llm_backend.hpp"

namespace r3 {

struct HttpBackendConfig {
  std::string endpoint;  // full URL of a chat-completions route
  std::string model = "gpt-3.5-turbo";
  std::string api_key;   // empty: read R3_LLM_API_KEY
  double timeout_seconds = 60.0;
  int retries = 3;       // extra attempts after the first
  std::chrono::milliseconds backoff{500};  // doubled after every failure
  std::string system_prompt;
};

// Chat-completions client. Prompts go out verbatim with temperature 0; the
// first choice's message content comes back verbatim.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  const HttpBackendConfig& config() const { return config_; }

 protected:
  std::string do_complete(const LlmRequest& request) override;

 private:
  HttpBackendConfig config_;
};

struct UrlParts {
  std::string scheme_host_port;  // "http://127.0.0.1:8080"
  std::string path;              // "/v1/chat/completions"
};
UrlParts split_url(const std::string& url);

}  // namespace r3
