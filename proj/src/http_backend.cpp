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

#include "r3/http_backend.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#ifdef R3_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "r3/errors.hpp"

namespace r3 {

UrlParts split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error("endpoint URL lacks a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw Error("HTTP backend needs an endpoint URL");
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("R3_LLM_API_KEY")) config_.api_key = key;
  }
}

std::string HttpBackend::do_complete(const LlmRequest& request) {
  auto url = split_url(config_.endpoint);

  nlohmann::json body;
  body["model"] = config_.model;
  nlohmann::json messages = nlohmann::json::array();
  if (!config_.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", config_.system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", request.rendered_prompt}});
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  const std::string payload = body.dump();

  httplib::Client client(url.scheme_host_port);
  auto secs = static_cast<time_t>(config_.timeout_seconds);
  auto usecs = static_cast<time_t>((config_.timeout_seconds - std::floor(config_.timeout_seconds)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  auto backoff = config_.backoff;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
      // Client errors other than throttling will not improve on retry.
      if (res->status >= 400 && res->status < 500 && res->status != 408 && res->status != 429) break;
      continue;
    }
    try {
      auto doc = nlohmann::json::parse(res->body);
      return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed completion response: ") + e.what());
    }
  }
  throw TransportError("LLM endpoint " + config_.endpoint + ": " + last_error + " after " +
                       std::to_string(config_.retries + 1) + " attempt(s)");
}

}  // namespace r3
