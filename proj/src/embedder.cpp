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

#include "r3/embedder.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#ifdef R3_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "r3/errors.hpp"
#include "r3/http_backend.hpp"
#include "r3/text.hpp"

namespace r3 {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw ContractError("embedding dimension must be positive");
}

Embedding HashingEmbedder::embed(std::string_view text) const {
  Embedding v(dimension_, 0.f);
  const std::string norm = normalize(text);
  for (auto token : word_tokens(norm)) v[fnv1a64(token) % dimension_] += 1.f;
  double sq = 0.0;
  for (float x : v) sq += static_cast<double>(x) * x;
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (float& x : v) x = static_cast<float>(x * inv);
  }
  return v;
}

HttpEmbedder::HttpEmbedder(HttpEmbedderConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw Error("embedding endpoint URL is empty");
  if (config_.dimension == 0) throw Error("embedding dimension must be configured");
  if (config_.api_key.empty()) {
    if (const char* key = std::getenv("R3_LLM_API_KEY")) config_.api_key = key;
  }
}

Embedding HttpEmbedder::embed(std::string_view text) const {
  auto url = split_url(config_.endpoint);
  nlohmann::json body = {{"model", config_.model}, {"input", std::string(text)}};
  const std::string payload = body.dump();

  httplib::Client client(url.scheme_host_port);
  auto secs = static_cast<time_t>(config_.timeout_seconds);
  auto usecs = static_cast<time_t>((config_.timeout_seconds - std::floor(config_.timeout_seconds)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
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
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    Embedding v;
    try {
      auto doc = nlohmann::json::parse(res->body);
      v = doc.at("data").at(0).at("embedding").get<Embedding>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed embedding response: ") + e.what());
    }
    if (v.size() != config_.dimension) {
      throw TransportError("embedding has dimension " + std::to_string(v.size()) + ", expected " +
                           std::to_string(config_.dimension));
    }
    for (float x : v) {
      if (!std::isfinite(x)) throw TransportError("embedding has a non-finite component");
    }
    return v;
  }
  throw TransportError("embedding endpoint " + config_.endpoint + ": " + last_error);
}

}  // namespace r3
