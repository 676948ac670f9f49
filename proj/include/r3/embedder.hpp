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
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace r3 {

using Embedding = std::vector<float>;

// Text -> fixed-length vector. Implementations are deterministic for a given
// input and safe to call concurrently.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::size_t dimension() const = 0;
  // Stable identifier recorded in trace headers.
  virtual std::string name() const = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Hashed bag of tokens: normalize, split on non-alphanumerics, add 1 to
// bucket fnv1a64(token) % dim per token, then L2-normalize. Empty text maps
// to the zero vector.
class HashingEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  explicit HashingEmbedder(std::size_t dimension = kDefaultDimension);

  Embedding embed(std::string_view text) const override;
  std::size_t dimension() const override { return dimension_; }
  std::string name() const override { return "hashing-" + std::to_string(dimension_); }

 private:
  std::size_t dimension_;
};

struct HttpEmbedderConfig {
  std::string endpoint;  // embeddings route, e.g. https://host/v1/embeddings
  std::string model;
  std::string api_key;   // empty: read R3_LLM_API_KEY
  std::size_t dimension = 0;
  double timeout_seconds = 30.0;
  int retries = 2;
  std::chrono::milliseconds backoff{250};
};

// Remote embeddings endpoint ({"model", "input"} -> data[0].embedding).
// Results must have the configured dimension and finite components.
class HttpEmbedder final : public Embedder {
 public:
  explicit HttpEmbedder(HttpEmbedderConfig config);
  Embedding embed(std::string_view text) const override;
  std::size_t dimension() const override { return config_.dimension; }
  std::string name() const override { return "http:" + config_.model; }

 private:
  HttpEmbedderConfig config_;
};

}  // namespace r3
