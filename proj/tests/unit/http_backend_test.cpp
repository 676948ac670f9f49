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

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "r3/errors.hpp"
#include "r3/http_backend.hpp"

namespace r3 {
namespace {

// In-process chat-completions stub; fails the first `failures` requests with
// `fail_status`.
class StubServer {
 public:
  StubServer(int failures, int fail_status) : failures_(failures), fail_status_(fail_status) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = requests_++;
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      if (n < failures_) {
        res.status = fail_status_;
        res.set_content("{}", "application/json");
        return;
      }
      auto body = nlohmann::json::parse(req.body);
      nlohmann::json reply = {
          {"choices", {{{"message", {{"role", "assistant"}, {"content", "echo: " + body["messages"].back()["content"].get<std::string>()}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  int requests() const { return requests_; }
  const std::string& last_body() const { return last_body_; }
  const std::string& last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int failures_;
  int fail_status_;
  std::atomic<int> requests_{0};
  std::string last_body_;
  std::string last_auth_;
};

HttpBackendConfig config_for(const StubServer& stub, int retries) {
  HttpBackendConfig config;
  config.endpoint = stub.url();
  config.model = "stub-model";
  config.api_key = "secret";
  config.timeout_seconds = 5.0;
  config.retries = retries;
  config.backoff = std::chrono::milliseconds(1);
  return config;
}

TEST(HttpBackendTest, SendsPromptVerbatimAtTemperatureZero) {
  StubServer stub(0, 500);
  HttpBackend backend(config_for(stub, 0));
  EXPECT_EQ(backend.complete({LlmRole::Judge, "Premise: p(Q1)\n", 0.0}), "echo: Premise: p(Q1)\n");
  auto body = nlohmann::json::parse(stub.last_body());
  EXPECT_EQ(body["model"], "stub-model");
  EXPECT_EQ(body["temperature"], 0.0);
  EXPECT_EQ(body["messages"].back()["role"], "user");
  EXPECT_EQ(stub.last_auth(), "Bearer secret");
  EXPECT_EQ(backend.call_count(), 1u);
}

TEST(HttpBackendTest, RetriesServerErrorsUntilSuccess) {
  StubServer stub(2, 500);
  HttpBackend backend(config_for(stub, 3));
  EXPECT_EQ(backend.complete({LlmRole::Axiom, "q"}), "echo: q");
  EXPECT_EQ(stub.requests(), 3);
}

TEST(HttpBackendTest, GivesUpAfterRetriesWithTransportError) {
  StubServer stub(100, 503);
  HttpBackend backend(config_for(stub, 2));
  EXPECT_THROW(backend.complete({LlmRole::Axiom, "q"}), TransportError);
  EXPECT_EQ(stub.requests(), 3);
  EXPECT_EQ(backend.call_count(), 0u);
}

TEST(HttpBackendTest, ClientErrorsAreNotRetried) {
  StubServer stub(100, 401);
  HttpBackend backend(config_for(stub, 3));
  EXPECT_THROW(backend.complete({LlmRole::Axiom, "q"}), TransportError);
  EXPECT_EQ(stub.requests(), 1);
}

TEST(HttpBackendTest, ThrottlingIsRetried) {
  StubServer stub(1, 429);
  HttpBackend backend(config_for(stub, 1));
  EXPECT_EQ(backend.complete({LlmRole::Axiom, "q"}), "echo: q");
  EXPECT_EQ(stub.requests(), 2);
}

TEST(HttpBackendTest, UnreachableEndpointIsATransportError) {
  HttpBackendConfig config;
  config.endpoint = "http://127.0.0.1:9/v1/chat/completions";
  config.timeout_seconds = 1.0;
  config.retries = 1;
  config.backoff = std::chrono::milliseconds(1);
  HttpBackend backend(config);
  EXPECT_THROW(backend.complete({LlmRole::Axiom, "q"}), TransportError);
}

TEST(HttpBackendTest, UrlSplitting) {
  auto parts = split_url("https://api.example.com:8443/v1/chat/completions");
  EXPECT_EQ(parts.scheme_host_port, "https://api.example.com:8443");
  EXPECT_EQ(parts.path, "/v1/chat/completions");
  EXPECT_EQ(split_url("http://localhost").path, "/");
  EXPECT_THROW(split_url("localhost:80/x"), Error);
  EXPECT_THROW(HttpBackend(HttpBackendConfig{}), Error);
}

}  // namespace
}  // namespace r3
