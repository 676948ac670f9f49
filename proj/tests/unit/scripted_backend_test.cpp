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
#include <fstream>
#include <thread>

#include "r3/errors.hpp"
#include "r3/scripted_backend.hpp"

namespace r3 {
namespace {

TEST(ScriptedBackendTest, PopsPerRoleInOrderAndLogsCalls) {
  ScriptedBackend backend(nlohmann::json{{"judge", {"a", "b"}}, {"axiom", {"c"}}});
  backend.set_report_unconsumed(false);
  EXPECT_EQ(backend.complete({LlmRole::Judge, "p1"}), "a");
  EXPECT_EQ(backend.complete({LlmRole::Axiom, "p2"}), "c");
  EXPECT_EQ(backend.complete({LlmRole::Judge, "p3"}), "b");
  auto log = backend.call_log();
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[1].role, LlmRole::Axiom);
  EXPECT_EQ(log[1].prompt, "p2");
  EXPECT_EQ(log[2].response, "b");
  EXPECT_TRUE(backend.remaining().empty());
}

TEST(ScriptedBackendTest, ExhaustionThrowsAndIsNotLogged) {
  ScriptedBackend backend(nlohmann::json{{"mei", {"x"}}});
  backend.complete({LlmRole::Mei, ""});
  EXPECT_THROW(backend.complete({LlmRole::Mei, ""}), ScriptExhausted);
  EXPECT_THROW(backend.complete({LlmRole::Judge, ""}), ScriptExhausted);
  EXPECT_EQ(backend.call_count(), 1u);
}

TEST(ScriptedBackendTest, RemainingCountsUnusedResponses) {
  ScriptedBackend backend;
  backend.set_report_unconsumed(false);
  backend.push(LlmRole::TripleSelect, "SELECT: 1");
  backend.push(LlmRole::TripleSelect, "SELECT: 2");
  backend.complete({LlmRole::TripleSelect, ""});
  EXPECT_EQ(backend.remaining(), (std::map<LlmRole, std::size_t>{{LlmRole::TripleSelect, 1}}));
}

TEST(ScriptedBackendTest, RejectsMalformedScripts) {
  EXPECT_THROW(ScriptedBackend{nlohmann::json::array()}, ParseError);
  EXPECT_THROW(ScriptedBackend(nlohmann::json{{"oracle", {"x"}}}), ParseError);
  EXPECT_THROW(ScriptedBackend(nlohmann::json{{"judge", "x"}}), ParseError);
  EXPECT_THROW(ScriptedBackend(nlohmann::json{{"judge", {1}}}), ParseError);
}

TEST(ScriptedBackendTest, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "r3_scripted_backend_test.json";
  {
    std::ofstream out(path);
    out << R"({"answer": ["Yes"]})";
  }
  auto backend = ScriptedBackend::from_file(path);
  EXPECT_EQ(backend.complete({LlmRole::Answer, ""}), "Yes");
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(ScriptedBackend::from_file(path), ParseError);
  std::filesystem::remove(path);
  EXPECT_THROW(ScriptedBackend::from_file(path), Error);
}

TEST(ScriptedBackendTest, ConcurrentCallersEachGetOneResponse) {
  ScriptedBackend backend;
  constexpr int kResponses = 800;
  for (int i = 0; i < kResponses; ++i) backend.push(LlmRole::Judge, std::to_string(i));
  std::atomic<int> served{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&] {
      for (int i = 0; i < kResponses / 8; ++i) {
        backend.complete({LlmRole::Judge, ""});
        ++served;
      }
    });
  }
  for (auto& t : pool) t.join();
  EXPECT_EQ(served.load(), kResponses);
  EXPECT_EQ(backend.call_count(), static_cast<std::size_t>(kResponses));
  EXPECT_TRUE(backend.remaining().empty());
}

}  // namespace
}  // namespace r3
