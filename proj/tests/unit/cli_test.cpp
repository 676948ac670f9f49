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

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "r3/cli.hpp"
#include "r3/trace.hpp"

namespace r3 {
namespace {

using testing::fixture_dir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("r3_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::vector<std::string> kg_flags() const {
    return {"--kg", (fixture_dir() / "kg" / "triples.tsv").string(), "--labels",
            (fixture_dir() / "kg" / "labels.tsv").string()};
  }

  // Writes the scenario's script and returns its path.
  std::string script_for(const std::string& scenario) const {
    const auto path = dir_ / (scenario + ".script.json");
    std::ofstream(path) << testing::load_scenario(scenario).script.dump();
    return path.string();
  }

  std::vector<std::string> ask_two_hop(const std::string& trace) const {
    std::vector<std::string> args{"ask"};
    for (const auto& f : kg_flags()) args.push_back(f);
    for (const auto& f : {std::string("--backend"), std::string("scripted"), std::string("--script"),
                          script_for("two_hop"), std::string("--query"),
                          testing::load_scenario("two_hop").query.text, std::string("--trace-out"), trace}) {
      args.push_back(f);
    }
    return args;
  }

  std::vector<std::string> verify_args(const std::string& trace) const {
    std::vector<std::string> args{"verify"};
    for (const auto& f : kg_flags()) args.push_back(f);
    args.push_back(trace);
    return args;
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, AskPrintsAnswerAndWritesAVerifiableTrace) {
  const auto trace = (dir_ / "ask.trace.json").string();
  auto run = cli(ask_two_hop(trace));
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_NE(run.out.find("answer: Yes"), std::string::npos);
  EXPECT_NE(run.out.find("trace: " + trace), std::string::npos);
  auto check = cli(verify_args(trace));
  EXPECT_EQ(check.code, kExitOk) << check.out << check.err;
  EXPECT_TRUE(nlohmann::json::parse(check.out).at("ok").get<bool>());
}

TEST_F(CliTest, TamperedTraceFailsVerification) {
  const auto trace = (dir_ / "ask.trace.json").string();
  ASSERT_EQ(cli(ask_two_hop(trace)).code, kExitOk);
  auto doc = read_trace_file(trace).to_json();
  for (auto& step : doc["steps"]) {
    if (step["kind"] == "FinalAnswer") step["payload"]["value"] = "False";
  }
  std::ofstream(trace) << doc.dump(2);
  auto run = cli(verify_args(trace));
  EXPECT_EQ(run.code, kExitVerification);
  EXPECT_FALSE(nlohmann::json::parse(run.out).at("ok").get<bool>());
}

TEST_F(CliTest, SchemaBrokenTraceIsAVerificationFailure) {
  const auto trace = (dir_ / "broken.trace.json").string();
  std::ofstream(trace) << R"({"schema_version": "other"})";
  EXPECT_EQ(cli(verify_args(trace)).code, kExitVerification);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"ask", "--query", "q?"}).code, kExitUsage);  // no --kg
  auto args = ask_two_hop((dir_ / "t.json").string());
  args.push_back("--frobnicate");
  EXPECT_EQ(cli(args).code, kExitUsage);
  auto no_script = kg_flags();
  no_script.insert(no_script.begin(), "ask");
  for (const auto& f : {"--backend", "scripted", "--query", "q?"}) no_script.push_back(f);
  EXPECT_EQ(cli(no_script).code, kExitUsage);
  auto bad_depth = ask_two_hop((dir_ / "t.json").string());
  bad_depth.push_back("--max-depth");
  bad_depth.push_back("0");
  EXPECT_EQ(cli(bad_depth).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--kg", "k.tsv", (dir_ / "missing.json").string()}).code, kExitUsage);
}

TEST_F(CliTest, UnreachableEndpointIsATransportFailure) {
  std::vector<std::string> args{"ask"};
  for (const auto& f : kg_flags()) args.push_back(f);
  for (const auto& f : {"--backend", "http", "--endpoint", "http://127.0.0.1:9/v1/chat/completions", "--retries",
                        "0", "--timeout", "1", "--query", "Is Virginia Raggi a politician?", "--trace-out"}) {
    args.push_back(f);
  }
  args.push_back((dir_ / "t.json").string());
  EXPECT_EQ(cli(args).code, kExitTransport);
}

TEST_F(CliTest, ExhaustedScriptIsATransportFailure) {
  const auto script = (dir_ / "empty.json").string();
  std::ofstream(script) << "{}";
  std::vector<std::string> args{"ask"};
  for (const auto& f : kg_flags()) args.push_back(f);
  for (const auto& f : {std::string("--backend"), std::string("scripted"), std::string("--script"), script,
                        std::string("--query"), std::string("Is Virginia Raggi a politician?")}) {
    args.push_back(f);
  }
  EXPECT_EQ(cli(args).code, kExitTransport);
}

TEST_F(CliTest, EvalWritesResultsTracesAndMetrics) {
  const auto results = (dir_ / "results.jsonl").string();
  const auto traces = (dir_ / "traces").string();
  std::vector<std::string> args{"eval"};
  for (const auto& f : kg_flags()) args.push_back(f);
  for (const auto& f : {std::string("--backend"), std::string("scripted"), std::string("--script"),
                        (fixture_dir() / "eval4" / "script.json").string(), std::string("--dataset"),
                        (fixture_dir() / "eval4" / "dataset.jsonl").string(), std::string("--results"), results,
                        std::string("--trace-out"), traces, std::string("--workers"), std::string("2")}) {
    args.push_back(f);
  }
  auto run = cli(args);
  ASSERT_EQ(run.code, kExitOk) << run.err;
  auto metrics = nlohmann::json::parse(run.out);
  EXPECT_DOUBLE_EQ(metrics.at("accuracy").get<double>(), 0.75);
  EXPECT_EQ(metrics.at("rejected_citations"), 1);
  EXPECT_TRUE(std::filesystem::exists(results));
  for (const char* id : {"claim-01", "qa-01", "qa-02", "unknown-01"}) {
    const auto trace = traces + "/" + id + ".trace.json";
    ASSERT_TRUE(std::filesystem::exists(trace)) << id;
    EXPECT_EQ(cli(verify_args(trace)).code, kExitOk) << id;
  }
}

TEST_F(CliTest, BaselineAnswersASingleQuery) {
  const auto script = (dir_ / "answer.json").string();
  std::ofstream(script) << R"({"answer": ["Yes, she is."]})";
  std::vector<std::string> args{"baseline"};
  for (const auto& f : kg_flags()) args.push_back(f);
  for (const auto& f : {std::string("--backend"), std::string("scripted"), std::string("--script"), script,
                        std::string("--query"), std::string("Is Virginia Raggi a politician?"),
                        std::string("--trace-out"), (dir_ / "b.trace.json").string()}) {
    args.push_back(f);
  }
  auto run = cli(args);
  ASSERT_EQ(run.code, kExitOk) << run.err;
  EXPECT_NE(run.out.find("answer: Yes"), std::string::npos);
  EXPECT_TRUE(read_trace_file(dir_ / "b.trace.json").baseline);
}

}  // namespace
}  // namespace r3
