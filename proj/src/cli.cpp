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

#include "r3/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "r3/baseline.hpp"
#include "r3/embedder.hpp"
#include "r3/errors.hpp"
#include "r3/eval.hpp"
#include "r3/http_backend.hpp"
#include "r3/scripted_backend.hpp"
#include "r3/search.hpp"
#include "r3/verify.hpp"

namespace r3 {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string kg;
  std::string labels;
  std::string backend = "scripted";
  std::string script;
  std::string endpoint;
  std::string model = "gpt-3.5-turbo";
  std::string api_key;
  double timeout = 60.0;
  int retries = 3;
  int top_k = 10;
  int max_breadth = 2;
  int max_depth = 3;
  int llm_window = 40;
  std::string seed_docs;
  std::string embed_endpoint;
  std::string embed_model;
  std::size_t embed_dim = HashingEmbedder::kDefaultDimension;
};

void add_kg_flags(CLI::App& cmd, CommonFlags& f, bool kg_required) {
  auto* kg = cmd.add_option("--kg", f.kg, "Triples TSV (head, relation, tail)");
  if (kg_required) kg->required();
  cmd.add_option("--labels", f.labels, "Labels TSV (id, label); repeated ids are aliases");
}

void add_engine_flags(CLI::App& cmd, CommonFlags& f) {
  add_kg_flags(cmd, f, true);
  cmd.add_option("--backend", f.backend, "LLM backend")->check(CLI::IsMember({"scripted", "http"}));
  cmd.add_option("--script", f.script, "Scripted responses (JSON)");
  cmd.add_option("--endpoint", f.endpoint, "Chat-completions URL for --backend http");
  cmd.add_option("--model", f.model, "Model name sent to the endpoint");
  cmd.add_option("--api-key", f.api_key, "Credential (default: $R3_LLM_API_KEY)");
  cmd.add_option("--timeout", f.timeout, "Per-call timeout in seconds")->check(CLI::PositiveNumber);
  cmd.add_option("--retries", f.retries, "Extra attempts on transient failures")->check(CLI::NonNegativeNumber);
  cmd.add_option("--top-k", f.top_k, "Triples retrieved per pruning step")->check(CLI::PositiveNumber);
  cmd.add_option("--max-breadth", f.max_breadth, "Axioms surfaced per option")->check(CLI::PositiveNumber);
  cmd.add_option("--max-depth", f.max_depth, "Evidence expansions per axiom")->check(CLI::PositiveNumber);
  cmd.add_option("--llm-window", f.llm_window, "Candidates shown for LLM triple selection")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed-docs", f.seed_docs, "Directory of <role>.txt prompt templates overriding the defaults")
      ->check(CLI::ExistingDirectory);
  cmd.add_option("--embed-endpoint", f.embed_endpoint, "Embeddings URL (default: built-in hashing embedder)");
  cmd.add_option("--embed-model", f.embed_model, "Embedding model name");
  cmd.add_option("--embed-dim", f.embed_dim, "Embedding dimension")->check(CLI::PositiveNumber);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

KnowledgeGraph load_graph(const CommonFlags& f) {
  return load_kg(f.kg, f.labels.empty() ? std::nullopt : std::optional<fs::path>(f.labels));
}

SearchConfig search_config(const CommonFlags& f) {
  SearchConfig c;
  c.max_breadth = f.max_breadth;
  c.max_depth = f.max_depth;
  c.top_k = f.top_k;
  c.llm_window = f.llm_window;
  return c;
}

std::unique_ptr<Embedder> make_embedder(const CommonFlags& f) {
  if (f.embed_endpoint.empty()) return std::make_unique<HashingEmbedder>(f.embed_dim);
  HttpEmbedderConfig c;
  c.endpoint = f.embed_endpoint;
  c.model = f.embed_model;
  c.api_key = f.api_key;
  c.dimension = f.embed_dim;
  c.timeout_seconds = f.timeout;
  c.retries = f.retries;
  return std::make_unique<HttpEmbedder>(c);
}

PromptLibrary make_prompts(const CommonFlags& f) {
  return f.seed_docs.empty() ? PromptLibrary::defaults() : PromptLibrary::with_overrides(f.seed_docs);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Backends for one invocation: a single shared backend, or one scripted
// backend per dataset item when the script is {"items": {id: roles}}.
class Backends {
 public:
  explicit Backends(const CommonFlags& f) {
    if (f.backend == "http") {
      if (f.endpoint.empty()) throw UsageError("--backend http requires --endpoint");
      HttpBackendConfig c;
      c.endpoint = f.endpoint;
      c.model = f.model;
      c.api_key = f.api_key;
      c.timeout_seconds = f.timeout;
      c.retries = f.retries;
      shared_ = std::make_unique<HttpBackend>(c);
      return;
    }
    if (f.script.empty()) throw UsageError("--backend scripted requires --script");
    auto script = read_json_file(f.script);
    if (script.is_object() && script.contains("items")) {
      const auto& items = script.at("items");
      if (!items.is_object()) throw UsageError("script 'items' must map item ids to role scripts");
      for (const auto& [id, roles] : items.items()) per_item_.emplace(id, std::make_unique<ScriptedBackend>(roles));
      empty_ = std::make_unique<ScriptedBackend>();
    } else {
      shared_ = std::make_unique<ScriptedBackend>(script);
    }
  }

  bool per_item() const { return !shared_; }

  LlmBackend& shared() {
    if (!shared_) throw UsageError("a per-item script needs a dataset");
    return *shared_;
  }

  LlmBackend& for_item(const DatasetItem& item) {
    if (shared_) return *shared_;
    auto it = per_item_.find(item.id);
    return it == per_item_.end() ? *empty_ : *it->second;
  }

 private:
  std::unique_ptr<LlmBackend> shared_;
  std::map<std::string, std::unique_ptr<ScriptedBackend>> per_item_;
  std::unique_ptr<ScriptedBackend> empty_;
};

Query make_query(const std::string& text, const std::vector<std::string>& options, const std::string& task) {
  Query q;
  q.text = text;
  q.options = options;
  if (task == "claim") {
    q.task = TaskKind::Claim;
  } else if (task == "preference" || (task.empty() && !options.empty())) {
    q.task = TaskKind::MultipleChoice;
  } else {
    q.task = TaskKind::QaYesNo;
  }
  if (q.task == TaskKind::MultipleChoice && q.options.empty()) throw UsageError("--task preference needs --options");
  if (q.task != TaskKind::MultipleChoice && !q.options.empty()) throw UsageError("--options needs --task preference");
  return q;
}

int cmd_ask(const CommonFlags& f, const std::string& query_text, const std::vector<std::string>& options,
            const std::string& task, std::string trace_out, bool baseline, std::ostream& out) {
  const KnowledgeGraph kg = load_graph(f);
  const auto embedder = make_embedder(f);
  const PromptLibrary prompts = make_prompts(f);
  Backends backends(f);
  const Query query = make_query(query_text, options, task);

  Answer answer;
  ReasoningTrace trace;
  if (baseline) {
    auto r = baseline_retrieve_read(kg, *embedder, backends.shared(), query, static_cast<std::size_t>(f.top_k),
                                    prompts);
    answer = r.answer;
    trace = std::move(r.trace);
  } else {
    auto r = answer_query(kg, *embedder, backends.shared(), query, search_config(f), prompts);
    answer = r.answer;
    trace = std::move(r.trace);
  }
  if (trace_out.empty()) trace_out = baseline ? "r3-baseline.trace.json" : "r3-ask.trace.json";
  write_trace_file(trace_out, trace);
  out << "answer: " << answer.display << "\n";
  out << "trace: " << trace_out << "\n";
  const auto report = verify_trace(kg, trace);
  if (!report.ok) {
    for (const auto& v : report.violations) out << "violation " << v.rule << " @" << v.seq << ": " << v.detail << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_eval(const CommonFlags& f, const std::string& dataset_path, const std::string& trace_out,
             std::string results_path, std::size_t workers, bool baseline, std::ostream& out, std::ostream& err) {
  const KnowledgeGraph kg = load_graph(f);
  const auto embedder = make_embedder(f);
  const PromptLibrary prompts = make_prompts(f);
  Backends backends(f);
  const DatasetLoad dataset = load_dataset(dataset_path);
  for (const auto& w : dataset.warnings) err << "warning: skipped dataset " << w << "\n";

  EvalOptions options;
  options.config = search_config(f);
  options.baseline = baseline;
  if (!trace_out.empty()) options.trace_dir = fs::path(trace_out);
  options.prompts = &prompts;
  options.workers = workers;
  if (f.backend == "scripted" && !backends.per_item() && workers > 1) {
    err << "warning: a shared script is consumed in item order; running with one worker\n";
    options.workers = 1;
  }

  const EvalRun run =
      run_eval(dataset, kg, *embedder, [&](const DatasetItem& item) -> LlmBackend& { return backends.for_item(item); },
               options);
  if (results_path.empty()) results_path = trace_out.empty() ? "results.jsonl" : (fs::path(trace_out) / "results.jsonl").string();
  write_results(results_path, run.results);

  Json summary = run.metrics.to_json();
  summary["results"] = results_path;
  out << summary.dump(2) << "\n";
  for (const auto& r : run.results) {
    if (r.error) err << "error: item " << r.id << ": " << *r.error << "\n";
  }
  if (run.metrics.verification_failures > 0) return kExitVerification;
  if (run.metrics.errors > 0) return kExitTransport;
  return kExitOk;
}

int cmd_verify(const CommonFlags& f, const std::string& trace_path, std::ostream& out, std::ostream& err) {
  const KnowledgeGraph kg = load_graph(f);
  ReasoningTrace trace;
  VerificationReport report;
  try {
    trace = read_trace_file(trace_path);
    report = verify_trace(kg, trace);
  } catch (const TraceSchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitVerification;
  }
  Json j = Json::object();
  j["ok"] = report.ok;
  j["grounding_precision"] = report.grounding_precision;
  j["citations"] = report.citations;
  j["steps_checked"] = report.steps_checked;
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(Json{{"seq", v.seq}, {"rule", v.rule}, {"detail", v.detail}});
  j["violations"] = std::move(violations);
  out << j.dump(2) << "\n";
  return report.ok ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grounded, verifiable question answering over a knowledge graph", "r3"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  CommonFlags flags;
  std::string query_text;
  std::vector<std::string> options;
  std::string task;
  std::string trace_out;
  std::string dataset;
  std::string results;
  std::string trace_path;
  std::size_t workers = 1;

  auto* ask = app.add_subcommand("ask", "Answer one query and write its trace");
  add_engine_flags(*ask, flags);
  ask->add_option("--query", query_text, "Question or claim")->required();
  ask->add_option("--options", options, "Answer options (multiple choice)");
  ask->add_option("--task", task, "Query kind")->check(CLI::IsMember({"qa", "claim", "preference"}));
  ask->add_option("--trace-out", trace_out, "Trace file to write");

  auto* eval = app.add_subcommand("eval", "Run a JSONL dataset and report metrics");
  add_engine_flags(*eval, flags);
  eval->add_option("--dataset", dataset, "Dataset JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--trace-out", trace_out, "Directory for <id>.trace.json files");
  eval->add_option("--results", results, "Per-item results JSONL");
  eval->add_option("--workers", workers, "Items evaluated concurrently")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Check a trace file against the KG");
  add_kg_flags(*verify, flags, true);
  verify->add_option("--trace,trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);

  auto* baseline = app.add_subcommand("baseline", "Retrieve-and-read baseline (one query or a dataset)");
  add_engine_flags(*baseline, flags);
  auto* bq = baseline->add_option("--query", query_text, "Question or claim");
  auto* bd = baseline->add_option("--dataset", dataset, "Dataset JSONL")->check(CLI::ExistingFile);
  bq->excludes(bd);
  baseline->add_option("--options", options, "Answer options (multiple choice)");
  baseline->add_option("--task", task, "Query kind")->check(CLI::IsMember({"qa", "claim", "preference"}));
  baseline->add_option("--trace-out", trace_out, "Trace file (query) or directory (dataset)");
  baseline->add_option("--results", results, "Per-item results JSONL");
  baseline->add_option("--workers", workers, "Items evaluated concurrently")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("r3");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (ask->parsed()) return cmd_ask(flags, query_text, options, task, trace_out, false, out);
    if (eval->parsed()) return cmd_eval(flags, dataset, trace_out, results, workers, false, out, err);
    if (verify->parsed()) return cmd_verify(flags, trace_path, out, err);
    if (baseline->parsed()) {
      if (!dataset.empty()) return cmd_eval(flags, dataset, trace_out, results, workers, true, out, err);
      if (query_text.empty()) throw UsageError("baseline needs --query or --dataset");
      return cmd_ask(flags, query_text, options, task, trace_out, true, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ScriptExhausted& e) {
    err << "script exhausted: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace r3
