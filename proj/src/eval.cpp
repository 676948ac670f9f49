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

#include "r3/eval.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "r3/baseline.hpp"
#include "r3/errors.hpp"
#include "r3/llm_backend.hpp"
#include "r3/verify.hpp"

namespace r3 {

std::string_view to_string(DatasetTask task) {
  switch (task) {
    case DatasetTask::Qa: return "qa";
    case DatasetTask::Claim: return "claim";
    case DatasetTask::Preference: return "preference";
  }
  return "qa";
}

namespace {

std::string require_string(const Json& line, const char* key) {
  if (!line.contains(key) || !line.at(key).is_string()) {
    throw ParseError(std::string("item lacks string field '") + key + "'", 0);
  }
  return line.at(key).get<std::string>();
}

std::vector<std::string> string_tuple(const Json& v, std::size_t arity, const char* what) {
  if (!v.is_array() || v.size() != arity) throw ParseError(std::string(what) + " entry has the wrong arity", 0);
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw ParseError(std::string(what) + " entry is not a string", 0);
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

DatasetItem parse_dataset_item(const Json& line) {
  if (!line.is_object()) throw ParseError("item is not a JSON object", 0);
  DatasetItem item;
  item.id = require_string(line, "id");
  if (item.id.empty() || item.id.find_first_of("/\\") != std::string::npos || item.id == "." || item.id == "..") {
    throw ParseError("item id must be a non-empty file-name-safe string", 0);
  }
  const std::string task = require_string(line, "task");
  if (task == "qa") {
    item.task = DatasetTask::Qa;
  } else if (task == "claim") {
    item.task = DatasetTask::Claim;
  } else if (task == "preference") {
    item.task = DatasetTask::Preference;
  } else {
    throw ParseError("unknown task '" + task + "'", 0);
  }
  item.query = require_string(line, "query");
  if (item.query.empty()) throw ParseError("empty query", 0);
  if (line.contains("options")) {
    const Json& options = line.at("options");
    if (!options.is_array()) throw ParseError("options is not an array", 0);
    for (const auto& o : options) {
      if (!o.is_string()) throw ParseError("option is not a string", 0);
      item.options.push_back(o.get<std::string>());
    }
  }
  if (!line.contains("gold")) throw ParseError("item lacks 'gold'", 0);
  const Json& gold = line.at("gold");
  switch (item.task) {
    case DatasetTask::Qa:
    case DatasetTask::Claim: {
      if (!item.options.empty()) throw ParseError(task + " items take no options", 0);
      const std::string yes = item.task == DatasetTask::Qa ? "Yes" : "Correct";
      const std::string no = item.task == DatasetTask::Qa ? "No" : "Incorrect";
      if (!gold.is_string() || (gold != yes && gold != no)) {
        throw ParseError("gold must be \"" + yes + "\" or \"" + no + "\"", 0);
      }
      item.gold.truth = gold == yes ? Truth::True : Truth::False;
      break;
    }
    case DatasetTask::Preference:
      if (item.options.size() < 2) throw ParseError("preference items need at least two options", 0);
      if (!gold.is_number_integer() || gold.get<long long>() < 0 ||
          gold.get<long long>() >= static_cast<long long>(item.options.size())) {
        throw ParseError("gold must be a 0-based option index", 0);
      }
      item.gold.option = gold.get<int>();
      break;
  }
  if (line.contains("kg")) {
    const Json& kg = line.at("kg");
    if (!kg.is_object() || !kg.contains("triples") || !kg.at("triples").is_string()) {
      throw ParseError("kg must be {\"triples\": path, \"labels\": path}", 0);
    }
    item.kg_triples = kg.at("triples").get<std::string>();
    if (kg.contains("labels")) {
      if (!kg.at("labels").is_string()) throw ParseError("kg.labels is not a path", 0);
      item.kg_labels = kg.at("labels").get<std::string>();
    }
  }
  if (line.contains("personal_kg")) {
    if (!line.at("personal_kg").is_array()) throw ParseError("personal_kg is not an array", 0);
    for (const auto& t : line.at("personal_kg")) {
      auto parts = string_tuple(t, 3, "personal_kg");
      item.personal_kg.push_back({parts[0], parts[1], parts[2]});
    }
  }
  if (line.contains("personal_labels")) {
    if (!line.at("personal_labels").is_array()) throw ParseError("personal_labels is not an array", 0);
    for (const auto& l : line.at("personal_labels")) {
      auto parts = string_tuple(l, 2, "personal_labels");
      item.personal_labels.push_back({parts[0], parts[1]});
    }
  }
  return item;
}

Query to_query(const DatasetItem& item) {
  Query q;
  q.text = item.query;
  q.options = item.options;
  q.task = item.task == DatasetTask::Qa      ? TaskKind::QaYesNo
           : item.task == DatasetTask::Claim ? TaskKind::Claim
                                             : TaskKind::MultipleChoice;
  return q;
}

bool is_correct(const DatasetItem& item, const Answer& answer) {
  if (answer.value == Truth::Unknown) return false;
  if (item.gold.option) return answer.selected_option && *answer.selected_option == *item.gold.option;
  return item.gold.truth && answer.value == *item.gold.truth;
}

Json gold_json(const DatasetItem& item) {
  if (item.gold.option) return *item.gold.option;
  if (!item.gold.truth) return nullptr;
  const bool yes = *item.gold.truth == Truth::True;
  if (item.task == DatasetTask::Claim) return yes ? "Correct" : "Incorrect";
  return yes ? "Yes" : "No";
}

DatasetLoad parse_dataset(std::istream& in, const std::filesystem::path& base_dir) {
  DatasetLoad out;
  std::string line;
  std::size_t number = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      DatasetItem item = parse_dataset_item(Json::parse(line));
      if (seen.count(item.id)) throw ParseError("duplicate id '" + item.id + "'", 0);
      if (item.kg_triples && item.kg_triples->is_relative()) item.kg_triples = base_dir / *item.kg_triples;
      if (item.kg_labels && item.kg_labels->is_relative()) item.kg_labels = base_dir / *item.kg_labels;
      seen[item.id] = number;
      out.items.push_back(std::move(item));
    } catch (const std::exception& e) {
      ++out.skipped;
      out.warnings.push_back("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

DatasetLoad load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read dataset " + path.string());
  return parse_dataset(in, path.parent_path());
}

Json ItemResult::to_json() const {
  Json j = Json::object();
  j["id"] = id;
  j["task"] = task;
  j["predicted"] = error ? Json(nullptr) : Json(answer.display);
  j["predicted_value"] = error ? Json(nullptr) : Json(to_string(answer.value));
  j["selected_option"] = answer.selected_option ? Json(*answer.selected_option) : Json(nullptr);
  j["gold"] = gold;
  j["correct"] = correct;
  j["trace"] = trace_path ? Json(*trace_path) : Json(nullptr);
  j["verified"] = verified;
  j["grounding_precision"] = grounding_precision;
  j["rejected_citations"] = rejected_citations;
  j["error"] = error ? Json(*error) : Json(nullptr);
  return j;
}

Json Metrics::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j = Json::object();
  j["items"] = items;
  j["correct"] = correct;
  j["answered"] = answered;
  j["accuracy"] = opt(accuracy);
  j["answer_rate"] = opt(answer_rate);
  j["grounding_precision"] = opt(grounding_precision);
  j["rejected_citations"] = rejected_citations;
  j["errors"] = errors;
  j["verification_failures"] = verification_failures;
  j["skipped"] = skipped;
  return j;
}

Metrics compute_metrics(const std::vector<ItemResult>& results, std::size_t skipped) {
  Metrics m;
  m.items = results.size();
  m.skipped = skipped;
  double precision_sum = 0.0;
  std::size_t precision_count = 0;
  for (const auto& r : results) {
    if (r.correct) ++m.correct;
    if (!r.error && r.answer.value != Truth::Unknown) ++m.answered;
    if (r.error) ++m.errors;
    if (r.checked) {
      if (!r.verified) ++m.verification_failures;
      precision_sum += r.grounding_precision;
      ++precision_count;
    }
    m.rejected_citations += r.rejected_citations;
  }
  if (m.items > 0) {
    m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.items);
    m.answer_rate = static_cast<double>(m.answered) / static_cast<double>(m.items);
  }
  if (precision_count > 0) m.grounding_precision = precision_sum / static_cast<double>(precision_count);
  return m;
}

namespace {

// Base KGs named by items, loaded once and shared.
class KgCache {
 public:
  const KnowledgeGraph& get(const KnowledgeGraph& fallback, const DatasetItem& item) {
    if (!item.kg_triples) return fallback;
    const std::string key = item.kg_triples->string() + "\n" + (item.kg_labels ? item.kg_labels->string() : "");
    std::lock_guard lock(mutex_);
    auto it = graphs_.find(key);
    if (it == graphs_.end()) it = graphs_.emplace(key, load_kg(*item.kg_triples, item.kg_labels)).first;
    return it->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::string, KnowledgeGraph> graphs_;
};

ItemResult run_item(const DatasetItem& item, const KnowledgeGraph& base, const Embedder& embedder,
                    LlmBackend& backend, const EvalOptions& options) {
  ItemResult r;
  r.id = item.id;
  r.task = std::string(to_string(item.task));
  r.gold = gold_json(item);

  std::optional<KnowledgeGraph> merged;
  if (!item.personal_kg.empty() || !item.personal_labels.empty()) {
    merged = base.merged_with(item.personal_kg, item.personal_labels);
  }
  const KnowledgeGraph& kg = merged ? *merged : base;
  const Query query = to_query(item);
  const PromptLibrary& prompts = options.prompts ? *options.prompts : PromptLibrary::defaults();

  ReasoningTrace trace;
  try {
    if (options.baseline) {
      auto b = baseline_retrieve_read(kg, embedder, backend, query, static_cast<std::size_t>(options.config.top_k),
                                      prompts);
      r.answer = b.answer;
      trace = std::move(b.trace);
    } else {
      auto q = answer_query(kg, embedder, backend, query, options.config, prompts);
      r.answer = q.answer;
      r.rejected_citations = q.audit.rejected_citations;
      trace = std::move(q.trace);
    }
  } catch (const TransportError& e) {
    r.error = std::string("transport: ") + e.what();
    return r;
  } catch (const ScriptExhausted& e) {
    r.error = std::string("script exhausted: ") + e.what();
    return r;
  }
  trace.kg = kg_provenance(base.size(), item.personal_kg, item.personal_labels);
  r.correct = is_correct(item, r.answer);

  const auto report = verify_trace(base, trace);
  r.checked = true;
  r.verified = report.ok;
  r.grounding_precision = report.grounding_precision;
  if (options.trace_dir) {
    const auto path = *options.trace_dir / (item.id + ".trace.json");
    write_trace_file(path, trace);
    r.trace_path = path.string();
  }
  return r;
}

}  // namespace

EvalRun run_eval(const DatasetLoad& dataset, const KnowledgeGraph& kg, const Embedder& embedder,
                 const BackendProvider& backends, const EvalOptions& options) {
  options.config.validate();
  EvalRun run;
  run.results.resize(dataset.items.size());
  KgCache cache;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < dataset.items.size(); i = next++) {
      try {
        const DatasetItem& item = dataset.items[i];
        run.results[i] = run_item(item, cache.get(kg, item), embedder, backends(item), options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, dataset.items.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  run.metrics = compute_metrics(run.results, dataset.skipped);
  return run;
}

void write_results(const std::filesystem::path& path, const std::vector<ItemResult>& results) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    for (const auto& r : results) out << r.to_json().dump() << "\n";
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace r3
