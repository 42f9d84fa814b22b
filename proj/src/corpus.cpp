// Copyright 2026 The dockmock Authors. All Rights Reserved.
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

#include "dockmock/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "dockmock/engine.hpp"

namespace dockmock {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ManifestFault("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path relative_to(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<double> ratio(int num, int den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / den;
}

}  // namespace

Counts& Counts::operator+=(const Counts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

std::vector<CorpusCase> load_manifest(const fs::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ManifestFault(path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw ManifestFault(path.string() + ": expected an array of cases");
  fs::path base = path.parent_path();
  std::vector<CorpusCase> cases;
  for (const auto& entry : doc) {
    try {
      CorpusCase c;
      c.dockerfile = relative_to(base, entry.at("dockerfile").get<std::string>());
      c.name = entry.value("name", c.dockerfile.string());
      c.workspace = entry.contains("workspace")
                        ? relative_to(base, entry.at("workspace").get<std::string>())
                        : c.dockerfile.parent_path();
      if (entry.contains("priors") && !entry.at("priors").is_null()) {
        c.priors = relative_to(base, entry.at("priors").get<std::string>());
      }
      for (const auto& l : entry.value("labels", nlohmann::json::array())) {
        std::string code = l.at("type").get<std::string>();
        auto type = fault_from_code(code);
        if (!type) throw ManifestFault("unknown fault type '" + code + "'");
        c.labels.push_back({l.at("line").get<int>(), *type});
      }
      cases.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw ManifestFault(path.string() + ": malformed case: " + e.what());
    }
  }
  return cases;
}

Counts match_warnings(const std::vector<Warning>& warnings, const std::vector<FaultLabel>& labels,
                      std::map<FaultType, Counts>* per_type) {
  Counts c;
  std::vector<bool> used(labels.size(), false);
  for (const auto& w : warnings) {
    bool hit = false;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (!used[i] && labels[i].line == w.line && labels[i].fault_type == w.fault_type) {
        used[i] = true;
        hit = true;
        break;
      }
    }
    (hit ? c.tp : c.fp)++;
    if (per_type) ((*per_type)[w.fault_type].*(hit ? &Counts::tp : &Counts::fp))++;
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    if (used[i]) continue;
    ++c.fn;
    if (per_type) (*per_type)[labels[i].fault_type].fn++;
  }
  return c;
}

Metrics compute_metrics(std::vector<CaseResult> cases,
                        const std::vector<std::vector<FaultLabel>>& labels) {
  Metrics m;
  for (size_t i = 0; i < cases.size(); ++i) {
    cases[i].counts = match_warnings(cases[i].warnings, labels[i], &m.per_fault_type);
    m.total += cases[i].counts;
  }
  m.recall = ratio(m.total.tp, m.total.tp + m.total.fn);
  m.precision = ratio(m.total.tp, m.total.tp + m.total.fp);
  m.cases = std::move(cases);
  return m;
}

Metrics evaluate(const std::vector<CorpusCase>& cases, AnalysisOptions options, unsigned jobs) {
  std::vector<CaseResult> results(cases.size());
  std::vector<std::string> errors(cases.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<size_t>(1, cases.size()));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < cases.size(); i = next++) {
      const CorpusCase& c = cases[i];
      try {
        auto ws = std::make_shared<const Workspace>(scan_workspace(c.workspace));
        std::optional<SnapshotStore> store;
        if (c.priors) store = SnapshotStore::load(*c.priors);
        AnalysisReport report =
            analyze_text(read_file(c.dockerfile), ws, store ? &*store : nullptr, options);
        results[i] = {c.name, {}, std::move(report.warnings)};
      } catch (const std::exception& e) {
        errors[i] = c.name + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw ManifestFault(e);
  }
  std::vector<std::vector<FaultLabel>> labels;
  for (const auto& c : cases) labels.push_back(c.labels);
  return compute_metrics(std::move(results), labels);
}

Metrics evaluate(const fs::path& manifest, AnalysisOptions options, unsigned jobs) {
  return evaluate(load_manifest(manifest), options, jobs);
}

namespace {

nlohmann::ordered_json counts_json(const Counts& c) {
  nlohmann::ordered_json o;
  o["tp"] = c.tp;
  o["fp"] = c.fp;
  o["fn"] = c.fn;
  return o;
}

nlohmann::ordered_json ratio_json(const std::optional<double>& r) {
  return r ? nlohmann::ordered_json(*r) : nlohmann::ordered_json(nullptr);
}

std::string ratio_text(const std::optional<double>& r) {
  if (!r) return "N/A";
  std::ostringstream ss;
  ss.precision(1);
  ss << std::fixed << *r * 100 << "%";
  return ss.str();
}

}  // namespace

std::string metrics_json(const Metrics& m) {
  nlohmann::ordered_json o;
  o["matching"] = kMatchingRule;
  o["tp"] = m.total.tp;
  o["fp"] = m.total.fp;
  o["fn"] = m.total.fn;
  o["recall"] = ratio_json(m.recall);
  o["precision"] = ratio_json(m.precision);
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [type, c] : m.per_fault_type) per[std::string(fault_code(type))] = counts_json(c);
  o["per_fault_type"] = per;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& c : m.cases) {
    nlohmann::ordered_json e = counts_json(c.counts);
    e["name"] = c.name;
    cases.push_back(std::move(e));
  }
  o["cases"] = cases;
  return o.dump(2) + "\n";
}

std::string metrics_text(const Metrics& m) {
  std::ostringstream out;
  out << "matching: " << kMatchingRule << "\n";
  out << "cases: " << m.cases.size() << "\n";
  out << "tp=" << m.total.tp << " fp=" << m.total.fp << " fn=" << m.total.fn << "\n";
  out << "recall: " << ratio_text(m.recall) << "\n";
  out << "precision: " << ratio_text(m.precision) << "\n";
  for (const auto& [type, c] : m.per_fault_type) {
    out << "  " << fault_code(type) << ": tp=" << c.tp << " fp=" << c.fp << " fn=" << c.fn << "\n";
  }
  return out.str();
}

}  // namespace dockmock
