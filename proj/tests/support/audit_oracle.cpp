// Copyright 2026 The ondex-bridge Authors
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

#include "audit_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

namespace obridge::testing {

namespace {

bool mentions_cv(const nlohmann::json& j) {
  if (j.is_object()) {
    if (j.contains("cv")) return true;
    for (const auto& [k, v] : j.items()) {
      if (mentions_cv(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (mentions_cv(v)) return true;
    }
  }
  return false;
}

std::string scalar(const nlohmann::json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScanResult scan_corpus(const std::vector<std::filesystem::path>& files) {
  ScanResult res;
  for (const char* e : {"namespace", "data_source", "evidence", "concept_class", "relation_type", "context",
                        "legacy_cv"}) {
    res.values[e];
    res.documents_seen[e] = 0;
  }
  for (const auto& f : files) {
    std::ifstream in(f);
    const auto doc = nlohmann::json::parse(in);
    bool legacy = mentions_cv(doc);
    if (doc.contains("format")) legacy = doc["format"] == "legacy";
    const std::string src_key = legacy ? "cv" : "source";
    const std::string ns_key = legacy ? "cv" : "ns";
    std::set<std::string> seen;
    auto count = [&](const char* element, const std::string& v) {
      ++res.values[element][v];
      seen.insert(element);
    };
    const auto concepts = doc.value("concepts", nlohmann::json::array());
    for (const auto& c : concepts) {
      const std::string cls = c.value("class", std::string("Thing"));
      count("concept_class", cls);
      for (const auto& a : c.value("accessions", nlohmann::json::array())) {
        const auto v = scalar(a[ns_key]);
        count("namespace", v);
        ++res.roles_all[v].first;
        if (legacy) {
          count("legacy_cv", v);
          ++res.roles_legacy[v].first;
        }
      }
      if (c.contains(src_key)) {
        const auto v = scalar(c[src_key]);
        count("data_source", v);
        ++res.roles_all[v].second;
        if (legacy) {
          count("legacy_cv", v);
          ++res.roles_legacy[v].second;
        }
      }
      for (const auto& e : c.value("evidence", nlohmann::json::array())) count("evidence", e.get<std::string>());
      for (const auto& t : c.value("contexts", nlohmann::json::array())) {
        count("context", concepts[t.get<std::size_t>()].value("class", std::string("Thing")));
      }
    }
    for (const auto& r : doc.value("relations", nlohmann::json::array())) {
      count("relation_type", r.value("type", std::string("related_to")));
      if (r.contains(src_key)) {
        const auto v = scalar(r[src_key]);
        count("data_source", v);
        if (legacy) count("legacy_cv", v);
      }
      for (const auto& e : r.value("evidence", nlohmann::json::array())) count("evidence", e.get<std::string>());
    }
    for (const auto& e : seen) ++res.documents_seen[e];
  }
  return res;
}

}  // namespace obridge::testing
