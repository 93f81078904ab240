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

#include "obridge/cli.hpp"
#include "obridge/document.hpp"
#include "obridge/identity.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace obridge;
namespace fs = std::filesystem;

namespace {

const std::string kData = OBRIDGE_DATA_DIR;
const std::string kRegistry = kData + "/registry.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ondex-bridge");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "ondex-bridge-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("convert legacy to ntriples") {
    auto r = run({"convert", kData + "/corpus/cv_examples/arrays.json", "--to", "ntriples", "--registry", kRegistry});
    CHECK(r.code == 0);
    CHECK(r.out.find("<http://example.org/ns/GO/0006805> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type>") !=
          std::string::npos);
    CHECK(r.out.find("note:") == std::string::npos);
    CHECK(r.err.find("note:") != std::string::npos);
  }

  TEST_CASE("native round trip through ntriples") {
    const auto src = kData + "/corpus/clean_native/pathway.json";
    const auto nt = scratch("pathway.nt");
    const auto back = scratch("pathway.json");
    REQUIRE(run({"convert", src, "--to", "ntriples", "--out", nt.string(), "--registry", kRegistry,
                 "--include-instance-basis"})
                .code == 0);
    auto r = run({"convert", nt.string(), "--from", "ntriples", "--to", "native", "--out", back.string(),
                  "--registry", kRegistry, "--include-instance-basis"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    auto reg = std::make_shared<NamespaceRegistry>(load_registry(kRegistry));
    auto a = to_graph(load_document(src), reg);
    auto b = to_graph(load_document(back), reg);
    std::string why;
    CHECK_MESSAGE(testing::isomorphic(a, b, &why), why);
  }

  TEST_CASE("convert failures") {
    CHECK(run({"convert", "/no/such/input.json"}).code == 2);
    CHECK(run({"convert", kData + "/corpus/lint_r1_r8/a.json", "--registry", kRegistry}).code == 3);
    CHECK(run({"convert", kData + "/corpus/lint_r1_r8/a.json", "--registry", kRegistry, "--allow-opaque"}).code == 0);
    CHECK(run({"convert", kData + "/corpus/cv_examples/arrays.json"}).code == 2);
    CHECK(run({"convert", kData + "/corpus/cv_examples/arrays.json", "--to", "turtle"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }

  TEST_CASE("lint exit codes and formats") {
    auto clean = run({"lint", kData + "/corpus/clean_native", "--registry", kRegistry});
    CHECK(clean.code == 0);
    CHECK(clean.out.empty());
    auto dirty = run({"lint", kData + "/corpus/lint_r1_r8", "--registry", kRegistry});
    CHECK(dirty.code == 1);
    CHECK(dirty.out.find("ERROR R4") != std::string::npos);
    auto json = run({"lint", kData + "/corpus/lint_r1_r8", "--format", "json"});
    CHECK(json.code == 1);
    auto arr = nlohmann::json::parse(json.out);
    CHECK(arr.is_array());
    CHECK(arr.size() == 8);
    CHECK(run({"lint", "/no/such/doc.json"}).code == 2);
    const auto rules = scratch("rules.json");
    write(rules, R"({"severity":{"R4":"warning"}})");
    CHECK(run({"lint", kData + "/corpus/lint_r1_r8", "--rules", rules.string()}).code == 0);
    write(rules, R"({"enabled":["R99"]})");
    CHECK(run({"lint", kData + "/corpus/lint_r1_r8", "--rules", rules.string()}).code == 2);
  }

  TEST_CASE("audit") {
    auto r = run({"audit", kData + "/corpus/cv_examples", "--registry", kRegistry});
    CHECK(r.code == 0);
    CHECK(r.out.find("P3 format-as-namespace: NWB") != std::string::npos);
    CHECK(r.out.find("P4 dual-role") != std::string::npos);
    CHECK(r.out.find("R5 UninformativeProvenance: 1 (unknown x1)") != std::string::npos);
    CHECK(r.out.find("R6 NonAuthorityNamespace: 4 (AFFYMETRIX x1, BROAD x1, NWB x2)") != std::string::npos);

    const auto empty = scratch("empty-corpus");
    fs::create_directories(empty);
    auto e = run({"audit", empty.string(), "--format", "json"});
    CHECK(e.code == 0);
    CHECK(nlohmann::json::parse(e.out)["documents"] == 0);

    CHECK(run({"audit", empty.string(), "--templates", "/no/such/templates.json"}).code == 2);
    const auto partial = scratch("partial-templates.json");
    write(partial, R"({"elements":{"namespace":{"intended":"a","normative":"b","best_practices":"c","recommendations":"d"}}})");
    CHECK(run({"audit", empty.string(), "--templates", partial.string()}).code == 2);
    CHECK(run({"audit", empty.string(), "--templates", kData + "/templates.json"}).code == 0);

    const auto out = scratch("report.txt");
    auto w = run({"audit", kData + "/corpus/cv_examples", "--out", out.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    CHECK(fs::file_size(out) > 0);
  }

  TEST_CASE("mint") {
    auto r = run({"mint", "GO", "0008150", "--registry", kRegistry});
    CHECK(r.code == 0);
    CHECK(r.out == "http://example.org/ns/GO/0008150\n");
    CHECK(run({"mint", "gene_ontology", "0008150", "--registry", kRegistry}).out == r.out);
    auto bad = run({"mint", "NOPE", "1", "--registry", kRegistry});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK_FALSE(bad.err.empty());
  }

  TEST_CASE("registry from the environment") {
    ::setenv("ONDEX_BRIDGE_REGISTRY", kRegistry.c_str(), 1);
    auto r = run({"mint", "GO", "1"});
    ::unsetenv("ONDEX_BRIDGE_REGISTRY");
    CHECK(r.code == 0);
    CHECK(r.out == "http://example.org/ns/GO/1\n");
    CHECK(run({"mint", "GO", "1"}).code == 2);
  }
}
