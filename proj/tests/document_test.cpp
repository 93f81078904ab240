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

#include "obridge/document.hpp"
#include "obridge/identity.hpp"

#include "errc.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace obridge;
using testing::errc_of;

namespace {

std::shared_ptr<NamespaceRegistry> registry() {
  return std::make_shared<NamespaceRegistry>(load_registry(OBRIDGE_DATA_DIR "/registry.json"));
}

const char* kNative = R"({
  "classes": [{"id": "Gene"}, {"id": "Protein", "parent": "Thing"}],
  "relation_types": [{"id": "encodes"}],
  "concepts": [
    {"class": "Gene", "accessions": [{"ns": "TAIR", "id": "AT1G01010"}], "source": "TAIR10",
     "attrs": [{"name": "symbol", "type": "string", "value": "NAC001", "basis": "asserted"}]},
    {"class": "Protein", "accessions": [{"ns": "UNIPROT", "id": "Q0WV96"}], "contexts": [0],
     "attrs": [{"name": "len", "type": "integer", "value": "429", "basis": "derived",
                "depends_on": [{"concept": 0, "attr": "symbol"}]}]}
  ],
  "relations": [{"from": 0, "to": 1, "type": "encodes", "basis": "asserted", "evidence": ["IDA"], "attrs": []}]
})";

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("native documents parse") {
    auto doc = parse_document(kNative, "n.json");
    CHECK(doc.format == DocFormat::Native);
    REQUIRE(doc.concepts.size() == 2);
    CHECK(doc.concepts[0].accessions[0].ns == "TAIR");
    CHECK(doc.concepts[1].attrs[0].depends_on[0].concept_index == 0);
    CHECK(doc.relations[0].evidence == std::vector<std::string>{"IDA"});
  }

  TEST_CASE("format detection") {
    CHECK(parse_document(R"({"concepts":[{"class":"A","cv":"x"}]})", "d").format == DocFormat::Legacy);
    CHECK(parse_document(R"({"format":"legacy","concepts":[]})", "d").format == DocFormat::Legacy);
    CHECK(parse_document(R"({"concepts":[]})", "d").format == DocFormat::Native);
    CHECK(parse_document(R"({"concepts":[]})", "d", DocFormat::Legacy).format == DocFormat::Legacy);
  }

  TEST_CASE("parse failures name the location") {
    try {
      parse_document(R"({"concepts":[{"class":"A","accessions":[{"ns":"GO"}]}]})", "bad.json");
      FAIL("expected a parse failure");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseFailure);
      CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
      CHECK(std::string(e.what()).find("concepts[0].accessions[0]") != std::string::npos);
    }
    CHECK(errc_of([] { parse_document("[1,", "x"); }) == Errc::ParseFailure);
    CHECK(errc_of([] { parse_document(R"({"relations":[{"from":0,"to":0}]})", "x"); }) == Errc::ParseFailure);
    CHECK(errc_of([] { load_document("/no/such/file.json"); }) == Errc::ParseFailure);
  }

  TEST_CASE("native to_graph is strict") {
    auto g = to_graph(parse_document(kNative, "n.json"), registry());
    CHECK(g.frozen());
    CHECK(g.concepts().size() == 2);
    CHECK(g.find_data_source("TAIR10") != nullptr);
    CHECK(errc_of([] {
            to_graph(parse_document(R"({"concepts":[{"class":"Thing","attrs":[{"name":"a","type":"string","value":"v"}]}]})",
                                    "x"),
                     registry());
          }) == Errc::InvalidBasis);
    CHECK(errc_of([] { to_graph(parse_document(R"({"concepts":[{"class":"Undeclared"}]})", "x"), registry()); }) ==
          Errc::UnknownClass);
  }

  TEST_CASE("native documents survive graph and back") {
    auto reg = registry();
    auto g = to_graph(parse_document(kNative, "n.json"), reg);
    const auto text = write_native(from_graph(g));
    auto again = to_graph(parse_document(text, "again.json"), reg);
    CHECK(testing::isomorphic(g, again));
    CHECK(write_native(from_graph(again)) == text);
  }

  TEST_CASE("legacy normalization") {
    const char* legacy = R"({
      "format": "legacy",
      "concepts": [
        {"class": "Gene", "accessions": [{"cv": "gene_ontology", "id": "0008150"}], "cv": "imported from TAIR",
         "attrs": [{"name": "symbol", "type": "string", "value": "a"},
                   {"name": "symbol", "type": "string", "value": "b"}]},
        {"accessions": [{"cv": "UNIPROT", "id": "P1"}], "cv": "UNIPROT"}
      ],
      "relations": [{"from": 0, "to": 1, "type": "encodes", "basis": "derived",
                     "depends_on": [{"concept": 0, "attr": "symbol"}], "evidence": ["IEA"]}]
    })";
    std::vector<std::string> notes;
    auto g = to_graph(parse_document(legacy, "l.json"), registry(), &notes);
    REQUIRE(g.concepts().size() == 2);
    const auto& c0 = g.concepts()[0];
    CHECK(c0.accessions.begin()->ns == "GO");
    CHECK(c0.source.has_value());
    CHECK(g.find_data_source(*c0.source) != nullptr);
    CHECK(g.get_attributes(c0.handle, std::string_view("symbol")).size() == 2);
    CHECK(g.concepts()[1].class_id == "Thing");
    CHECK(g.concepts()[1].source == std::optional<std::string>("UNIPROT"));
    CHECK(g.relations()[0].evidence.empty());
    auto mentions = [&](const std::string& s) {
      return std::any_of(notes.begin(), notes.end(), [&](const std::string& n) { return n.find(s) != std::string::npos; });
    };
    CHECK(mentions("R2"));
    CHECK(mentions("evidence \"IEA\" dropped"));
    CHECK(mentions("undeclared class \"Gene\""));
  }

  TEST_CASE("legacy accession cv must be registered") {
    const char* legacy = R"({"format":"legacy","concepts":[{"accessions":[{"cv":"NOPE","id":"1"}]}]})";
    CHECK(errc_of([&] { to_graph(parse_document(legacy, "l.json"), registry()); }) == Errc::UnknownNamespace);
  }

  TEST_CASE("fixture corpora load") {
    for (const char* dir : {"/corpus/clean_native/", "/corpus/cv_examples/"}) {
      for (const auto& e : std::filesystem::directory_iterator(std::string(OBRIDGE_DATA_DIR) + dir)) {
        CHECK_NOTHROW(to_graph(load_document(e.path()), registry()));
      }
    }
  }
}
