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

#include "obridge/graph.hpp"
#include "obridge/identity.hpp"

#include "errc.hpp"
#include "oracles.hpp"
#include "random_graph.hpp"

#include <doctest.h>

#include <random>

using namespace obridge;
using testing::errc_of;

namespace {

NamespaceRegistry go_only() {
  NamespaceRegistry reg;
  reg.register_namespace({"GO", "http://example.org/ns/GO/", "Gene Ontology", {"gene_ontology"}});
  return reg;
}

// Longest-prefix oracle: try every registered base, keep the longest that
// prefixes the IRI with something left over.
std::optional<std::string> brute_longest(const NamespaceRegistry& reg, const std::string& iri) {
  std::optional<std::string> best;
  std::size_t best_len = 0;
  for (const auto& [prefix, entry] : reg.entries()) {
    const auto& base = entry.base_iri;
    if (iri.size() > base.size() && iri.compare(0, base.size(), base) == 0 && base.size() > best_len) {
      best = prefix;
      best_len = base.size();
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("identity") {
  TEST_CASE("register_namespace") {
    auto reg = go_only();
    CHECK(reg.find("GO") != nullptr);
    CHECK(reg.find("gene_ontology") == reg.find("GO"));
    CHECK(errc_of([&] { reg.register_namespace({"GO", "http://example.org/other/", "", {}}); }) ==
          Errc::DuplicatePrefix);
    CHECK(errc_of([&] { reg.register_namespace({"X", "http://x/", "", {"gene_ontology"}}); }) ==
          Errc::DuplicatePrefix);
    CHECK(errc_of([&] { reg.register_namespace({"REL", "ns/GO/", "", {}}); }) == Errc::RelativeBaseIri);
    CHECK(errc_of([&] { reg.register_namespace({"DUP", "http://example.org/ns/GO/", "", {}}); }) ==
          Errc::DuplicateBaseIri);
    CHECK(errc_of([&] { reg.register_namespace({"NOSEP", "http://example.org/ns/X", "", {}}); }) ==
          Errc::InvalidBaseIri);
  }

  TEST_CASE("mint_uri") {
    auto reg = go_only();
    CHECK(reg.mint_uri({"GO", "0008150"}) == "http://example.org/ns/GO/0008150");
    CHECK(reg.mint_uri({"GO", "a b"}) == "http://example.org/ns/GO/a%20b");
    CHECK(reg.mint_uri({"gene_ontology", "0008150"}) == "http://example.org/ns/GO/0008150");
    CHECK(reg.mint_uri({"GO", "a/b#c%d~e"}) == "http://example.org/ns/GO/a%2Fb%23c%25d~e");
    CHECK(reg.mint_uri({"GO", "\xC3\xA9"}) == "http://example.org/ns/GO/%C3%A9");
    CHECK(errc_of([&] { reg.mint_uri({"UNIGENE", "Hs.2"}); }) == Errc::UnknownNamespace);
  }

  TEST_CASE("parse_uri") {
    auto reg = go_only();
    CHECK(reg.parse_uri("http://example.org/ns/GO/0008150") == Accession{"GO", "0008150"});
    CHECK(errc_of([&] { reg.parse_uri("http://elsewhere.org/x"); }) == Errc::NoMatchingNamespace);
    CHECK(errc_of([&] { reg.parse_uri("http://example.org/ns/GO/"); }) == Errc::NoMatchingNamespace);
    CHECK_FALSE(reg.try_parse_uri("http://example.org/ns/GO/%ZZ"));
  }

  TEST_CASE("nested bases: longest wins") {
    NamespaceRegistry reg;
    reg.register_namespace({"GO", "http://example.org/ns/GO/", "", {}});
    reg.register_namespace({"GOEXT", "http://example.org/ns/GO/ext/", "", {}});
    reg.register_namespace({"EX", "http://example.org/", "", {}});
    CHECK(reg.parse_uri("http://example.org/ns/GO/ext/5") == Accession{"GOEXT", "5"});
    const std::vector<std::string> probes{"http://example.org/ns/GO/ext/5", "http://example.org/ns/GO/ext/",
                                          "http://example.org/ns/GO/x",    "http://example.org/ns/G",
                                          "http://example.org/",           "http://other/"};
    for (const auto& p : probes) {
      auto got = reg.try_parse_uri(p);
      auto want = brute_longest(reg, p);
      CHECK(got.has_value() == want.has_value());
      if (got && want) CHECK(got->ns == *want);
    }
  }

  TEST_CASE("percent coding") {
    CHECK(percent_encode("AZaz09-._~") == "AZaz09-._~");
    CHECK(percent_encode(" ") == "%20");
    CHECK(percent_decode("%c3%A9") == "\xC3\xA9");
    CHECK_FALSE(percent_decode("%FF"));
    CHECK_FALSE(percent_decode("%4"));
  }

  TEST_CASE("registry json") {
    auto reg = parse_registry(R"({"namespaces":[{"prefix":"GO","base_iri":"http://example.org/ns/GO/",
      "authority":"Gene Ontology","aliases":["gene_ontology"]}]})");
    CHECK(reg.find("gene_ontology")->authority == "Gene Ontology");
    CHECK(errc_of([] { parse_registry("{}"); }) == Errc::InvalidConfig);
    CHECK(errc_of([] { parse_registry("not json"); }) == Errc::InvalidConfig);
    CHECK(errc_of([] { load_registry("/nonexistent/registry.json"); }) == Errc::InvalidConfig);
    CHECK(load_registry(OBRIDGE_DATA_DIR "/registry.json").find("GO") != nullptr);
  }

  TEST_CASE("align_graphs examples") {
    auto reg = std::make_shared<NamespaceRegistry>(go_only());
    Graph a(reg);
    Graph b(reg);
    const Accession go{"GO", "0008150"};
    auto ca = a.create_concept("Thing", std::vector<Accession>{go});
    auto cb = b.create_concept("Thing", std::vector<Accession>{go});
    auto m = align_graphs(a, b);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0].left == ca);
    CHECK(m.pairs[0].right == cb);
    CHECK_FALSE(m.pairs[0].ambiguous);

    auto cb2 = b.create_concept("Thing", std::vector<Accession>{go, {"GO", "1"}});
    m = align_graphs(a, b);
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].ambiguous);
    CHECK(m.pairs[1].ambiguous);
    CHECK(m.pairs[1].right == cb2);

    Graph c(reg);
    c.create_concept("Thing", std::vector<Accession>{{"GO", "2"}});
    CHECK(align_graphs(a, c).pairs.empty());

    Graph other(std::make_shared<NamespaceRegistry>(go_only()));
    CHECK(errc_of([&] { align_graphs(a, other); }) == Errc::RegistryMismatch);
  }

  TEST_CASE("align_graphs matches brute force") {
    std::mt19937_64 rng(5);
    auto reg = testing::make_test_registry();
    for (int i = 0; i < 30; ++i) {
      testing::GenParams p{30, 10, 0.2, 12, false};
      auto a = testing::build_graph(testing::random_spec(rng, *reg, p), reg);
      auto b = testing::build_graph(testing::random_spec(rng, *reg, p), reg);
      CHECK(align_graphs(a, b).pairs == testing::brute_force_align(a, b).pairs);
    }
  }
}
