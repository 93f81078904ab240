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

#include "obridge/text.hpp"

#include <doctest.h>

#include <random>

using namespace obridge;

TEST_SUITE("text") {
  TEST_CASE("utf8 validation") {
    CHECK(text::is_valid_utf8(""));
    CHECK(text::is_valid_utf8("caf\xC3\xA9"));
    CHECK(text::is_valid_utf8("\xF0\x9F\x92\xA1"));
    CHECK_FALSE(text::is_valid_utf8("\xC3"));
    CHECK_FALSE(text::is_valid_utf8("\xC0\xAF"));          // overlong
    CHECK_FALSE(text::is_valid_utf8("\xED\xA0\x80"));      // surrogate
    CHECK_FALSE(text::is_valid_utf8("\xF4\x90\x80\x80"));  // above U+10FFFF
  }

  TEST_CASE("append and decode are inverse") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> dist(1, 0x10FFFF);
    for (int i = 0; i < 2000; ++i) {
      char32_t cp = dist(rng);
      if (cp >= 0xD800 && cp <= 0xDFFF) continue;
      std::string s;
      text::append_utf8(s, cp);
      std::size_t pos = 0;
      auto back = text::decode_utf8(s, pos);
      REQUIRE(back);
      CHECK(*back == cp);
      CHECK(pos == s.size());
    }
  }

  TEST_CASE("name tokens") {
    CHECK(text::is_name_token("GeneFunction"));
    CHECK(text::is_name_token("gene_ontology"));
    CHECK(text::is_name_token("\xC3\xA9t\xC3\xA9"));
    CHECK_FALSE(text::is_name_token(""));
    CHECK_FALSE(text::is_name_token("a b"));
    CHECK_FALSE(text::is_name_token("a<b"));
    CHECK_FALSE(text::is_name_token("tab\there"));
    CHECK(text::is_name_token(text::to_name_token("imported from TAIR")));
    CHECK(text::is_name_token(text::to_name_token("")));
  }

  TEST_CASE("absolute iri") {
    CHECK(text::is_absolute_iri("http://example.org/x"));
    CHECK(text::is_absolute_iri("urn:isbn:1"));
    CHECK_FALSE(text::is_absolute_iri("ns/GO/"));
    CHECK_FALSE(text::is_absolute_iri("1http://x"));
    CHECK_FALSE(text::is_absolute_iri("http://ex ample"));
  }

  TEST_CASE("case folding") {
    CHECK(text::iequals("Unknown", "unknown"));
    CHECK_FALSE(text::iequals("unknown", "unknowns"));
    CHECK(text::istarts_with("Imported From TAIR", "imported from"));
    CHECK_FALSE(text::istarts_with("import", "imported from"));
  }
}
