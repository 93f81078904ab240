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

#include "obridge/error.hpp"
#include "obridge/literal.hpp"
#include "errc.hpp"

#include <doctest.h>

using namespace obridge;

TEST_SUITE("literal") {
  TEST_CASE("kind names round trip") {
    for (auto k : {LiteralKind::String, LiteralKind::Integer, LiteralKind::Decimal, LiteralKind::Boolean,
                   LiteralKind::IriRef, LiteralKind::Opaque}) {
      CHECK(kind_from_name(kind_name(k)) == k);
    }
    CHECK_FALSE(kind_from_name("float"));
  }

  TEST_CASE("lexical rules") {
    CHECK(is_valid_lexical(LiteralKind::Integer, "-12"));
    CHECK(is_valid_lexical(LiteralKind::Integer, "+0"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::Integer, "1.0"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::Integer, ""));
    CHECK(is_valid_lexical(LiteralKind::Decimal, "12.5"));
    CHECK(is_valid_lexical(LiteralKind::Decimal, ".5"));
    CHECK(is_valid_lexical(LiteralKind::Decimal, "13."));
    CHECK_FALSE(is_valid_lexical(LiteralKind::Decimal, "1e3"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::Decimal, "."));
    CHECK(is_valid_lexical(LiteralKind::Boolean, "true"));
    CHECK(is_valid_lexical(LiteralKind::Boolean, "0"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::Boolean, "TRUE"));
    CHECK(is_valid_lexical(LiteralKind::IriRef, "http://example.org/a"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::IriRef, "relative/path"));
    CHECK_FALSE(is_valid_lexical(LiteralKind::String, "\xFF"));
  }

  TEST_CASE("construction validates") {
    CHECK(testing::errc_of([] { TypedLiteral(LiteralKind::Integer, "abc"); }) == Errc::MalformedLiteral);
    CHECK(testing::errc_of([] { TypedLiteral(LiteralKind::Decimal, "x"); }) == Errc::MalformedLiteral);
    auto o = TypedLiteral::opaque("AAEC", "java.util.HashMap");
    CHECK(o.is_opaque());
    CHECK(o.origin() == "java.util.HashMap");
  }

  TEST_CASE("literals order by kind, then lexical form") {
    CHECK(TypedLiteral::string("b") < TypedLiteral::integer("1"));
    CHECK(TypedLiteral::decimal("12.5") < TypedLiteral::decimal("13.0"));
  }
}
