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

#include "obridge/literal.hpp"

#include "obridge/error.hpp"
#include "obridge/text.hpp"

namespace obridge {

std::string_view kind_name(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::String: return "string";
    case LiteralKind::Integer: return "integer";
    case LiteralKind::Decimal: return "decimal";
    case LiteralKind::Boolean: return "boolean";
    case LiteralKind::IriRef: return "iri_ref";
    case LiteralKind::Opaque: return "opaque";
  }
  return "string";
}

std::optional<LiteralKind> kind_from_name(std::string_view name) {
  for (auto k : {LiteralKind::String, LiteralKind::Integer, LiteralKind::Decimal,
                 LiteralKind::Boolean, LiteralKind::IriRef, LiteralKind::Opaque}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

bool digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return s;
}

}  // namespace

bool is_valid_lexical(LiteralKind kind, std::string_view lexical) {
  switch (kind) {
    case LiteralKind::String:
    case LiteralKind::Opaque:
      return text::is_valid_utf8(lexical);
    case LiteralKind::Integer:
      return digits(strip_sign(lexical));
    case LiteralKind::Decimal: {
      // (\+|-)?([0-9]+(\.[0-9]*)?|\.[0-9]+)
      const auto body = strip_sign(lexical);
      const auto dot = body.find('.');
      if (dot == std::string_view::npos) return digits(body);
      const auto whole = body.substr(0, dot);
      const auto frac = body.substr(dot + 1);
      if (whole.empty()) return digits(frac);
      return digits(whole) && (frac.empty() || digits(frac));
    }
    case LiteralKind::Boolean:
      return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
    case LiteralKind::IriRef:
      return text::is_absolute_iri(lexical);
  }
  return false;
}

TypedLiteral::TypedLiteral(LiteralKind kind, std::string lexical)
    : kind_(kind), lexical_(std::move(lexical)) {
  if (!is_valid_lexical(kind_, lexical_)) {
    throw Error(Errc::MalformedLiteral,
                "\"" + lexical_ + "\" is not a valid " + std::string(kind_name(kind_)));
  }
}

TypedLiteral TypedLiteral::opaque(std::string payload, std::string origin) {
  TypedLiteral lit(LiteralKind::Opaque, std::move(payload));
  if (!text::is_valid_utf8(origin)) {
    throw Error(Errc::MalformedLiteral, "opaque origin is not valid UTF-8");
  }
  lit.origin_ = std::move(origin);
  return lit;
}

}  // namespace obridge
