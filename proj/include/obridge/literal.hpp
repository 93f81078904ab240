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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace obridge {

/// The closed set of attribute value types. Order is significant: it is the
/// secondary key of canonical attribute ordering.
enum class LiteralKind : std::uint8_t { String, Integer, Decimal, Boolean, IriRef, Opaque };

std::string_view kind_name(LiteralKind kind);
std::optional<LiteralKind> kind_from_name(std::string_view name);

/// Lexical validation per XML Schema rules (integer, decimal, boolean) and
/// absolute-IRI syntax for IriRef. String and Opaque accept any UTF-8.
bool is_valid_lexical(LiteralKind kind, std::string_view lexical);

/// A value with an explicit datatype. Values are kept in their exact lexical
/// form; "12.5" and "12.50" are different literals.
class TypedLiteral {
 public:
  /// Throws Error(MalformedLiteral) if the lexical form does not validate.
  TypedLiteral(LiteralKind kind, std::string lexical);

  static TypedLiteral string(std::string v) { return {LiteralKind::String, std::move(v)}; }
  static TypedLiteral integer(std::string v) { return {LiteralKind::Integer, std::move(v)}; }
  static TypedLiteral decimal(std::string v) { return {LiteralKind::Decimal, std::move(v)}; }
  static TypedLiteral boolean(bool v) { return {LiteralKind::Boolean, v ? "true" : "false"}; }
  static TypedLiteral iri(std::string v) { return {LiteralKind::IriRef, std::move(v)}; }
  /// Serialized legacy payload. `origin` names what produced it (e.g. a class name).
  static TypedLiteral opaque(std::string payload, std::string origin);

  LiteralKind kind() const noexcept { return kind_; }
  const std::string& lexical() const noexcept { return lexical_; }
  const std::string& origin() const noexcept { return origin_; }
  bool is_opaque() const noexcept { return kind_ == LiteralKind::Opaque; }

  auto operator<=>(const TypedLiteral&) const = default;

 private:
  LiteralKind kind_;
  std::string lexical_;
  std::string origin_;
};

}  // namespace obridge
