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
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace obridge::rdf {

inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

enum class TermKind : std::uint8_t { Iri, Blank, Literal };

/// RDF term. For literals `value` is the lexical form and `datatype` is always
/// set (xsd:string for simple literals, rdf:langString when `lang` is set).
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;
  std::string lang;

  static Term iri(std::string v) { return {TermKind::Iri, std::move(v), {}, {}}; }
  static Term blank(std::string label) { return {TermKind::Blank, std::move(label), {}, {}}; }
  static Term literal(std::string lexical, std::string datatype = std::string(kXsdString)) {
    return {TermKind::Literal, std::move(lexical), std::move(datatype), {}};
  }
  static Term lang_literal(std::string lexical, std::string lang) {
    return {TermKind::Literal, std::move(lexical), std::string(kRdfLangString), std::move(lang)};
  }

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;
  auto operator<=>(const Triple&) const = default;
};

/// Canonical N-Triples form of one term. Simple literals drop ^^xsd:string;
/// literal escapes follow the canonical N-Triples rules.
std::string to_ntriples(const Term& term);
std::string to_ntriples(const Triple& triple);  // without trailing newline

/// Sorts by serialized (subject, predicate, object) bytes and drops duplicates.
void canonical_sort(std::vector<Triple>& triples);

void write_ntriples(std::ostream& out, std::span<const Triple> triples);
std::string serialize_ntriples(std::span<const Triple> triples);

/// Full N-Triples 1.1 grammar. Throws obridge::SyntaxError with line/column.
std::vector<Triple> parse_ntriples(std::string_view bytes);

}  // namespace obridge::rdf
