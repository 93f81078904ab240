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

#include "obridge/graph.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace obridge {

/// One identifier authority. `base_iri` is absolute and ends in '/' or '#';
/// aliases are historical spellings of the same namespace.
struct NamespaceEntry {
  std::string prefix;
  std::string base_iri;
  std::string authority;
  std::set<std::string> aliases;
};

/// Percent-encodes every byte outside the URI unreserved set (ALPHA DIGIT - . _ ~).
std::string percent_encode(std::string_view s);
/// Inverse of percent_encode; nullopt for a malformed escape or non-UTF-8 result.
std::optional<std::string> percent_decode(std::string_view s);

class NamespaceRegistry {
 public:
  /// Throws DuplicatePrefix (prefix or alias already used), DuplicateBaseIri,
  /// RelativeBaseIri, InvalidBaseIri or InvalidName.
  void register_namespace(NamespaceEntry entry);

  /// Lookup by prefix or alias.
  const NamespaceEntry* find(std::string_view prefix_or_alias) const;
  /// Canonical prefix for a prefix or alias; throws UnknownNamespace.
  const std::string& canonical_prefix(std::string_view prefix_or_alias) const;

  /// base_iri + percent-encoded local id. Throws UnknownNamespace.
  std::string mint_uri(const Accession& accession) const;
  /// Longest matching base IRI wins. Throws NoMatchingNamespace.
  Accession parse_uri(std::string_view iri) const;
  std::optional<Accession> try_parse_uri(std::string_view iri) const;

  const std::map<std::string, NamespaceEntry, std::less<>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, NamespaceEntry, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> names_;  // prefix or alias -> prefix
};

/// Reads `{"namespaces":[{"prefix","base_iri","authority","aliases"}]}`.
/// Throws Error(InvalidConfig) on malformed input.
NamespaceRegistry parse_registry(std::string_view json_text);
NamespaceRegistry load_registry(const std::filesystem::path& path);

struct IdentityPair {
  ConceptHandle left;
  ConceptHandle right;
  std::vector<Accession> shared;  // canonical order
  bool ambiguous = false;         // either side appears in more than one pair
  bool operator==(const IdentityPair&) const = default;
};

struct IdentityMap {
  std::vector<IdentityPair> pairs;  // ordered by (left, right)
};

/// All concept pairs with intersecting accession sets. Both graphs must share
/// one registry instance (RegistryMismatch otherwise).
IdentityMap align_graphs(const Graph& left, const Graph& right);

}  // namespace obridge
