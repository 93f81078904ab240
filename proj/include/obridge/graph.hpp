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

#include "obridge/literal.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace obridge {

class NamespaceRegistry;

inline constexpr std::string_view kRootClass = "Thing";
inline constexpr std::string_view kRootRelationType = "related_to";

/// Process-local handle to a concept. The numeric value is never part of any
/// serialized identity.
struct ConceptHandle {
  std::uint32_t local_id = 0;
  auto operator<=>(const ConceptHandle&) const = default;
};

struct RelationHandle {
  std::uint32_t local_id = 0;
  auto operator<=>(const RelationHandle&) const = default;
};

using Subject = std::variant<ConceptHandle, RelationHandle>;

/// A (namespace, local id) pair. Inside a Graph the namespace is always the
/// registry's canonical prefix, never an alias.
struct Accession {
  std::string ns;
  std::string local_id;
  auto operator<=>(const Accession&) const = default;
};

enum class BasisKind : std::uint8_t { Asserted, Derived, Instance };

std::string_view basis_name(BasisKind kind);
std::optional<BasisKind> basis_from_name(std::string_view name);

/// Points at the attributes named `name` on a concept.
struct AttributeLocator {
  ConceptHandle owner;
  std::string name;
  auto operator<=>(const AttributeLocator&) const = default;
};

/// Why a piece of information is in the graph: knowledge from outside the
/// system, the output of an analysis over other attributes, or state of one
/// tool instance (layout coordinates and the like).
struct BasisTag {
  BasisKind kind = BasisKind::Asserted;
  std::set<AttributeLocator> depends_on;

  static BasisTag asserted() { return {}; }
  static BasisTag instance() { return {BasisKind::Instance, {}}; }
  static BasisTag derived(std::set<AttributeLocator> deps) {
    return {BasisKind::Derived, std::move(deps)};
  }

  bool operator==(const BasisTag&) const = default;
};

/// Set key of an attribute. Ordering is the canonical one: name bytes, then
/// literal kind, then lexical form.
struct AttributeKey {
  std::string name;
  TypedLiteral value;
  auto operator<=>(const AttributeKey&) const = default;
};

using AttributeSet = std::map<AttributeKey, BasisTag>;

struct Attribute {
  std::string name;
  TypedLiteral value;
  BasisTag basis;
  bool operator==(const Attribute&) const = default;
};

struct ConceptClass {
  std::string id;
  std::optional<std::string> parent;  // empty only for the root
  std::string description;
};

struct RelationType {
  std::string id;
  std::optional<std::string> parent;
  std::string description;
};

struct DataSource {
  std::string id;
  std::string description;
};

struct Concept {
  ConceptHandle handle;
  std::string class_id;
  std::set<Accession> accessions;
  std::optional<std::string> source;
  std::set<std::string> evidence;
  std::set<ConceptHandle> contexts;
  AttributeSet attributes;
};

struct Relation {
  RelationHandle handle;
  ConceptHandle from;
  ConceptHandle to;
  std::string type;
  std::optional<std::string> source;
  std::set<std::string> evidence;
  BasisTag basis;
  AttributeSet attributes;
};

/// Legacy graphs are the only ones allowed to hold opaque literals.
enum class GraphOrigin : std::uint8_t { Native, Legacy };

/// Normalized concept/relation graph.
///
/// Single writer while building; call freeze() to validate cross references
/// and make it read-only, after which it can be shared between threads.
/// Attribute collections behave as sets: there is no insertion order and no
/// positional access.
class Graph {
 public:
  explicit Graph(std::shared_ptr<const NamespaceRegistry> registry,
                 GraphOrigin origin = GraphOrigin::Native, std::uint32_t first_local_id = 1);

  // Type hierarchies. Both are single-parent trees with fixed roots.
  const ConceptClass& define_concept_class(const std::string& id,
                                           const std::optional<std::string>& parent = {},
                                           std::string description = {});
  const RelationType& define_relation_type(const std::string& id,
                                           const std::optional<std::string>& parent = {},
                                           std::string description = {});
  bool is_subclass_of(std::string_view a, std::string_view b) const;
  bool is_subtype_of(std::string_view a, std::string_view b) const;
  const ConceptClass* find_class(std::string_view id) const;
  const RelationType* find_relation_type(std::string_view id) const;
  const std::map<std::string, ConceptClass, std::less<>>& classes() const { return classes_; }
  const std::map<std::string, RelationType, std::less<>>& relation_types() const {
    return relation_types_;
  }

  const DataSource& define_data_source(const std::string& id, std::string description = {});
  const DataSource* find_data_source(std::string_view id) const;
  const std::map<std::string, DataSource, std::less<>>& data_sources() const {
    return data_sources_;
  }

  ConceptHandle create_concept(std::string_view class_id,
                               std::span<const Accession> accessions = {},
                               const std::optional<std::string>& source = {});
  void add_accession(ConceptHandle subject, const Accession& accession);
  void set_source(Subject subject, const std::string& source);
  /// Rejected with EvidenceRejected on relations whose basis is not asserted.
  void add_evidence(Subject subject, const std::string& tag);
  void add_context(ConceptHandle subject, ConceptHandle target);

  /// Returns the existing relation, unchanged, when (from, to, type) is already present.
  RelationHandle create_relation(ConceptHandle from, ConceptHandle to, std::string_view type,
                                 BasisTag basis = {});
  std::optional<RelationHandle> find_relation(ConceptHandle from, ConceptHandle to,
                                              std::string_view type) const;

  /// Adds (name, value) to the subject's attribute set. Values already stored
  /// under the same name are kept. Re-adding an identical pair replaces its basis.
  void add_attribute(Subject subject, const std::string& name, const TypedLiteral& value,
                     BasisTag basis = {});
  /// Import path for legacy documents; the only way to store opaque values.
  void add_legacy_attribute(Subject subject, const std::string& name, const TypedLiteral& value,
                            BasisTag basis = {});

  /// Canonically ordered; `name` filters to one attribute name.
  std::vector<Attribute> get_attributes(Subject subject,
                                        std::optional<std::string_view> name = {}) const;

  const Concept& concept_at(ConceptHandle handle) const;
  const Relation& relation_at(RelationHandle handle) const;
  bool contains(ConceptHandle handle) const;
  std::span<const Concept> concepts() const { return concepts_; }
  std::span<const Relation> relations() const { return relations_; }

  void set_provenance(std::string text);
  const std::optional<std::string>& provenance() const { return provenance_; }

  /// Validates derived-basis dependencies and makes the graph read-only.
  /// Throws Error(InvalidBasis) if a dependency does not resolve.
  void freeze();
  bool frozen() const { return frozen_; }

  /// Checks what freeze() checks, without freezing.
  void validate() const;

  GraphOrigin origin() const { return origin_; }
  const NamespaceRegistry& registry() const { return *registry_; }
  const std::shared_ptr<const NamespaceRegistry>& registry_ptr() const { return registry_; }

 private:
  void require_mutable() const;
  Concept& concept_mut(ConceptHandle handle);
  Relation& relation_mut(RelationHandle handle);
  AttributeSet& attributes_mut(Subject subject);
  void check_basis(const BasisTag& basis) const;
  void insert_attribute(Subject subject, const std::string& name, const TypedLiteral& value,
                        BasisTag basis);

  std::shared_ptr<const NamespaceRegistry> registry_;
  GraphOrigin origin_;
  std::uint32_t first_local_id_;
  bool frozen_ = false;
  std::map<std::string, ConceptClass, std::less<>> classes_;
  std::map<std::string, RelationType, std::less<>> relation_types_;
  std::map<std::string, DataSource, std::less<>> data_sources_;
  std::vector<Concept> concepts_;
  std::vector<Relation> relations_;
  std::map<std::tuple<ConceptHandle, ConceptHandle, std::string>, RelationHandle> relation_index_;
  std::optional<std::string> provenance_;
};

}  // namespace obridge
