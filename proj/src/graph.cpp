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

#include "obridge/error.hpp"
#include "obridge/identity.hpp"
#include "obridge/text.hpp"

#include <algorithm>

namespace obridge {

std::string_view basis_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::Asserted: return "asserted";
    case BasisKind::Derived: return "derived";
    case BasisKind::Instance: return "instance";
  }
  return "asserted";
}

std::optional<BasisKind> basis_from_name(std::string_view name) {
  if (name == "asserted") return BasisKind::Asserted;
  if (name == "derived") return BasisKind::Derived;
  if (name == "instance") return BasisKind::Instance;
  return std::nullopt;
}

namespace {

void require_name(std::string_view what, std::string_view value) {
  if (!text::is_name_token(value)) {
    throw Error(Errc::InvalidName, std::string(what) + " \"" + std::string(value) +
                                       "\" is not a valid name token");
  }
}

// Shared insert logic for the two single-parent trees.
template <typename Node, typename Map>
const Node& define_in_tree(Map& tree, const std::string& id,
                           const std::optional<std::string>& parent, std::string description,
                           std::string_view root, Errc unknown_parent) {
  require_name("type id", id);
  if (tree.count(id) != 0) throw Error(Errc::DuplicateId, "\"" + id + "\" is already defined");
  const std::string parent_id = parent.value_or(std::string(root));
  // The new id is not in the tree yet, so the only way it can sit on the
  // parent's ancestor chain is as the parent itself.
  if (parent_id == id) throw Error(Errc::CycleRejected, "\"" + id + "\" cannot be its own ancestor");
  if (tree.count(parent_id) == 0) {
    throw Error(unknown_parent, "parent \"" + parent_id + "\" of \"" + id + "\" is not defined");
  }
  auto [it, inserted] = tree.emplace(id, Node{id, parent_id, std::move(description)});
  return it->second;
}

template <typename Map>
bool on_parent_chain(const Map& tree, std::string_view a, std::string_view b, Errc unknown) {
  auto it = tree.find(a);
  if (it == tree.end()) throw Error(unknown, "\"" + std::string(a) + "\" is not defined");
  if (tree.find(b) == tree.end()) throw Error(unknown, "\"" + std::string(b) + "\" is not defined");
  while (true) {
    if (it->first == b) return true;
    if (!it->second.parent) return false;
    it = tree.find(*it->second.parent);
  }
}

}  // namespace

Graph::Graph(std::shared_ptr<const NamespaceRegistry> registry, GraphOrigin origin,
             std::uint32_t first_local_id)
    : registry_(std::move(registry)), origin_(origin), first_local_id_(first_local_id) {
  if (!registry_) registry_ = std::make_shared<const NamespaceRegistry>();
  classes_.emplace(std::string(kRootClass), ConceptClass{std::string(kRootClass), std::nullopt, {}});
  relation_types_.emplace(std::string(kRootRelationType),
                          RelationType{std::string(kRootRelationType), std::nullopt, {}});
}

void Graph::require_mutable() const {
  if (frozen_) throw Error(Errc::FrozenGraph, "graph is frozen");
}

const ConceptClass& Graph::define_concept_class(const std::string& id,
                                                const std::optional<std::string>& parent,
                                                std::string description) {
  require_mutable();
  return define_in_tree<ConceptClass>(classes_, id, parent, std::move(description), kRootClass,
                                      Errc::UnknownParent);
}

const RelationType& Graph::define_relation_type(const std::string& id,
                                                const std::optional<std::string>& parent,
                                                std::string description) {
  require_mutable();
  return define_in_tree<RelationType>(relation_types_, id, parent, std::move(description),
                                      kRootRelationType, Errc::UnknownParent);
}

bool Graph::is_subclass_of(std::string_view a, std::string_view b) const {
  return on_parent_chain(classes_, a, b, Errc::UnknownClass);
}

bool Graph::is_subtype_of(std::string_view a, std::string_view b) const {
  return on_parent_chain(relation_types_, a, b, Errc::UnknownRelationType);
}

const ConceptClass* Graph::find_class(std::string_view id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

const RelationType* Graph::find_relation_type(std::string_view id) const {
  auto it = relation_types_.find(id);
  return it == relation_types_.end() ? nullptr : &it->second;
}

const DataSource& Graph::define_data_source(const std::string& id, std::string description) {
  require_mutable();
  require_name("data source", id);
  auto [it, inserted] = data_sources_.emplace(id, DataSource{id, std::move(description)});
  if (!inserted) throw Error(Errc::DuplicateId, "data source \"" + id + "\" is already defined");
  return it->second;
}

const DataSource* Graph::find_data_source(std::string_view id) const {
  auto it = data_sources_.find(id);
  return it == data_sources_.end() ? nullptr : &it->second;
}

bool Graph::contains(ConceptHandle handle) const {
  return handle.local_id >= first_local_id_ &&
         handle.local_id - first_local_id_ < concepts_.size();
}

const Concept& Graph::concept_at(ConceptHandle handle) const {
  if (!contains(handle)) {
    throw Error(Errc::UnknownConcept, "no concept #" + std::to_string(handle.local_id));
  }
  return concepts_[handle.local_id - first_local_id_];
}

Concept& Graph::concept_mut(ConceptHandle handle) {
  return const_cast<Concept&>(std::as_const(*this).concept_at(handle));
}

const Relation& Graph::relation_at(RelationHandle handle) const {
  if (handle.local_id < first_local_id_ || handle.local_id - first_local_id_ >= relations_.size()) {
    throw Error(Errc::UnknownEndpoint, "no relation #" + std::to_string(handle.local_id));
  }
  return relations_[handle.local_id - first_local_id_];
}

Relation& Graph::relation_mut(RelationHandle handle) {
  return const_cast<Relation&>(std::as_const(*this).relation_at(handle));
}

ConceptHandle Graph::create_concept(std::string_view class_id, std::span<const Accession> accessions,
                                    const std::optional<std::string>& source) {
  require_mutable();
  if (!find_class(class_id)) {
    throw Error(Errc::UnknownClass, "class \"" + std::string(class_id) + "\" is not defined");
  }
  std::set<Accession> normalized;
  for (const auto& acc : accessions) {
    if (acc.local_id.empty() || !text::is_valid_utf8(acc.local_id)) {
      throw Error(Errc::InvalidName, "accession local id must be non-empty UTF-8");
    }
    normalized.insert({registry_->canonical_prefix(acc.ns), acc.local_id});
  }
  if (source && !find_data_source(*source)) {
    throw Error(Errc::UnknownDataSource, "data source \"" + *source + "\" is not defined");
  }
  const ConceptHandle handle{first_local_id_ + static_cast<std::uint32_t>(concepts_.size())};
  Concept c;
  c.handle = handle;
  c.class_id = std::string(class_id);
  c.accessions = std::move(normalized);
  c.source = source;
  concepts_.push_back(std::move(c));
  return handle;
}

void Graph::add_accession(ConceptHandle subject, const Accession& accession) {
  require_mutable();
  if (accession.local_id.empty() || !text::is_valid_utf8(accession.local_id)) {
    throw Error(Errc::InvalidName, "accession local id must be non-empty UTF-8");
  }
  auto ns = registry_->canonical_prefix(accession.ns);
  concept_mut(subject).accessions.insert({std::move(ns), accession.local_id});
}

void Graph::set_source(Subject subject, const std::string& source) {
  require_mutable();
  if (!find_data_source(source)) {
    throw Error(Errc::UnknownDataSource, "data source \"" + source + "\" is not defined");
  }
  if (auto* c = std::get_if<ConceptHandle>(&subject)) {
    concept_mut(*c).source = source;
  } else {
    relation_mut(std::get<RelationHandle>(subject)).source = source;
  }
}

void Graph::add_evidence(Subject subject, const std::string& tag) {
  require_mutable();
  require_name("evidence tag", tag);
  if (auto* c = std::get_if<ConceptHandle>(&subject)) {
    concept_mut(*c).evidence.insert(tag);
    return;
  }
  auto& rel = relation_mut(std::get<RelationHandle>(subject));
  if (rel.basis.kind != BasisKind::Asserted) {
    throw Error(Errc::EvidenceRejected,
                "evidence \"" + tag + "\" on a " + std::string(basis_name(rel.basis.kind)) +
                    "-basis relation");
  }
  rel.evidence.insert(tag);
}

void Graph::add_context(ConceptHandle subject, ConceptHandle target) {
  require_mutable();
  if (!contains(target)) {
    throw Error(Errc::UnknownConcept, "context target #" + std::to_string(target.local_id));
  }
  concept_mut(subject).contexts.insert(target);
}

void Graph::check_basis(const BasisTag& basis) const {
  if (basis.kind == BasisKind::Derived && basis.depends_on.empty()) {
    throw Error(Errc::InvalidBasis, "derived basis needs at least one dependency");
  }
  if (basis.kind != BasisKind::Derived && !basis.depends_on.empty()) {
    throw Error(Errc::InvalidBasis, "only derived basis may list dependencies");
  }
  for (const auto& loc : basis.depends_on) {
    if (!contains(loc.owner)) {
      throw Error(Errc::InvalidBasis,
                  "dependency on unknown concept #" + std::to_string(loc.owner.local_id));
    }
    require_name("attribute name", loc.name);
  }
}

RelationHandle Graph::create_relation(ConceptHandle from, ConceptHandle to, std::string_view type,
                                      BasisTag basis) {
  require_mutable();
  if (!contains(from) || !contains(to)) throw Error(Errc::UnknownEndpoint, "relation endpoint");
  if (!find_relation_type(type)) {
    throw Error(Errc::UnknownRelationType,
                "relation type \"" + std::string(type) + "\" is not defined");
  }
  check_basis(basis);
  auto key = std::make_tuple(from, to, std::string(type));
  if (auto it = relation_index_.find(key); it != relation_index_.end()) return it->second;
  const RelationHandle handle{first_local_id_ + static_cast<std::uint32_t>(relations_.size())};
  Relation r;
  r.handle = handle;
  r.from = from;
  r.to = to;
  r.type = std::string(type);
  r.basis = std::move(basis);
  relations_.push_back(std::move(r));
  relation_index_.emplace(std::move(key), handle);
  return handle;
}

std::optional<RelationHandle> Graph::find_relation(ConceptHandle from, ConceptHandle to,
                                                   std::string_view type) const {
  auto it = relation_index_.find(std::make_tuple(from, to, std::string(type)));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

AttributeSet& Graph::attributes_mut(Subject subject) {
  if (auto* c = std::get_if<ConceptHandle>(&subject)) return concept_mut(*c).attributes;
  return relation_mut(std::get<RelationHandle>(subject)).attributes;
}

void Graph::insert_attribute(Subject subject, const std::string& name, const TypedLiteral& value,
                             BasisTag basis) {
  require_mutable();
  require_name("attribute name", name);
  check_basis(basis);
  auto& attrs = attributes_mut(subject);
  attrs.insert_or_assign(AttributeKey{name, value}, std::move(basis));
}

void Graph::add_attribute(Subject subject, const std::string& name, const TypedLiteral& value,
                          BasisTag basis) {
  if (value.is_opaque()) {
    throw Error(Errc::OpaqueRejected, "attribute \"" + name + "\" has an opaque value");
  }
  insert_attribute(subject, name, value, std::move(basis));
}

void Graph::add_legacy_attribute(Subject subject, const std::string& name,
                                 const TypedLiteral& value, BasisTag basis) {
  if (value.is_opaque() && origin_ != GraphOrigin::Legacy) {
    throw Error(Errc::OpaqueRejected, "opaque values are only accepted on legacy graphs");
  }
  insert_attribute(subject, name, value, std::move(basis));
}

std::vector<Attribute> Graph::get_attributes(Subject subject,
                                             std::optional<std::string_view> name) const {
  const AttributeSet* attrs = nullptr;
  if (auto* c = std::get_if<ConceptHandle>(&subject)) {
    attrs = &concept_at(*c).attributes;
  } else {
    attrs = &relation_at(std::get<RelationHandle>(subject)).attributes;
  }
  std::vector<Attribute> out;
  for (const auto& [key, basis] : *attrs) {
    if (name && key.name != *name) continue;
    out.push_back({key.name, key.value, basis});
  }
  return out;
}

void Graph::set_provenance(std::string text) {
  require_mutable();
  provenance_ = std::move(text);
}

namespace {

bool has_attribute_named(const Concept& c, std::string_view name) {
  auto it = c.attributes.lower_bound(AttributeKey{std::string(name), TypedLiteral::string({})});
  return it != c.attributes.end() && it->first.name == name;
}

}  // namespace

void Graph::validate() const {
  auto check = [this](const BasisTag& basis, const std::string& where) {
    for (const auto& loc : basis.depends_on) {
      if (!has_attribute_named(concept_at(loc.owner), loc.name)) {
        throw Error(Errc::InvalidBasis, where + " depends on missing attribute \"" + loc.name +
                                            "\" of concept #" +
                                            std::to_string(loc.owner.local_id));
      }
    }
  };
  for (const auto& c : concepts_) {
    for (const auto& [key, basis] : c.attributes) {
      check(basis, "attribute \"" + key.name + "\"");
    }
  }
  for (const auto& r : relations_) {
    if (r.basis.kind != BasisKind::Asserted && !r.evidence.empty()) {
      throw Error(Errc::EvidenceRejected, "evidence on a non-asserted relation");
    }
    check(r.basis, "relation \"" + r.type + "\"");
    for (const auto& [key, basis] : r.attributes) {
      check(basis, "relation attribute \"" + key.name + "\"");
    }
  }
}

void Graph::freeze() {
  if (frozen_) return;
  validate();
  frozen_ = true;
}

}  // namespace obridge
