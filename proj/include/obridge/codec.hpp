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
#include "obridge/ntriples.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace obridge::rdf {

inline constexpr std::string_view kDefaultVocabBase = "http://example.org/ondex-bridge/vocab#";

struct VocabularyConfig {
  std::string vocab_base = std::string(kDefaultVocabBase);
  bool include_instance_basis = false;
  bool allow_opaque = false;
};

/// IRIs of the mapping vocabulary, all relative to one base.
class Vocabulary {
 public:
  explicit Vocabulary(std::string base);

  const std::string& base() const { return base_; }
  std::string class_iri(std::string_view id) const { return base_ + "class/" + std::string(id); }
  std::string rel_iri(std::string_view id) const { return base_ + "rel/" + std::string(id); }
  std::string attr_iri(std::string_view name) const { return base_ + "attr/" + std::string(name); }
  std::string source_iri(std::string_view id) const { return base_ + "source/" + std::string(id); }
  std::string evidence_iri(std::string_view id) const { return base_ + "evidence/" + std::string(id); }
  std::string basis_iri(BasisKind kind) const;
  std::string term(std::string_view local) const { return base_ + std::string(local); }

 private:
  std::string base_;
};

/// Subject term for every concept plus the canonical concept order. IRI
/// subjects come from the least accession (when no other concept shares it);
/// the rest get blank labels `_:bNNNNNN` from a canonical refinement of their
/// content and neighbourhood, so labels never depend on local ids.
struct ConceptLabels {
  std::map<ConceptHandle, Term> subject;
  std::vector<ConceptHandle> order;  // sorted by subject term
};

ConceptLabels label_concepts(const Graph& graph, const VocabularyConfig& config = {});

/// Maps the graph to canonically sorted triples. Instance-basis entries (and
/// derived entries that depend on them) are left out unless
/// include_instance_basis is set. Throws OpaqueLiteralPresent unless
/// allow_opaque, and UnknownNamespace for unminted accessions.
std::vector<Triple> export_triples(const Graph& graph, const VocabularyConfig& config = {});

/// Inverse of export_triples on its image. Triples outside the vocabulary
/// become plain string attributes named by their predicate IRI. The result
/// is frozen.
Graph import_graph(std::span<const Triple> triples,
                   std::shared_ptr<const NamespaceRegistry> registry,
                   const VocabularyConfig& config = {});

}  // namespace obridge::rdf
