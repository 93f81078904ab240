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
#include "obridge/identity.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace obridge::testing {

/// Plain description of a graph, independent of handles and insertion order.
struct SpecAttr {
  std::string name;
  TypedLiteral value;
  BasisKind kind = BasisKind::Asserted;
  std::vector<std::pair<std::size_t, std::string>> deps;  // (concept index, attribute name)
};

struct SpecConcept {
  std::string class_id;
  std::vector<Accession> accessions;
  std::optional<std::string> source;
  std::vector<std::string> evidence;
  std::vector<std::size_t> contexts;
  std::vector<SpecAttr> attrs;
};

struct SpecRelation {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string type;
  BasisKind kind = BasisKind::Asserted;
  std::vector<std::pair<std::size_t, std::string>> deps;
  std::optional<std::string> source;
  std::vector<std::string> evidence;
  std::vector<SpecAttr> attrs;
};

struct SpecType {
  std::string id;
  std::string parent;
  std::string description;
};

struct GraphSpec {
  std::vector<SpecType> classes;  // parents first
  std::vector<SpecType> relation_types;
  std::vector<std::pair<std::string, std::string>> data_sources;
  std::optional<std::string> provenance;
  std::vector<SpecConcept> concepts;
  std::vector<SpecRelation> relations;
};

struct GenParams {
  std::size_t max_concepts = 200;
  std::size_t max_relations = 400;
  double blank_fraction = 0.15;
  std::size_t id_pool = 1000;  // smaller pools make shared accessions likely
  bool rich_content = true;     // attributes, evidence, contexts, sources
};

/// Registry with several namespaces, one alias and one base nested in another.
std::shared_ptr<NamespaceRegistry> make_test_registry();

std::string random_unicode(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len);

GraphSpec random_spec(std::mt19937_64& rng, const NamespaceRegistry& registry, const GenParams& params);

/// Builds the spec. With `shuffle` set, concepts, relations, attributes and
/// every other collection are inserted in a random order and local ids start
/// at a random offset.
Graph build_graph(const GraphSpec& spec, std::shared_ptr<const NamespaceRegistry> registry,
                  std::mt19937_64* shuffle = nullptr);

}  // namespace obridge::testing
