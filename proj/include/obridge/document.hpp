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

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obridge {

class NamespaceRegistry;

enum class DocFormat { Native, Legacy };

std::string_view format_name(DocFormat format);

/// Raw, unnormalized view of a native or legacy JSON document. Lint and audit
/// work on this form because the defects they look for (missing bases,
/// repeated names, overloaded `cv` values) disappear once a document is turned
/// into a Graph.
///
/// In legacy documents `source` and `DocAccession::ns` hold the `cv` values.
struct DocLocator {
  std::size_t concept_index = 0;
  std::string attr;
};

struct DocAttribute {
  std::string name;
  std::string type;  // literal kind name
  std::string value;
  std::optional<std::string> basis;
  std::vector<DocLocator> depends_on;
  std::string origin;  // opaque values only
};

struct DocAccession {
  std::string ns;
  std::string id;
};

struct DocConcept {
  std::string class_id;
  std::vector<DocAccession> accessions;
  std::optional<std::string> source;
  std::vector<std::string> evidence;
  std::vector<std::size_t> contexts;
  std::vector<DocAttribute> attrs;
};

struct DocRelation {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string type;
  std::optional<std::string> basis;
  std::vector<DocLocator> depends_on;
  std::optional<std::string> source;
  std::vector<std::string> evidence;
  std::vector<DocAttribute> attrs;
};

struct DocTypeDef {
  std::string id;
  std::optional<std::string> parent;
  std::string description;
};

struct DocDataSource {
  std::string id;
  std::string description;
};

struct Document {
  std::string id;  // usually the file path
  DocFormat format = DocFormat::Native;
  std::vector<DocTypeDef> classes;
  std::vector<DocTypeDef> relation_types;
  std::vector<DocDataSource> data_sources;
  std::optional<std::string> provenance;
  std::vector<DocConcept> concepts;
  std::vector<DocRelation> relations;
};

/// Parses JSON text. When `format` is not given it is taken from a top-level
/// "format" key, else a document using any "cv" key is legacy. Throws
/// Error(ParseFailure) with the offending JSON path.
Document parse_document(std::string_view json_text, std::string id,
                        std::optional<DocFormat> format = {});
Document load_document(const std::filesystem::path& path, std::optional<DocFormat> format = {});

/// Builds a graph. Native documents are validated strictly. Legacy documents
/// are normalized: `cv` on an accession becomes its namespace (resolved
/// through registry aliases), `cv` on a concept or relation becomes its data
/// source, missing bases default to asserted, repeated names are all kept.
/// Human-readable notes about these repairs are appended to `notes`.
Graph to_graph(const Document& doc, std::shared_ptr<const NamespaceRegistry> registry,
               std::vector<std::string>* notes = nullptr);

/// Native document for a graph, with concepts in canonical export order.
Document from_graph(const Graph& graph);

/// Native JSON text (two-space indent, trailing newline).
std::string write_native(const Document& doc);

}  // namespace obridge
