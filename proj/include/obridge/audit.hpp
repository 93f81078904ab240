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

#include "obridge/document.hpp"
#include "obridge/lint.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace obridge::audit {

enum class Element { Namespace, DataSource, Evidence, ConceptClass, RelationType, Context, LegacyCv };

inline constexpr Element kElements[] = {Element::Namespace,    Element::DataSource, Element::Evidence,
                                        Element::ConceptClass, Element::RelationType, Element::Context,
                                        Element::LegacyCv};

std::string_view element_name(Element e);  // "namespace", "data_source", ...
std::optional<Element> element_from_name(std::string_view name);
bool has_roles(Element e);  // namespace, data_source, legacy_cv

struct RoleCounts {
  std::size_t accession = 0;   // used as an accession namespace
  std::size_t provenance = 0;  // used as concept provenance
  auto operator<=>(const RoleCounts&) const = default;
};

struct ElementProfile {
  Element element = Element::Namespace;
  std::map<std::string, std::size_t> value_frequencies;
  std::map<std::string, RoleCounts> role_cooccurrence;  // role elements only
  std::size_t documents_seen = 0;
  bool operator==(const ElementProfile&) const = default;
};

/// One entry per member of kElements, always.
using Profiles = std::map<Element, ElementProfile>;

struct AuditConfig {
  std::vector<std::string> format_names{"NWB"};
  bool detect_arbitrary_tokens = false;
  std::string arbitrary_token_pattern = "^[0-9]+$";
};

/// Reads "denylists.format_names" and the "audit" object of a rules file.
AuditConfig parse_audit_config(std::string_view json_text);
AuditConfig load_audit_config(const std::filesystem::path& path);

Profiles empty_profiles();
Profiles profile_document(const Document& doc);
Profiles profile_corpus(std::span<const Document> docs);
void merge_profiles(Profiles& into, const Profiles& from);

enum class Pattern { NamespaceRole = 1, ProvenanceRole, FormatAsNamespace, DualRole, ArbitraryToken };

std::string pattern_id(Pattern p);  // "P1".."P5"
std::string_view pattern_name(Pattern p);

struct SupportingValue {
  std::string value;
  std::size_t count = 0;
  RoleCounts roles;
  bool operator==(const SupportingValue&) const = default;
};

struct DetectedPattern {
  Pattern pattern;
  Element element;
  std::vector<SupportingValue> values;  // descending count, then value
  bool operator==(const DetectedPattern&) const = default;
};

std::vector<DetectedPattern> detect_patterns(const Profiles& profiles, const AuditConfig& config);

struct ElementTemplate {
  std::string intended;
  std::string normative;
  std::string best_practices;
  std::string recommendations;
  bool operator==(const ElementTemplate&) const = default;
};

struct Templates {
  std::map<Element, ElementTemplate> elements;
  bool operator==(const Templates&) const = default;
};

Templates default_templates();
/// Elements or fields may be missing here; generate_report reports them.
Templates parse_templates(std::string_view json_text);
Templates load_templates(const std::filesystem::path& path);
std::string write_templates(const Templates& templates);

struct ObservedRow {
  std::string value;
  std::size_t count = 0;
  std::optional<RoleCounts> roles;
};

struct ElementSection {
  Element element;
  ElementTemplate text;
  std::size_t documents_seen = 0;
  std::vector<ObservedRow> observed;  // descending count, then value
  std::vector<DetectedPattern> patterns;
  std::vector<std::string> derived_recommendations;
};

struct RuleAggregate {
  lint::Rule rule;
  std::size_t count = 0;
  std::map<std::string, std::size_t> values;  // first evidence item of each finding
};

struct AuditReport {
  std::size_t documents = 0;
  std::vector<ElementSection> sections;  // kElements order
  std::vector<RuleAggregate> lint_summary;
};

/// Throws Error(MissingTemplate) when an element or one of its texts is absent.
AuditReport generate_report(const Profiles& profiles, std::span<const DetectedPattern> patterns,
                            const Templates& templates, std::span<const lint::Finding> findings,
                            std::size_t documents);

std::string render_report(const AuditReport& report, lint::OutputFormat format);

}  // namespace obridge::audit
