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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace obridge {

class NamespaceRegistry;

namespace lint {

enum class Severity { Error, Warning, Info };

std::string_view severity_name(Severity s);  // "ERROR", "WARNING", "INFO"

/// Rule catalog. Ids are "R1".."R8".
enum class Rule {
  LocalIdentifierOnly = 1,
  BasisUnlabelled,
  CardinalityAmbiguity,
  OpaqueDatatype,
  UninformativeProvenance,
  NonAuthorityNamespace,
  ConflatedCV,
  EvidenceOnDerived,
};

inline constexpr int kRuleCount = 8;

std::string rule_id(Rule rule);
std::string_view rule_name(Rule rule);
Severity default_severity(Rule rule);
std::optional<Rule> rule_from_id(std::string_view id);

struct Finding {
  Rule rule;
  Severity severity;
  std::string document;
  std::string path;  // element path inside the document, e.g. concepts[2].attrs[0]
  std::string message;
  std::vector<std::string> evidence;

  bool operator==(const Finding&) const = default;
};

/// Matching against every denylist is case-insensitive.
struct RuleConfig {
  std::set<Rule> enabled{Rule::LocalIdentifierOnly, Rule::BasisUnlabelled,
                         Rule::CardinalityAmbiguity, Rule::OpaqueDatatype,
                         Rule::UninformativeProvenance, Rule::NonAuthorityNamespace,
                         Rule::ConflatedCV, Rule::EvidenceOnDerived};
  std::map<Rule, Severity> severity_overrides;
  std::vector<std::string> uninformative_provenance{"unknown"};
  std::vector<std::string> uninformative_prefixes{"imported from"};
  std::vector<std::string> technology_names{"AFFYMETRIX"};
  std::vector<std::string> institute_names{"BROAD"};
  std::vector<std::string> format_names{"NWB"};
  std::vector<std::string> ontology_families{"OBO"};

  Severity severity_of(Rule rule) const;
};

/// Reads the `--rules` JSON file. Keys not present keep their defaults.
RuleConfig parse_rule_config(std::string_view json_text);
RuleConfig load_rule_config(const std::filesystem::path& path);

/// Document-scoped rules (all but R7), canonically ordered.
std::vector<Finding> lint_document(const Document& doc, const NamespaceRegistry& registry,
                                   const RuleConfig& config);

/// All rules over a corpus. R7 needs the whole corpus: a legacy cv value is
/// flagged once when it is seen both on accessions and on concepts.
/// Output order is (rule, document, path) and does not depend on the order
/// of `docs`.
std::vector<Finding> lint_corpus(std::span<const Document> docs, const NamespaceRegistry& registry,
                                 const RuleConfig& config);

/// Canonical ordering: rule, then document, then path with numeric indices
/// compared as numbers.
bool finding_less(const Finding& a, const Finding& b);

enum class OutputFormat { Text, Json };

/// Text: one "SEVERITY rule document#path: message" line per finding.
/// Json: an array of finding objects.
std::string render_findings(std::span<const Finding> findings, OutputFormat format);

bool has_errors(std::span<const Finding> findings);

}  // namespace lint
}  // namespace obridge
