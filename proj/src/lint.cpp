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

#include "obridge/lint.hpp"

#include "obridge/error.hpp"
#include "obridge/identity.hpp"
#include "obridge/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace obridge::lint {

std::string_view severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "ERROR";
    case Severity::Warning: return "WARNING";
    case Severity::Info: return "INFO";
  }
  return "INFO";
}

std::string rule_id(Rule rule) { return "R" + std::to_string(static_cast<int>(rule)); }

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::LocalIdentifierOnly: return "LocalIdentifierOnly";
    case Rule::BasisUnlabelled: return "BasisUnlabelled";
    case Rule::CardinalityAmbiguity: return "CardinalityAmbiguity";
    case Rule::OpaqueDatatype: return "OpaqueDatatype";
    case Rule::UninformativeProvenance: return "UninformativeProvenance";
    case Rule::NonAuthorityNamespace: return "NonAuthorityNamespace";
    case Rule::ConflatedCV: return "ConflatedCV";
    case Rule::EvidenceOnDerived: return "EvidenceOnDerived";
  }
  return "";
}

Severity default_severity(Rule rule) {
  switch (rule) {
    case Rule::OpaqueDatatype: return Severity::Error;
    case Rule::ConflatedCV: return Severity::Info;
    default: return Severity::Warning;
  }
}

std::optional<Rule> rule_from_id(std::string_view id) {
  for (int i = 1; i <= kRuleCount; ++i) {
    const auto rule = static_cast<Rule>(i);
    if (rule_id(rule) == id || rule_name(rule) == id) return rule;
  }
  return std::nullopt;
}

Severity RuleConfig::severity_of(Rule rule) const {
  auto it = severity_overrides.find(rule);
  return it == severity_overrides.end() ? default_severity(rule) : it->second;
}

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(Errc::InvalidConfig, "rules: " + what);
}

std::vector<std::string> string_list(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) config_error(key + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) config_error(key + " must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Rule parse_rule(const std::string& id) {
  auto rule = rule_from_id(id);
  if (!rule) config_error("unknown rule \"" + id + "\"");
  return *rule;
}

}  // namespace

RuleConfig parse_rule_config(std::string_view json_text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(e.what());
  }
  if (!root.is_object()) config_error("expected an object");
  RuleConfig config;
  if (auto it = root.find("enabled"); it != root.end()) {
    config.enabled.clear();
    for (const auto& id : string_list(*it, "enabled")) config.enabled.insert(parse_rule(id));
  }
  if (auto it = root.find("disabled"); it != root.end()) {
    for (const auto& id : string_list(*it, "disabled")) config.enabled.erase(parse_rule(id));
  }
  if (auto it = root.find("severity"); it != root.end()) {
    if (!it->is_object()) config_error("severity must be an object");
    for (const auto& [id, value] : it->items()) {
      if (!value.is_string()) config_error("severity values must be strings");
      const auto name = text::ascii_lower(value.get<std::string>());
      Severity s;
      if (name == "error") {
        s = Severity::Error;
      } else if (name == "warning") {
        s = Severity::Warning;
      } else if (name == "info") {
        s = Severity::Info;
      } else {
        config_error("unknown severity \"" + name + "\"");
      }
      config.severity_overrides[parse_rule(id)] = s;
    }
  }
  if (auto it = root.find("denylists"); it != root.end()) {
    if (!it->is_object()) config_error("denylists must be an object");
    const std::pair<const char*, std::vector<std::string>*> lists[] = {
        {"uninformative_provenance", &config.uninformative_provenance},
        {"uninformative_prefixes", &config.uninformative_prefixes},
        {"technology_names", &config.technology_names},
        {"institute_names", &config.institute_names},
        {"format_names", &config.format_names},
        {"ontology_families", &config.ontology_families},
    };
    for (const auto& [key, value] : it->items()) {
      auto match = std::find_if(std::begin(lists), std::end(lists),
                                [&](const auto& l) { return key == l.first; });
      if (match == std::end(lists)) config_error("unknown denylist \"" + key + "\"");
      *match->second = string_list(value, key);
    }
  }
  return config;
}

RuleConfig load_rule_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidConfig, "cannot read rules file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule_config(buf.str());
}

namespace {

bool listed(const std::vector<std::string>& list, std::string_view value) {
  return std::any_of(list.begin(), list.end(), [&](const std::string& s) { return text::iequals(s, value); });
}

std::string dq(std::string_view s) { return "\"" + std::string(s) + "\""; }

class DocumentLinter {
 public:
  DocumentLinter(const Document& doc, const NamespaceRegistry& registry, const RuleConfig& config,
                 std::vector<Finding>& out)
      : doc_(doc), registry_(registry), config_(config), out_(out) {}

  void run() {
    const bool legacy = doc_.format == DocFormat::Legacy;
    for (std::size_t i = 0; i < doc_.concepts.size(); ++i) {
      const auto& c = doc_.concepts[i];
      const std::string path = "concepts[" + std::to_string(i) + "]";
      if (c.accessions.empty()) {
        add(Rule::LocalIdentifierOnly, path,
            "concept of class " + dq(c.class_id) + " has no accession, so its identity is local to this document",
            {c.class_id});
      }
      for (std::size_t j = 0; j < c.accessions.size(); ++j) {
        check_namespace(c.accessions[j].ns, path + ".accessions[" + std::to_string(j) + "]");
      }
      if (c.source) check_provenance(*c.source, path);
      check_attrs(c.attrs, path, legacy);
    }
    for (std::size_t i = 0; i < doc_.relations.size(); ++i) {
      const auto& r = doc_.relations[i];
      const std::string path = "relations[" + std::to_string(i) + "]";
      if (r.source) check_provenance(*r.source, path);
      if (r.basis && *r.basis != "asserted" && !r.evidence.empty()) {
        std::vector<std::string> ev = r.evidence;
        ev.insert(ev.begin(), *r.basis);
        add(Rule::EvidenceOnDerived, path,
            "evidence attached to a " + *r.basis + "-basis relation " + dq(r.type), ev);
      }
      check_attrs(r.attrs, path, legacy);
    }
  }

 private:
  void add(Rule rule, std::string path, std::string message, std::vector<std::string> evidence) {
    if (!config_.enabled.count(rule)) return;
    out_.push_back({rule, config_.severity_of(rule), doc_.id, std::move(path), std::move(message),
                    std::move(evidence)});
  }

  void check_provenance(const std::string& value, const std::string& path) {
    const bool exact = listed(config_.uninformative_provenance, value);
    const bool prefixed = std::any_of(config_.uninformative_prefixes.begin(), config_.uninformative_prefixes.end(),
                                      [&](const std::string& p) { return text::istarts_with(value, p); });
    if (exact || prefixed) {
      add(Rule::UninformativeProvenance, path,
          "data source " + dq(value) + " does not identify an authority", {value});
    }
  }

  void check_namespace(const std::string& value, const std::string& path) {
    std::vector<std::string> candidates{value};
    if (const auto* entry = registry_.find(value); entry && entry->prefix != value) {
      candidates.push_back(entry->prefix);
    }
    const std::pair<const char*, const std::vector<std::string>*> lists[] = {
        {"technology_names", &config_.technology_names},
        {"institute_names", &config_.institute_names},
        {"format_names", &config_.format_names},
        {"ontology_families", &config_.ontology_families},
    };
    for (const auto& [list_name, list] : lists) {
      for (const auto& candidate : candidates) {
        if (listed(*list, candidate)) {
          add(Rule::NonAuthorityNamespace, path,
              "accession namespace " + dq(value) + " is listed in " + list_name +
                  " and does not name the authority defining the identifier",
              {value, list_name});
          return;
        }
      }
    }
  }

  void check_attrs(const std::vector<DocAttribute>& attrs, const std::string& subject, bool legacy) {
    std::map<std::string, std::vector<std::size_t>> by_name;
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      const auto& a = attrs[k];
      const std::string path = subject + ".attrs[" + std::to_string(k) + "]";
      by_name[a.name].push_back(k);
      if (!a.basis) {
        add(Rule::BasisUnlabelled, path,
            "attribute " + dq(a.name) + " has no basis tag; asserted, derived and instance data cannot be told apart",
            {a.name});
      }
      if (a.type == "opaque") {
        add(Rule::OpaqueDatatype, path,
            "attribute " + dq(a.name) + " holds an opaque serialized value" +
                (a.origin.empty() ? std::string() : " from " + dq(a.origin)),
            {a.name, a.origin});
      }
    }
    if (!legacy) return;
    for (const auto& [name, indices] : by_name) {
      std::set<std::pair<std::string, std::string>> values;
      for (auto k : indices) values.insert({attrs[k].type, attrs[k].value});
      if (values.size() < 2) continue;
      std::vector<std::string> evidence{name};
      for (auto k : indices) evidence.push_back(attrs[k].value);
      add(Rule::CardinalityAmbiguity, subject + ".attrs[" + std::to_string(indices.front()) + "]",
          "attribute " + dq(name) + " is given " + std::to_string(values.size()) +
              " different values; override semantics would keep only the last",
          evidence);
    }
  }

  const Document& doc_;
  const NamespaceRegistry& registry_;
  const RuleConfig& config_;
  std::vector<Finding>& out_;
};

// Splits into digit and non-digit runs so that "[10]" sorts after "[9]".
int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      auto na = a.substr(i, ie - i);
      auto nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size() ? -1 : 1;
      if (na != nb) return na < nb ? -1 : 1;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) {
      return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
    }
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

}  // namespace

bool finding_less(const Finding& a, const Finding& b) {
  if (a.rule != b.rule) return a.rule < b.rule;
  if (a.document != b.document) return a.document < b.document;
  const int c = natural_compare(a.path, b.path);
  if (c != 0) return c < 0;
  return std::tie(a.message, a.evidence) < std::tie(b.message, b.evidence);
}

std::vector<Finding> lint_document(const Document& doc, const NamespaceRegistry& registry,
                                   const RuleConfig& config) {
  std::vector<Finding> out;
  DocumentLinter(doc, registry, config, out).run();
  std::sort(out.begin(), out.end(), finding_less);
  return out;
}

std::vector<Finding> lint_corpus(std::span<const Document> docs, const NamespaceRegistry& registry,
                                 const RuleConfig& config) {
  std::vector<Finding> out;
  for (const auto& doc : docs) DocumentLinter(doc, registry, config, out).run();

  if (config.enabled.count(Rule::ConflatedCV)) {
    struct Usage {
      std::size_t accession = 0;
      std::size_t concept_count = 0;
      std::optional<std::pair<std::string, std::string>> first_concept;  // (document, path)
    };
    std::map<std::string, Usage> usage;
    for (const auto& doc : docs) {
      if (doc.format != DocFormat::Legacy) continue;
      for (std::size_t i = 0; i < doc.concepts.size(); ++i) {
        const auto& c = doc.concepts[i];
        for (const auto& a : c.accessions) ++usage[a.ns].accession;
        if (!c.source) continue;
        auto& u = usage[*c.source];
        ++u.concept_count;
        std::pair<std::string, std::string> at{doc.id, "concepts[" + std::to_string(i) + "]"};
        if (!u.first_concept || at.first < u.first_concept->first ||
            (at.first == u.first_concept->first && natural_compare(at.second, u.first_concept->second) < 0)) {
          u.first_concept = std::move(at);
        }
      }
    }
    for (const auto& [value, u] : usage) {
      if (u.accession == 0 || u.concept_count == 0) continue;
      out.push_back({Rule::ConflatedCV, config.severity_of(Rule::ConflatedCV), u.first_concept->first,
                     u.first_concept->second,
                     "cv " + dq(value) + " is used both as an accession namespace (" +
                         std::to_string(u.accession) + "x) and as concept provenance (" +
                         std::to_string(u.concept_count) + "x)",
                     {value, std::to_string(u.accession), std::to_string(u.concept_count)}});
    }
  }
  std::sort(out.begin(), out.end(), finding_less);
  return out;
}

std::string render_findings(std::span<const Finding> findings, OutputFormat format) {
  if (format == OutputFormat::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : findings) {
      nlohmann::ordered_json item;
      item["rule"] = rule_id(f.rule);
      item["name"] = rule_name(f.rule);
      item["severity"] = text::ascii_lower(severity_name(f.severity));
      item["document"] = f.document;
      item["path"] = f.path;
      item["message"] = f.message;
      item["evidence"] = f.evidence;
      arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const auto& f : findings) {
    out += severity_name(f.severity);
    out += ' ';
    out += rule_id(f.rule);
    out += ' ';
    out += f.document;
    if (!f.path.empty()) out += "#" + f.path;
    out += ": ";
    out += f.message;
    out += '\n';
  }
  return out;
}

bool has_errors(std::span<const Finding> findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

}  // namespace obridge::lint
