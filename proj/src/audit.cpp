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

#include "obridge/audit.hpp"

#include "obridge/error.hpp"
#include "obridge/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace obridge::audit {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view element_name(Element e) {
  switch (e) {
    case Element::Namespace: return "namespace";
    case Element::DataSource: return "data_source";
    case Element::Evidence: return "evidence";
    case Element::ConceptClass: return "concept_class";
    case Element::RelationType: return "relation_type";
    case Element::Context: return "context";
    case Element::LegacyCv: return "legacy_cv";
  }
  return "";
}

std::optional<Element> element_from_name(std::string_view name) {
  for (auto e : kElements) {
    if (element_name(e) == name) return e;
  }
  return std::nullopt;
}

bool has_roles(Element e) {
  return e == Element::Namespace || e == Element::DataSource || e == Element::LegacyCv;
}

namespace {

std::string read_file(const std::filesystem::path& path, Errc errc, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc, std::string("cannot read ") + what + " " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_object(std::string_view text, const char* what) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidConfig, std::string(what) + ": " + e.what());
  }
  if (!root.is_object()) throw Error(Errc::InvalidConfig, std::string(what) + ": expected an object");
  return root;
}

}  // namespace

AuditConfig parse_audit_config(std::string_view json_text) {
  const json root = parse_object(json_text, "rules");
  AuditConfig config;
  auto fail = [](const std::string& m) { throw Error(Errc::InvalidConfig, "rules: " + m); };
  if (auto d = root.find("denylists"); d != root.end() && d->is_object()) {
    if (auto f = d->find("format_names"); f != d->end()) {
      if (!f->is_array()) fail("format_names must be a list of strings");
      config.format_names.clear();
      for (const auto& v : *f) {
        if (!v.is_string()) fail("format_names must be a list of strings");
        config.format_names.push_back(v.get<std::string>());
      }
    }
  }
  if (auto a = root.find("audit"); a != root.end()) {
    if (!a->is_object()) fail("audit must be an object");
    if (auto v = a->find("detect_arbitrary_tokens"); v != a->end()) {
      if (!v->is_boolean()) fail("detect_arbitrary_tokens must be a boolean");
      config.detect_arbitrary_tokens = v->get<bool>();
    }
    if (auto v = a->find("arbitrary_token_pattern"); v != a->end()) {
      if (!v->is_string()) fail("arbitrary_token_pattern must be a string");
      config.arbitrary_token_pattern = v->get<std::string>();
      try {
        std::regex check(config.arbitrary_token_pattern);
      } catch (const std::regex_error&) {
        fail("arbitrary_token_pattern is not a valid regular expression");
      }
    }
  }
  return config;
}

AuditConfig load_audit_config(const std::filesystem::path& path) {
  return parse_audit_config(read_file(path, Errc::InvalidConfig, "rules file"));
}

Profiles empty_profiles() {
  Profiles p;
  for (auto e : kElements) p[e].element = e;
  return p;
}

Profiles profile_document(const Document& doc) {
  Profiles p = empty_profiles();
  const bool legacy = doc.format == DocFormat::Legacy;
  auto bump = [&](Element e, const std::string& value) { ++p[e].value_frequencies[value]; };

  for (const auto& c : doc.concepts) {
    bump(Element::ConceptClass, c.class_id);
    for (const auto& a : c.accessions) {
      bump(Element::Namespace, a.ns);
      if (legacy) bump(Element::LegacyCv, a.ns);
    }
    if (c.source) {
      bump(Element::DataSource, *c.source);
      if (legacy) bump(Element::LegacyCv, *c.source);
    }
    for (const auto& ev : c.evidence) bump(Element::Evidence, ev);
    for (auto t : c.contexts) {
      bump(Element::Context, t < doc.concepts.size() ? doc.concepts[t].class_id : std::string("?"));
    }
  }
  for (const auto& r : doc.relations) {
    bump(Element::RelationType, r.type);
    if (r.source) {
      bump(Element::DataSource, *r.source);
      if (legacy) bump(Element::LegacyCv, *r.source);
    }
    for (const auto& ev : r.evidence) bump(Element::Evidence, ev);
  }

  // Role tallies: how often a value is used as an accession namespace and as
  // concept provenance. legacy_cv only sees legacy documents.
  std::map<std::string, RoleCounts> all_roles;
  std::map<std::string, RoleCounts> legacy_roles;
  for (const auto& c : doc.concepts) {
    for (const auto& a : c.accessions) ++all_roles[a.ns].accession;
    if (c.source) ++all_roles[*c.source].provenance;
  }
  if (legacy) legacy_roles = all_roles;
  // The tallies cover every value seen in either role, so that merging
  // documents pairs a namespace in one file with provenance in another.
  p[Element::Namespace].role_cooccurrence = all_roles;
  p[Element::DataSource].role_cooccurrence = all_roles;
  p[Element::LegacyCv].role_cooccurrence = legacy_roles;
  for (auto& [e, prof] : p) prof.documents_seen = prof.value_frequencies.empty() ? 0 : 1;
  return p;
}

void merge_profiles(Profiles& into, const Profiles& from) {
  for (const auto& [e, prof] : from) {
    auto& dst = into[e];
    dst.element = e;
    for (const auto& [value, n] : prof.value_frequencies) dst.value_frequencies[value] += n;
    for (const auto& [value, roles] : prof.role_cooccurrence) {
      auto& r = dst.role_cooccurrence[value];
      r.accession += roles.accession;
      r.provenance += roles.provenance;
    }
    dst.documents_seen += prof.documents_seen;
  }
}

Profiles profile_corpus(std::span<const Document> docs) {
  Profiles p = empty_profiles();
  for (const auto& doc : docs) merge_profiles(p, profile_document(doc));
  return p;
}

std::string pattern_id(Pattern p) { return "P" + std::to_string(static_cast<int>(p)); }

std::string_view pattern_name(Pattern p) {
  switch (p) {
    case Pattern::NamespaceRole: return "namespace-role";
    case Pattern::ProvenanceRole: return "provenance-role";
    case Pattern::FormatAsNamespace: return "format-as-namespace";
    case Pattern::DualRole: return "dual-role";
    case Pattern::ArbitraryToken: return "arbitrary-token";
  }
  return "";
}

namespace {

bool by_count_then_value(const SupportingValue& a, const SupportingValue& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.value < b.value;
}

}  // namespace

std::vector<DetectedPattern> detect_patterns(const Profiles& profiles, const AuditConfig& config) {
  std::optional<std::regex> token;
  if (config.detect_arbitrary_tokens) {
    try {
      token.emplace(config.arbitrary_token_pattern);
    } catch (const std::regex_error&) {
      throw Error(Errc::InvalidConfig, "arbitrary_token_pattern is not a valid regular expression");
    }
  }
  auto is_format = [&](const std::string& v) {
    return std::any_of(config.format_names.begin(), config.format_names.end(),
                       [&](const std::string& f) { return text::iequals(f, v); });
  };

  std::vector<DetectedPattern> out;
  for (const auto& [element, prof] : profiles) {
    std::map<Pattern, std::vector<SupportingValue>> hits;
    for (const auto& [value, count] : prof.value_frequencies) {
      RoleCounts roles;
      if (auto it = prof.role_cooccurrence.find(value); it != prof.role_cooccurrence.end()) roles = it->second;
      const SupportingValue sv{value, count, roles};
      if (has_roles(element)) {
        const bool ns_side = element != Element::DataSource;
        const bool source_side = element != Element::Namespace;
        if (ns_side && roles.accession > 0) hits[Pattern::NamespaceRole].push_back(sv);
        if (source_side && roles.provenance > 0) hits[Pattern::ProvenanceRole].push_back(sv);
        if (ns_side && roles.accession > 0 && is_format(value)) hits[Pattern::FormatAsNamespace].push_back(sv);
        if (roles.accession > 0 && roles.provenance > 0) hits[Pattern::DualRole].push_back(sv);
      }
      if (token && std::regex_match(value, *token)) hits[Pattern::ArbitraryToken].push_back(sv);
    }
    for (auto& [pattern, values] : hits) {
      std::sort(values.begin(), values.end(), by_count_then_value);
      out.push_back({pattern, element, std::move(values)});
    }
  }
  return out;
}

namespace {

ElementTemplate tmpl(std::string intended, std::string normative, std::string best, std::string rec) {
  return {std::move(intended), std::move(normative), std::move(best), std::move(rec)};
}

}  // namespace

Templates default_templates() {
  Templates t;
  t.elements[Element::Namespace] = tmpl(
      "The scope in which an accession's local identifier is unique. Together with the local identifier it "
      "names a concept globally.",
      "A namespace names the authority that assigns the identifiers. It carries a base IRI, so every accession "
      "has exactly one IRI.",
      "Register each namespace once with its base IRI and refer to it by prefix or alias. Do not use "
      "technology, institute, format or ontology family names as namespaces.",
      "Reject unregistered namespaces at load time and keep the registry under version control.");
  t.elements[Element::DataSource] = tmpl(
      "The party responsible for a concept or relation as it appears in the graph.",
      "A data source is the most specific authority for an asserted statement. It is not an identifier scope.",
      "Name the concrete database, release or pipeline run. Values such as \"unknown\" or \"imported from ...\" "
      "carry no information and should be left out instead.",
      "Record data sources as first-class entries with a description, and attach provenance to derived data "
      "through its dependencies rather than through a source tag.");
  t.elements[Element::Evidence] = tmpl(
      "Tags qualifying how well a piece of asserted information is supported.",
      "Evidence applies to asserted information only. Derived values are qualified by the values they depend on.",
      "Use a small controlled set of evidence codes and never attach them to derived relations.",
      "Publish the evidence code list alongside the class and relation type trees.");
  t.elements[Element::ConceptClass] = tmpl(
      "The type of a concept within a single-parent class tree.",
      "Every concept has exactly one class. Class membership follows the tree's subclass relation.",
      "Prefer an existing class over a new sibling with a near-identical meaning.",
      "Map the class tree onto a shared ontology when one exists for the domain.");
  t.elements[Element::RelationType] = tmpl(
      "The type of a relation within a single-parent relation type tree.",
      "Every relation has exactly one type. Relation types are ordered by the tree's subtype relation.",
      "Use the most specific type that is true of the relation and avoid catch-all types.",
      "Align relation types with properties of a shared vocabulary where possible.");
  t.elements[Element::Context] = tmpl(
      "Links from a concept to other concepts that scope where it holds, such as an experiment or a pathway.",
      "A context is a reference to another concept in the same graph. It is not free text.",
      "Keep context concepts typed with a dedicated class so that they can be queried.",
      "Model frequently used context classes explicitly in the class tree.");
  t.elements[Element::LegacyCv] = tmpl(
      "A single field that legacy data uses both for the identifier scope of an accession and for the origin "
      "of a concept.",
      "The field has two meanings that must be told apart: on an accession it is a namespace, on a concept or "
      "relation it is a data source.",
      "Convert cv on accessions into registered namespaces and cv on concepts or relations into data sources.",
      "Retire the combined field: split it into a namespace on accessions and a data source on concepts and "
      "relations, and validate each against its own registry.");
  return t;
}

Templates parse_templates(std::string_view json_text) {
  const json root = parse_object(json_text, "templates");
  Templates t;
  auto els = root.find("elements");
  if (els == root.end()) return t;
  if (!els->is_object()) throw Error(Errc::InvalidConfig, "templates: elements must be an object");
  for (const auto& [name, body] : els->items()) {
    auto e = element_from_name(name);
    if (!e) throw Error(Errc::InvalidConfig, "templates: unknown element \"" + name + "\"");
    if (!body.is_object()) throw Error(Errc::InvalidConfig, "templates: " + name + " must be an object");
    ElementTemplate et;
    const std::pair<const char*, std::string*> fields[] = {{"intended", &et.intended},
                                                            {"normative", &et.normative},
                                                            {"best_practices", &et.best_practices},
                                                            {"recommendations", &et.recommendations}};
    for (const auto& [key, dst] : fields) {
      if (auto it = body.find(key); it != body.end()) {
        if (!it->is_string()) throw Error(Errc::InvalidConfig, "templates: " + name + "." + key + " must be a string");
        *dst = it->get<std::string>();
      }
    }
    t.elements[*e] = std::move(et);
  }
  return t;
}

Templates load_templates(const std::filesystem::path& path) {
  return parse_templates(read_file(path, Errc::MissingTemplate, "templates file"));
}

std::string write_templates(const Templates& templates) {
  ordered_json els = ordered_json::object();
  for (auto e : kElements) {
    auto it = templates.elements.find(e);
    if (it == templates.elements.end()) continue;
    ordered_json body;
    body["intended"] = it->second.intended;
    body["normative"] = it->second.normative;
    body["best_practices"] = it->second.best_practices;
    body["recommendations"] = it->second.recommendations;
    els[std::string(element_name(e))] = std::move(body);
  }
  ordered_json root;
  root["elements"] = std::move(els);
  return root.dump(2) + "\n";
}

namespace {

std::string dq(std::string_view s) { return "\"" + std::string(s) + "\""; }

std::vector<std::string> derive_recommendations(const DetectedPattern& p) {
  std::vector<std::string> out;
  for (const auto& v : p.values) {
    switch (p.pattern) {
      case Pattern::FormatAsNamespace:
        out.push_back(dq(v.value) + " names a file format but is used " + std::to_string(v.roles.accession) +
                      " times as an accession namespace; record the format as an attribute or data source and "
                      "use the authority that assigns the identifiers as namespace.");
        break;
      case Pattern::DualRole:
        out.push_back("Split " + dq(v.value) + " into two elements: a Namespace for its " +
                      std::to_string(v.roles.accession) + " accession uses and a DataSource for its " +
                      std::to_string(v.roles.provenance) + " provenance uses.");
        break;
      case Pattern::ArbitraryToken:
        out.push_back(dq(v.value) + " looks like an arbitrary token; replace it with a registered name.");
        break;
      default:
        break;
    }
  }
  return out;
}

void require(const ElementTemplate& t, Element e) {
  const std::pair<const char*, const std::string*> fields[] = {{"intended", &t.intended},
                                                                {"normative", &t.normative},
                                                                {"best_practices", &t.best_practices},
                                                                {"recommendations", &t.recommendations}};
  for (const auto& [key, value] : fields) {
    if (value->empty()) {
      throw Error(Errc::MissingTemplate, "no template text for " + std::string(element_name(e)) + "." + key);
    }
  }
}

}  // namespace

AuditReport generate_report(const Profiles& profiles, std::span<const DetectedPattern> patterns,
                            const Templates& templates, std::span<const lint::Finding> findings,
                            std::size_t documents) {
  AuditReport report;
  report.documents = documents;
  for (auto e : kElements) {
    auto t = templates.elements.find(e);
    if (t == templates.elements.end()) {
      throw Error(Errc::MissingTemplate, "no template for element " + std::string(element_name(e)));
    }
    require(t->second, e);
    ElementSection section{e, t->second, 0, {}, {}, {}};
    if (auto p = profiles.find(e); p != profiles.end()) {
      section.documents_seen = p->second.documents_seen;
      for (const auto& [value, count] : p->second.value_frequencies) {
        ObservedRow row{value, count, std::nullopt};
        if (has_roles(e)) {
          auto r = p->second.role_cooccurrence.find(value);
          row.roles = r == p->second.role_cooccurrence.end() ? RoleCounts{} : r->second;
        }
        section.observed.push_back(std::move(row));
      }
      std::sort(section.observed.begin(), section.observed.end(), [](const ObservedRow& a, const ObservedRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.value < b.value;
      });
    }
    for (const auto& p : patterns) {
      if (p.element != e) continue;
      section.patterns.push_back(p);
    }
    std::sort(section.patterns.begin(), section.patterns.end(),
              [](const DetectedPattern& a, const DetectedPattern& b) { return a.pattern < b.pattern; });
    for (const auto& p : section.patterns) {
      auto recs = derive_recommendations(p);
      section.derived_recommendations.insert(section.derived_recommendations.end(), recs.begin(), recs.end());
    }
    report.sections.push_back(std::move(section));
  }
  std::map<lint::Rule, RuleAggregate> agg;
  for (const auto& f : findings) {
    auto& a = agg.try_emplace(f.rule, RuleAggregate{f.rule, 0, {}}).first->second;
    ++a.count;
    if (!f.evidence.empty()) ++a.values[f.evidence.front()];
  }
  for (auto& [rule, a] : agg) report.lint_summary.push_back(std::move(a));
  return report;
}

namespace {

std::string supporting(const SupportingValue& v, bool roles) {
  std::string s = v.value + " (" + std::to_string(v.count);
  if (roles) {
    s += "; namespace " + std::to_string(v.roles.accession) + ", provenance " + std::to_string(v.roles.provenance);
  }
  return s + ")";
}

void indent_block(std::string& out, std::string_view text) {
  out += "  ";
  out += text;
  out += '\n';
}

std::string render_text(const AuditReport& report) {
  std::string out = "Audit report\ndocuments: " + std::to_string(report.documents) + "\n";
  for (const auto& s : report.sections) {
    const bool roles = has_roles(s.element);
    out += "\n== " + std::string(element_name(s.element)) + " ==\n";
    out += "documents seen: " + std::to_string(s.documents_seen) + "\n";
    out += "\n[step 2] Intended semantics\n";
    indent_block(out, s.text.intended);
    out += "\n[step 3] Observed usage\n";
    if (s.observed.empty()) {
      out += "  no usage observed\n";
    } else {
      for (const auto& row : s.observed) {
        out += "  " + row.value + "\t" + std::to_string(row.count);
        if (row.roles) {
          out += "\tnamespace=" + std::to_string(row.roles->accession) +
                 "\tprovenance=" + std::to_string(row.roles->provenance);
        }
        out += '\n';
      }
    }
    out += "\n[step 4] Usage patterns and normative definition\n";
    if (s.patterns.empty()) out += "  no patterns detected\n";
    for (const auto& p : s.patterns) {
      out += "  " + pattern_id(p.pattern) + " " + std::string(pattern_name(p.pattern)) + ":";
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        out += (i == 0 ? " " : ", ") + supporting(p.values[i], roles);
      }
      out += '\n';
    }
    indent_block(out, s.text.normative);
    out += "\n[step 5] Best practice\n";
    indent_block(out, s.text.best_practices);
    for (const auto& r : s.derived_recommendations) out += "  - " + r + "\n";
    out += "\n[step 6] Future development\n";
    indent_block(out, s.text.recommendations);
  }
  out += "\n== lint summary ==\n";
  if (report.lint_summary.empty()) out += "  no findings\n";
  for (const auto& a : report.lint_summary) {
    out += "  " + lint::rule_id(a.rule) + " " + std::string(lint::rule_name(a.rule)) + ": " +
           std::to_string(a.count);
    bool first = true;
    for (const auto& [value, n] : a.values) {
      out += (first ? " (" : ", ") + value + " x" + std::to_string(n);
      first = false;
    }
    if (!first) out += ")";
    out += '\n';
  }
  return out;
}

ordered_json value_json(const SupportingValue& v, bool roles) {
  ordered_json j;
  j["value"] = v.value;
  j["count"] = v.count;
  if (roles) {
    j["as_namespace"] = v.roles.accession;
    j["as_provenance"] = v.roles.provenance;
  }
  return j;
}

std::string render_json(const AuditReport& report) {
  ordered_json root;
  root["documents"] = report.documents;
  auto sections = ordered_json::array();
  for (const auto& s : report.sections) {
    const bool roles = has_roles(s.element);
    ordered_json j;
    j["element"] = element_name(s.element);
    j["documents_seen"] = s.documents_seen;
    j["intended_semantics"] = s.text.intended;
    auto observed = ordered_json::array();
    for (const auto& row : s.observed) {
      observed.push_back(value_json({row.value, row.count, row.roles.value_or(RoleCounts{})}, roles));
    }
    j["observed_usage"] = std::move(observed);
    auto pats = ordered_json::array();
    for (const auto& p : s.patterns) {
      ordered_json pj;
      pj["id"] = pattern_id(p.pattern);
      pj["name"] = pattern_name(p.pattern);
      auto vals = ordered_json::array();
      for (const auto& v : p.values) vals.push_back(value_json(v, roles));
      pj["values"] = std::move(vals);
      pats.push_back(std::move(pj));
    }
    j["detected_patterns"] = std::move(pats);
    j["normative_definition"] = s.text.normative;
    j["best_practices"] = s.text.best_practices;
    j["derived_recommendations"] = s.derived_recommendations;
    j["recommendations"] = s.text.recommendations;
    sections.push_back(std::move(j));
  }
  root["elements"] = std::move(sections);
  auto lint = ordered_json::array();
  for (const auto& a : report.lint_summary) {
    ordered_json j;
    j["rule"] = lint::rule_id(a.rule);
    j["name"] = lint::rule_name(a.rule);
    j["count"] = a.count;
    j["values"] = a.values;
    lint.push_back(std::move(j));
  }
  root["lint_summary"] = std::move(lint);
  return root.dump(2) + "\n";
}

}  // namespace

std::string render_report(const AuditReport& report, lint::OutputFormat format) {
  return format == lint::OutputFormat::Json ? render_json(report) : render_text(report);
}

}  // namespace obridge::audit
