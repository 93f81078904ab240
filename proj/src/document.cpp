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

#include "obridge/document.hpp"

#include "obridge/codec.hpp"
#include "obridge/error.hpp"
#include "obridge/identity.hpp"
#include "obridge/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace obridge {

using nlohmann::json;

std::string_view format_name(DocFormat format) {
  return format == DocFormat::Legacy ? "legacy" : "native";
}

namespace {

[[noreturn]] void parse_fail(const std::string& doc, const std::string& path, const std::string& what) {
  throw Error(Errc::ParseFailure, doc + (path.empty() ? "" : " at " + path) + ": " + what);
}

class Reader {
 public:
  explicit Reader(std::string doc_id) : doc_(std::move(doc_id)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    parse_fail(doc_, path, what);
  }

  const json* member(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string str(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  // Legacy data often stores numbers or booleans where strings are expected.
  std::string scalar(const json& v, const std::string& path) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    fail(path, "expected a string, number or boolean");
  }

  std::optional<std::string> opt_str(const json& obj, const char* key, const std::string& path) const {
    if (const auto* v = member(obj, key)) return str(*v, path + "." + key);
    return std::nullopt;
  }

  std::size_t index(const json& v, const std::string& path, std::size_t limit) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer index");
    const auto i = v.get<std::size_t>();
    if (i >= limit) fail(path, "index " + std::to_string(i) + " is out of range");
    return i;
  }

  const json& array(const json& obj, const char* key, const std::string& path) const {
    static const json kEmpty = json::array();
    const auto* v = member(obj, key);
    if (!v) return kEmpty;
    if (!v->is_array()) fail(path + (path.empty() ? "" : ".") + key, "expected a list");
    return *v;
  }

  void object(const json& v, const std::string& path) const {
    if (!v.is_object()) fail(path, "expected an object");
  }

 private:
  std::string doc_;
};

bool uses_cv(const json& root) {
  auto has_cv = [](const json& v) { return v.is_object() && v.contains("cv"); };
  for (const char* list : {"concepts", "relations"}) {
    auto it = root.find(list);
    if (it == root.end() || !it->is_array()) continue;
    for (const auto& item : *it) {
      if (has_cv(item)) return true;
      if (!item.is_object()) continue;
      auto acc = item.find("accessions");
      if (acc == item.end() || !acc->is_array()) continue;
      for (const auto& a : *acc) {
        if (has_cv(a)) return true;
      }
    }
  }
  return false;
}

std::vector<DocTypeDef> read_types(const Reader& r, const json& root, const char* key) {
  std::vector<DocTypeDef> out;
  const auto& list = r.array(root, key, "");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = std::string(key) + "[" + std::to_string(i) + "]";
    r.object(list[i], path);
    DocTypeDef def;
    const auto* id = r.member(list[i], "id");
    if (!id) r.fail(path, "missing id");
    def.id = r.str(*id, path + ".id");
    def.parent = r.opt_str(list[i], "parent", path);
    def.description = r.opt_str(list[i], "description", path).value_or("");
    out.push_back(std::move(def));
  }
  return out;
}

std::vector<DocLocator> read_locators(const Reader& r, const json& obj, const std::string& path,
                                      std::size_t concept_count) {
  std::vector<DocLocator> out;
  const auto& list = r.array(obj, "depends_on", path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = path + ".depends_on[" + std::to_string(i) + "]";
    r.object(list[i], p);
    const auto* c = r.member(list[i], "concept");
    const auto* a = r.member(list[i], "attr");
    if (!c || !a) r.fail(p, "a dependency needs \"concept\" and \"attr\"");
    out.push_back({r.index(*c, p + ".concept", concept_count), r.str(*a, p + ".attr")});
  }
  return out;
}

std::vector<DocAttribute> read_attrs(const Reader& r, const json& obj, const std::string& path,
                                     std::size_t concept_count) {
  std::vector<DocAttribute> out;
  const auto& list = r.array(obj, "attrs", path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = path + ".attrs[" + std::to_string(i) + "]";
    r.object(list[i], p);
    DocAttribute a;
    const auto* name = r.member(list[i], "name");
    if (!name) r.fail(p, "missing name");
    a.name = r.str(*name, p + ".name");
    a.type = r.opt_str(list[i], "type", p).value_or("string");
    if (!kind_from_name(a.type)) r.fail(p + ".type", "unknown type \"" + a.type + "\"");
    const auto* value = r.member(list[i], "value");
    if (!value) r.fail(p, "missing value");
    a.value = r.scalar(*value, p + ".value");
    a.basis = r.opt_str(list[i], "basis", p);
    if (a.basis && !basis_from_name(*a.basis)) r.fail(p + ".basis", "unknown basis \"" + *a.basis + "\"");
    a.depends_on = read_locators(r, list[i], p, concept_count);
    a.origin = r.opt_str(list[i], "origin", p).value_or("");
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::string> read_strings(const Reader& r, const json& obj, const char* key, const std::string& path) {
  std::vector<std::string> out;
  const auto& list = r.array(obj, key, path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(r.str(list[i], path + "." + key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Legacy documents carry `cv`; tolerate the native key too.
std::optional<std::string> read_source(const Reader& r, const json& obj, const std::string& path,
                                       DocFormat format) {
  if (format == DocFormat::Legacy) {
    if (const auto* cv = r.member(obj, "cv")) return r.scalar(*cv, path + ".cv");
  }
  return r.opt_str(obj, "source", path);
}

}  // namespace

Document parse_document(std::string_view json_text, std::string id, std::optional<DocFormat> format) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    parse_fail(id, "", e.what());
  }
  Reader r(id);
  r.object(root, "$");

  Document doc;
  doc.id = std::move(id);
  if (format) {
    doc.format = *format;
  } else if (const auto* f = r.member(root, "format")) {
    const auto name = r.str(*f, "format");
    if (name == "legacy") {
      doc.format = DocFormat::Legacy;
    } else if (name == "native") {
      doc.format = DocFormat::Native;
    } else {
      r.fail("format", "expected \"native\" or \"legacy\"");
    }
  } else {
    doc.format = uses_cv(root) ? DocFormat::Legacy : DocFormat::Native;
  }
  const bool legacy = doc.format == DocFormat::Legacy;

  doc.classes = read_types(r, root, "classes");
  doc.relation_types = read_types(r, root, "relation_types");
  {
    const auto& list = r.array(root, "data_sources", "");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = "data_sources[" + std::to_string(i) + "]";
      r.object(list[i], p);
      const auto* sid = r.member(list[i], "id");
      if (!sid) r.fail(p, "missing id");
      doc.data_sources.push_back({r.str(*sid, p + ".id"), r.opt_str(list[i], "description", p).value_or("")});
    }
  }
  doc.provenance = r.opt_str(root, "provenance", "");

  const auto& concepts = r.array(root, "concepts", "");
  const std::size_t n = concepts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = "concepts[" + std::to_string(i) + "]";
    const auto& item = concepts[i];
    r.object(item, p);
    DocConcept c;
    if (const auto* cls = r.member(item, "class")) {
      c.class_id = r.str(*cls, p + ".class");
    } else if (legacy) {
      c.class_id = std::string(kRootClass);
    } else {
      r.fail(p, "missing class");
    }
    const auto& accs = r.array(item, "accessions", p);
    for (std::size_t j = 0; j < accs.size(); ++j) {
      const std::string ap = p + ".accessions[" + std::to_string(j) + "]";
      r.object(accs[j], ap);
      const json* ns = r.member(accs[j], "ns");
      if (legacy && r.member(accs[j], "cv")) ns = r.member(accs[j], "cv");
      const auto* aid = r.member(accs[j], "id");
      if (!ns) r.fail(ap, legacy ? "missing cv" : "missing ns");
      if (!aid) r.fail(ap, "missing id");
      c.accessions.push_back({r.scalar(*ns, ap + (legacy ? ".cv" : ".ns")), r.scalar(*aid, ap + ".id")});
    }
    c.source = read_source(r, item, p, doc.format);
    c.evidence = read_strings(r, item, "evidence", p);
    const auto& ctx = r.array(item, "contexts", p);
    for (std::size_t j = 0; j < ctx.size(); ++j) {
      c.contexts.push_back(r.index(ctx[j], p + ".contexts[" + std::to_string(j) + "]", n));
    }
    c.attrs = read_attrs(r, item, p, n);
    doc.concepts.push_back(std::move(c));
  }

  const auto& relations = r.array(root, "relations", "");
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const std::string p = "relations[" + std::to_string(i) + "]";
    const auto& item = relations[i];
    r.object(item, p);
    DocRelation rel;
    const auto* from = r.member(item, "from");
    const auto* to = r.member(item, "to");
    if (!from || !to) r.fail(p, "a relation needs \"from\" and \"to\"");
    rel.from = r.index(*from, p + ".from", n);
    rel.to = r.index(*to, p + ".to", n);
    if (const auto* type = r.member(item, "type")) {
      rel.type = r.str(*type, p + ".type");
    } else if (legacy) {
      rel.type = std::string(kRootRelationType);
    } else {
      r.fail(p, "missing type");
    }
    rel.basis = r.opt_str(item, "basis", p);
    if (rel.basis && !basis_from_name(*rel.basis)) r.fail(p + ".basis", "unknown basis \"" + *rel.basis + "\"");
    rel.depends_on = read_locators(r, item, p, n);
    rel.source = read_source(r, item, p, doc.format);
    rel.evidence = read_strings(r, item, "evidence", p);
    rel.attrs = read_attrs(r, item, p, n);
    doc.relations.push_back(std::move(rel));
  }
  return doc;
}

Document load_document(const std::filesystem::path& path, std::optional<DocFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.string(), format);
}

// ---------------------------------------------------------------------------

namespace {

class Normalizer {
 public:
  Normalizer(const Document& doc, std::shared_ptr<const NamespaceRegistry> registry,
             std::vector<std::string>* notes)
      : doc_(doc),
        legacy_(doc.format == DocFormat::Legacy),
        graph_(std::move(registry), legacy_ ? GraphOrigin::Legacy : GraphOrigin::Native),
        notes_(notes) {}

  Graph run() {
    define_types(doc_.classes, true);
    define_types(doc_.relation_types, false);
    for (const auto& ds : doc_.data_sources) graph_.define_data_source(ds.id, ds.description);
    if (doc_.provenance) graph_.set_provenance(*doc_.provenance);

    for (std::size_t i = 0; i < doc_.concepts.size(); ++i) create_concept(i);
    for (std::size_t i = 0; i < doc_.concepts.size(); ++i) fill_concept(i);
    for (std::size_t i = 0; i < doc_.relations.size(); ++i) add_relation(i);
    graph_.freeze();
    return std::move(graph_);
  }

 private:
  void note(const std::string& where, const std::string& what) {
    if (notes_) notes_->push_back(doc_.id + "#" + where + ": " + what);
  }

  // Parents may be listed after their children.
  void define_types(const std::vector<DocTypeDef>& defs, bool classes) {
    std::vector<const DocTypeDef*> pending;
    for (const auto& d : defs) pending.push_back(&d);
    auto known = [&](const std::string& id) {
      return classes ? graph_.find_class(id) != nullptr : graph_.find_relation_type(id) != nullptr;
    };
    auto define = [&](const DocTypeDef& d) {
      if (classes) {
        graph_.define_concept_class(d.id, d.parent, d.description);
      } else {
        graph_.define_relation_type(d.id, d.parent, d.description);
      }
    };
    while (!pending.empty()) {
      std::vector<const DocTypeDef*> rest;
      for (const auto* d : pending) {
        if (!d->parent || known(*d->parent) || *d->parent == d->id) {
          define(*d);
        } else {
          rest.push_back(d);
        }
      }
      if (rest.size() == pending.size()) {
        // Nothing progressed: either a missing parent or a cycle. Let the
        // graph report the first one.
        define(*rest.front());
      }
      pending = std::move(rest);
    }
  }

  void ensure_class(const std::string& id, const std::string& where) {
    if (!legacy_ || graph_.find_class(id)) return;
    graph_.define_concept_class(id);
    note(where, "undeclared class \"" + id + "\" defined under " + std::string(kRootClass));
  }

  void ensure_relation_type(const std::string& id, const std::string& where) {
    if (!legacy_ || graph_.find_relation_type(id)) return;
    graph_.define_relation_type(id);
    note(where, "undeclared relation type \"" + id + "\" defined under " +
                    std::string(kRootRelationType));
  }

  // Native ids are used verbatim; legacy cv values first go through the
  // registry so alias spellings collapse onto one id.
  std::string data_source(const std::string& value, const std::string& where) {
    std::string id = value;
    if (legacy_) {
      if (const auto* entry = graph_.registry().find(value)) {
        id = entry->prefix;
      } else if (!text::is_name_token(value)) {
        id = text::to_name_token(value);
      }
      note(where, "cv \"" + value + "\" used as data source \"" + id + "\"");
    }
    if (!graph_.find_data_source(id)) graph_.define_data_source(id, id == value ? "" : value);
    return id;
  }

  BasisTag basis(const std::optional<std::string>& name, const std::vector<DocLocator>& deps,
                 const std::string& where, bool is_attribute) {
    BasisTag b;
    if (name) {
      b.kind = *basis_from_name(*name);
    } else if (!legacy_) {
      throw Error(Errc::InvalidBasis, doc_.id + "#" + where + ": missing basis");
    } else if (is_attribute) {
      note(where, "R2 BasisUnlabelled: no basis tag, assuming asserted");
    }
    for (const auto& d : deps) b.depends_on.insert({handles_.at(d.concept_index), d.attr});
    return b;
  }

  void create_concept(std::size_t i) {
    const auto& c = doc_.concepts[i];
    const std::string where = "concepts[" + std::to_string(i) + "]";
    ensure_class(c.class_id, where);
    std::vector<Accession> accessions;
    for (std::size_t j = 0; j < c.accessions.size(); ++j) {
      const auto& a = c.accessions[j];
      if (legacy_) {
        const auto* entry = graph_.registry().find(a.ns);
        if (!entry) {
          throw Error(Errc::UnknownNamespace, doc_.id + "#" + where + ".accessions[" + std::to_string(j) +
                                                  "]: cv \"" + a.ns + "\" is not a registered namespace");
        }
        accessions.push_back({entry->prefix, a.id});
      } else {
        accessions.push_back({a.ns, a.id});
      }
    }
    std::optional<std::string> source;
    if (c.source) source = data_source(*c.source, where);
    handles_.push_back(graph_.create_concept(c.class_id, accessions, source));
  }

  void add_attrs(Subject subject, const std::vector<DocAttribute>& attrs, const std::string& where) {
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      const auto& a = attrs[k];
      const std::string p = where + ".attrs[" + std::to_string(k) + "]";
      const auto kind = *kind_from_name(a.type);
      const BasisTag b = basis(a.basis, a.depends_on, p, true);
      if (kind == LiteralKind::Opaque) {
        graph_.add_legacy_attribute(subject, a.name, TypedLiteral::opaque(a.value, a.origin), b);
      } else {
        graph_.add_attribute(subject, a.name, TypedLiteral(kind, a.value), b);
      }
    }
  }

  void fill_concept(std::size_t i) {
    const auto& c = doc_.concepts[i];
    const std::string where = "concepts[" + std::to_string(i) + "]";
    const ConceptHandle h = handles_[i];
    for (const auto& e : c.evidence) graph_.add_evidence(h, e);
    for (auto t : c.contexts) graph_.add_context(h, handles_[t]);
    add_attrs(h, c.attrs, where);
  }

  void add_relation(std::size_t i) {
    const auto& r = doc_.relations[i];
    const std::string where = "relations[" + std::to_string(i) + "]";
    ensure_relation_type(r.type, where);
    const BasisTag b = basis(r.basis, r.depends_on, where, false);
    const RelationHandle h = graph_.create_relation(handles_[r.from], handles_[r.to], r.type, b);
    if (r.source) graph_.set_source(h, data_source(*r.source, where));
    for (const auto& e : r.evidence) {
      if (legacy_ && b.kind != BasisKind::Asserted) {
        note(where, "evidence \"" + e + "\" dropped from a " + std::string(basis_name(b.kind)) +
                        "-basis relation");
        continue;
      }
      graph_.add_evidence(h, e);
    }
    add_attrs(h, r.attrs, where);
  }

  const Document& doc_;
  bool legacy_;
  Graph graph_;
  std::vector<std::string>* notes_;
  std::vector<ConceptHandle> handles_;
};

}  // namespace

Graph to_graph(const Document& doc, std::shared_ptr<const NamespaceRegistry> registry,
               std::vector<std::string>* notes) {
  return Normalizer(doc, std::move(registry), notes).run();
}

Document from_graph(const Graph& graph) {
  Document doc;
  doc.format = DocFormat::Native;
  for (const auto& [id, cls] : graph.classes()) {
    if (cls.parent) doc.classes.push_back({id, cls.parent, cls.description});
  }
  for (const auto& [id, rt] : graph.relation_types()) {
    if (rt.parent) doc.relation_types.push_back({id, rt.parent, rt.description});
  }
  for (const auto& [id, ds] : graph.data_sources()) doc.data_sources.push_back({id, ds.description});
  doc.provenance = graph.provenance();

  rdf::VocabularyConfig everything;
  everything.include_instance_basis = true;
  everything.allow_opaque = true;
  const auto labels = rdf::label_concepts(graph, everything);
  std::map<ConceptHandle, std::size_t> position;
  for (std::size_t i = 0; i < labels.order.size(); ++i) position[labels.order[i]] = i;

  auto locators = [&](const BasisTag& b) {
    std::vector<DocLocator> out;
    for (const auto& l : b.depends_on) out.push_back({position.at(l.owner), l.name});
    std::sort(out.begin(), out.end(), [](const DocLocator& a, const DocLocator& b) {
      return std::tie(a.concept_index, a.attr) < std::tie(b.concept_index, b.attr);
    });
    return out;
  };
  auto attrs = [&](const AttributeSet& set) {
    std::vector<DocAttribute> out;
    for (const auto& [key, b] : set) {
      out.push_back({key.name, std::string(kind_name(key.value.kind())), key.value.lexical(),
                     std::string(basis_name(b.kind)), locators(b), key.value.origin()});
    }
    return out;
  };

  for (auto h : labels.order) {
    const auto& c = graph.concept_at(h);
    DocConcept dc;
    dc.class_id = c.class_id;
    for (const auto& a : c.accessions) dc.accessions.push_back({a.ns, a.local_id});
    dc.source = c.source;
    dc.evidence.assign(c.evidence.begin(), c.evidence.end());
    for (auto t : c.contexts) dc.contexts.push_back(position.at(t));
    std::sort(dc.contexts.begin(), dc.contexts.end());
    dc.attrs = attrs(c.attributes);
    doc.concepts.push_back(std::move(dc));
  }
  std::vector<const Relation*> rels;
  for (const auto& r : graph.relations()) rels.push_back(&r);
  std::sort(rels.begin(), rels.end(), [&](const Relation* a, const Relation* b) {
    return std::make_tuple(position.at(a->from), position.at(a->to), a->type) <
           std::make_tuple(position.at(b->from), position.at(b->to), b->type);
  });
  for (const auto* r : rels) {
    DocRelation dr;
    dr.from = position.at(r->from);
    dr.to = position.at(r->to);
    dr.type = r->type;
    dr.basis = std::string(basis_name(r->basis.kind));
    dr.depends_on = locators(r->basis);
    dr.source = r->source;
    dr.evidence.assign(r->evidence.begin(), r->evidence.end());
    dr.attrs = attrs(r->attributes);
    doc.relations.push_back(std::move(dr));
  }
  return doc;
}

std::string write_native(const Document& doc) {
  using ojson = nlohmann::ordered_json;
  auto locators = [](const std::vector<DocLocator>& deps) {
    ojson out = ojson::array();
    for (const auto& d : deps) out.push_back({{"concept", d.concept_index}, {"attr", d.attr}});
    return out;
  };
  auto attrs = [&](const std::vector<DocAttribute>& list) {
    ojson out = ojson::array();
    for (const auto& a : list) {
      ojson item;
      item["name"] = a.name;
      item["type"] = a.type;
      item["value"] = a.value;
      if (a.type == "opaque") item["origin"] = a.origin;
      item["basis"] = a.basis.value_or("asserted");
      if (!a.depends_on.empty()) item["depends_on"] = locators(a.depends_on);
      out.push_back(std::move(item));
    }
    return out;
  };
  auto types = [](const std::vector<DocTypeDef>& defs) {
    ojson out = ojson::array();
    for (const auto& d : defs) {
      ojson item;
      item["id"] = d.id;
      if (d.parent) item["parent"] = *d.parent;
      if (!d.description.empty()) item["description"] = d.description;
      out.push_back(std::move(item));
    }
    return out;
  };

  ojson root;
  root["format"] = "native";
  if (doc.provenance) root["provenance"] = *doc.provenance;
  root["classes"] = types(doc.classes);
  root["relation_types"] = types(doc.relation_types);
  root["data_sources"] = ojson::array();
  for (const auto& ds : doc.data_sources) {
    ojson item;
    item["id"] = ds.id;
    if (!ds.description.empty()) item["description"] = ds.description;
    root["data_sources"].push_back(std::move(item));
  }
  root["concepts"] = ojson::array();
  for (const auto& c : doc.concepts) {
    ojson item;
    item["class"] = c.class_id;
    item["accessions"] = ojson::array();
    for (const auto& a : c.accessions) item["accessions"].push_back({{"ns", a.ns}, {"id", a.id}});
    if (c.source) item["source"] = *c.source;
    item["evidence"] = c.evidence;
    item["contexts"] = c.contexts;
    item["attrs"] = attrs(c.attrs);
    root["concepts"].push_back(std::move(item));
  }
  root["relations"] = ojson::array();
  for (const auto& r : doc.relations) {
    ojson item;
    item["from"] = r.from;
    item["to"] = r.to;
    item["type"] = r.type;
    item["basis"] = r.basis.value_or("asserted");
    if (!r.depends_on.empty()) item["depends_on"] = locators(r.depends_on);
    if (r.source) item["source"] = *r.source;
    item["evidence"] = r.evidence;
    item["attrs"] = attrs(r.attrs);
    root["relations"].push_back(std::move(item));
  }
  return root.dump(2) + "\n";
}

}  // namespace obridge
