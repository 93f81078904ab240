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

#include "obridge/codec.hpp"

#include "obridge/error.hpp"
#include "obridge/identity.hpp"
#include "obridge/text.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace obridge::rdf {

namespace {

const std::string kRdfType = std::string(kRdfNs) + "type";
const std::string kRdfSubject = std::string(kRdfNs) + "subject";
const std::string kRdfPredicate = std::string(kRdfNs) + "predicate";
const std::string kRdfObject = std::string(kRdfNs) + "object";
const std::string kRdfsSubClassOf = std::string(kRdfsNs) + "subClassOf";
const std::string kRdfsSubPropertyOf = std::string(kRdfsNs) + "subPropertyOf";
const std::string kRdfsComment = std::string(kRdfsNs) + "comment";

std::string datatype_for(LiteralKind kind, const Vocabulary& vocab) {
  switch (kind) {
    case LiteralKind::String: return std::string(kXsdString);
    case LiteralKind::Integer: return std::string(kXsdNs) + "integer";
    case LiteralKind::Decimal: return std::string(kXsdNs) + "decimal";
    case LiteralKind::Boolean: return std::string(kXsdNs) + "boolean";
    case LiteralKind::IriRef: return std::string(kXsdNs) + "anyURI";
    case LiteralKind::Opaque: return vocab.term("opaque");
  }
  return std::string(kXsdString);
}

std::string padded(std::size_t n, std::size_t width) {
  std::string s = std::to_string(n);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

// Length-prefixed field; keeps concatenated keys unambiguous for any content.
void field(std::string& out, std::string_view s) {
  out += std::to_string(s.size());
  out.push_back(':');
  out += s;
}

std::string literal_key(const AttributeKey& key) {
  std::string out;
  field(out, key.name);
  field(out, kind_name(key.value.kind()));
  field(out, key.value.lexical());
  field(out, key.value.origin());
  return out;
}

// ---------------------------------------------------------------------------
// Which entries are exported.

using AttrRef = std::pair<std::uint32_t, const AttributeKey*>;

struct Inclusion {
  std::set<AttrRef> concept_attrs;
  std::set<std::uint32_t> relations;
  std::set<AttrRef> relation_attrs;

  bool has(const Concept& c, const AttributeKey& k) const {
    return concept_attrs.count({c.handle.local_id, &k}) != 0;
  }
  bool has(const Relation& r) const { return relations.count(r.handle.local_id) != 0; }
  bool has(const Relation& r, const AttributeKey& k) const {
    return relation_attrs.count({r.handle.local_id, &k}) != 0;
  }
};

// Instance entries are dropped unless requested; a derived entry is dropped
// when any attribute it depends on is no longer exported.
Inclusion compute_inclusion(const Graph& graph, const VocabularyConfig& config) {
  auto admitted = [&](const BasisTag& b) {
    return config.include_instance_basis || b.kind != BasisKind::Instance;
  };
  Inclusion inc;
  for (const auto& c : graph.concepts()) {
    for (const auto& [key, basis] : c.attributes) {
      if (admitted(basis)) inc.concept_attrs.insert({c.handle.local_id, &key});
    }
  }
  for (const auto& r : graph.relations()) {
    if (!admitted(r.basis)) continue;
    inc.relations.insert(r.handle.local_id);
    for (const auto& [key, basis] : r.attributes) {
      if (admitted(basis)) inc.relation_attrs.insert({r.handle.local_id, &key});
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::pair<std::uint32_t, std::string_view>> available;
    for (const auto& [id, key] : inc.concept_attrs) available.insert({id, key->name});
    auto resolves = [&](const BasisTag& b) {
      return std::all_of(b.depends_on.begin(), b.depends_on.end(), [&](const AttributeLocator& l) {
        return available.count({l.owner.local_id, l.name}) != 0;
      });
    };
    for (const auto& c : graph.concepts()) {
      for (const auto& [key, basis] : c.attributes) {
        if (inc.has(c, key) && !resolves(basis)) {
          inc.concept_attrs.erase({c.handle.local_id, &key});
          changed = true;
        }
      }
    }
    for (const auto& r : graph.relations()) {
      if (!inc.has(r)) continue;
      if (!resolves(r.basis)) {
        inc.relations.erase(r.handle.local_id);
        changed = true;
        continue;
      }
      for (const auto& [key, basis] : r.attributes) {
        if (inc.has(r, key) && !resolves(basis)) {
          inc.relation_attrs.erase({r.handle.local_id, &key});
          changed = true;
        }
      }
    }
  }
  for (const auto& r : graph.relations()) {
    if (inc.has(r)) continue;
    for (const auto& [key, basis] : r.attributes) inc.relation_attrs.erase({r.handle.local_id, &key});
  }
  return inc;
}

// ---------------------------------------------------------------------------
// Canonical labelling of concepts.

// A neighbourhood token: fixed content plus references to other concepts,
// whose current colours are appended when the token is rendered.
struct Token {
  std::string fixed;
  std::vector<std::size_t> refs;
};

std::string basis_fixed(const BasisTag& basis) {
  std::string out;
  field(out, basis_name(basis.kind));
  std::vector<std::string> names;
  for (const auto& l : basis.depends_on) names.push_back(l.name);
  std::sort(names.begin(), names.end());
  for (const auto& n : names) field(out, n);
  return out;
}

std::vector<std::size_t> basis_refs(const BasisTag& basis, const Graph& graph,
                                    std::uint32_t first_id) {
  (void)graph;
  std::vector<std::size_t> refs;
  for (const auto& l : basis.depends_on) refs.push_back(l.owner.local_id - first_id);
  return refs;
}

std::string render(const Token& token, const std::vector<std::string>& color) {
  std::string out = token.fixed;
  // Dependency references inside one token are an unordered set.
  std::vector<std::string> cols;
  cols.reserve(token.refs.size());
  for (auto r : token.refs) cols.push_back(color[r]);
  if (cols.size() > 1) std::sort(cols.begin() + 1, cols.end());
  for (const auto& c : cols) field(out, c);
  return out;
}

ConceptLabels label_with(const Graph& graph, const Inclusion& inc) {
  ConceptLabels labels;
  const auto concepts = graph.concepts();
  if (concepts.empty()) return labels;
  const std::uint32_t first_id = concepts.front().handle.local_id;
  const std::size_t n = concepts.size();

  std::map<Accession, int> least_count;
  for (const auto& c : concepts) {
    if (!c.accessions.empty()) ++least_count[*c.accessions.begin()];
  }

  std::vector<std::string> color(n);
  std::vector<std::size_t> blanks;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = concepts[i];
    if (!c.accessions.empty() && least_count[*c.accessions.begin()] == 1) {
      auto iri = graph.registry().mint_uri(*c.accessions.begin());
      color[i] = "I" + iri;
      labels.subject.emplace(c.handle, Term::iri(std::move(iri)));
    } else {
      blanks.push_back(i);
    }
  }

  if (!blanks.empty()) {
    // Initial key: class id, then the concept's own content.
    std::vector<std::string> initial(n);
    for (auto i : blanks) {
      const auto& c = concepts[i];
      std::string sig = c.class_id;
      sig.push_back('\x01');
      for (const auto& [key, basis] : c.attributes) {
        if (!inc.has(c, key)) continue;
        field(sig, literal_key(key));
        field(sig, basis_fixed(basis));
      }
      sig += "|";
      for (const auto& a : c.accessions) {
        field(sig, a.ns);
        field(sig, a.local_id);
      }
      sig += "|";
      field(sig, c.source.value_or(""));
      sig += c.source ? "1" : "0";
      for (const auto& e : c.evidence) field(sig, e);
      initial[i] = std::move(sig);
    }

    std::vector<std::vector<Token>> tokens(n);
    auto idx = [first_id](ConceptHandle h) { return static_cast<std::size_t>(h.local_id - first_id); };
    for (const auto& c : concepts) {
      for (const auto& [key, basis] : c.attributes) {
        if (!inc.has(c, key)) continue;
        for (const auto& l : basis.depends_on) {
          std::string lk = literal_key(key);
          Token out{"d", {idx(l.owner)}};
          field(out.fixed, lk);
          field(out.fixed, l.name);
          tokens[idx(c.handle)].push_back(std::move(out));
          Token in{"D", {idx(c.handle)}};
          field(in.fixed, l.name);
          field(in.fixed, lk);
          tokens[idx(l.owner)].push_back(std::move(in));
        }
      }
      for (auto t : c.contexts) {
        tokens[idx(c.handle)].push_back(Token{"c", {idx(t)}});
        tokens[idx(t)].push_back(Token{"C", {idx(c.handle)}});
      }
    }
    for (const auto& r : graph.relations()) {
      if (!inc.has(r)) continue;
      std::string fixed;
      field(fixed, r.type);
      field(fixed, basis_fixed(r.basis));
      field(fixed, r.source.value_or(""));
      for (const auto& e : r.evidence) field(fixed, e);
      std::vector<std::size_t> deps = basis_refs(r.basis, graph, first_id);
      for (const auto& [key, basis] : r.attributes) {
        if (!inc.has(r, key)) continue;
        field(fixed, literal_key(key));
        field(fixed, basis_fixed(basis));
        auto more = basis_refs(basis, graph, first_id);
        deps.insert(deps.end(), more.begin(), more.end());
      }
      auto with_head = [&](std::size_t head) {
        std::vector<std::size_t> refs{head};
        refs.insert(refs.end(), deps.begin(), deps.end());
        return refs;
      };
      tokens[idx(r.from)].push_back(Token{"o" + fixed, with_head(idx(r.to))});
      tokens[idx(r.to)].push_back(Token{"i" + fixed, with_head(idx(r.from))});
      auto add_dep_in = [&](const BasisTag& b) {
        for (const auto& l : b.depends_on) {
          Token in{"R" + fixed, {idx(r.from), idx(r.to)}};
          field(in.fixed, l.name);
          tokens[idx(l.owner)].push_back(std::move(in));
        }
      };
      add_dep_in(r.basis);
      for (const auto& [key, basis] : r.attributes) {
        if (inc.has(r, key)) add_dep_in(basis);
      }
    }

    // Assigns dense ranks to blank concepts by signature.
    auto rerank = [&](const std::vector<std::string>& sig) {
      std::vector<std::string> distinct;
      for (auto i : blanks) distinct.push_back(sig[i]);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (auto i : blanks) {
        const auto rank = std::lower_bound(distinct.begin(), distinct.end(), sig[i]) - distinct.begin();
        color[i] = "B" + padded(static_cast<std::size_t>(rank), 8);
      }
      return distinct.size();
    };

    auto refine = [&](std::size_t classes) {
      while (true) {
        std::vector<std::string> sig(n);
        for (auto i : blanks) {
          std::vector<std::string> rendered;
          rendered.reserve(tokens[i].size());
          for (const auto& t : tokens[i]) rendered.push_back(render(t, color));
          std::sort(rendered.begin(), rendered.end());
          std::string s = color[i];
          for (const auto& r : rendered) field(s, r);
          sig[i] = std::move(s);
        }
        const auto next = rerank(sig);
        if (next == classes) return classes;
        classes = next;
      }
    };

    std::size_t classes = refine(rerank(initial));
    // Break remaining ties by individualizing one member of the first tied
    // class, then refining again.
    while (classes < blanks.size()) {
      std::map<std::string, std::vector<std::size_t>> by_color;
      for (auto i : blanks) by_color[color[i]].push_back(i);
      std::size_t chosen = n;
      for (const auto& [col, members] : by_color) {
        if (members.size() > 1) {
          chosen = members.front();
          break;
        }
      }
      std::vector<std::string> sig(n);
      for (auto i : blanks) sig[i] = color[i] + (i == chosen ? "0" : "1");
      classes = refine(rerank(sig));
    }

    std::vector<std::size_t> ordered = blanks;
    std::sort(ordered.begin(), ordered.end(),
              [&](std::size_t a, std::size_t b) { return color[a] < color[b]; });
    for (std::size_t k = 0; k < ordered.size(); ++k) {
      labels.subject.emplace(concepts[ordered[k]].handle, Term::blank("b" + padded(k, 6)));
    }
  }

  for (const auto& c : concepts) labels.order.push_back(c.handle);
  std::sort(labels.order.begin(), labels.order.end(), [&](ConceptHandle a, ConceptHandle b) {
    return to_ntriples(labels.subject.at(a)) < to_ntriples(labels.subject.at(b));
  });
  return labels;
}

void check_vocab(const VocabularyConfig& config) {
  if (!text::is_absolute_iri(config.vocab_base)) {
    throw Error(Errc::InvalidVocabulary, "vocabulary base \"" + config.vocab_base + "\" is not absolute");
  }
}

}  // namespace

Vocabulary::Vocabulary(std::string base) : base_(std::move(base)) {}

std::string Vocabulary::basis_iri(BasisKind kind) const {
  return base_ + "basis/" + std::string(basis_name(kind));
}

ConceptLabels label_concepts(const Graph& graph, const VocabularyConfig& config) {
  return label_with(graph, compute_inclusion(graph, config));
}

// ---------------------------------------------------------------------------
// Export

namespace {

struct Annotation {
  Triple triple;
  const BasisTag* basis = nullptr;
  const Relation* relation = nullptr;  // set for relation triples
  const TypedLiteral* literal = nullptr;
};

}  // namespace

std::vector<Triple> export_triples(const Graph& graph, const VocabularyConfig& config) {
  check_vocab(config);
  const Vocabulary vocab(config.vocab_base);
  const Inclusion inc = compute_inclusion(graph, config);

  auto check_opaque = [&](const AttributeKey& key) {
    if (key.value.is_opaque() && !config.allow_opaque) {
      throw Error(Errc::OpaqueLiteralPresent, "attribute \"" + key.name + "\" holds an opaque value");
    }
  };
  for (const auto& c : graph.concepts()) {
    for (const auto& [key, basis] : c.attributes) {
      if (inc.has(c, key)) check_opaque(key);
    }
  }
  for (const auto& r : graph.relations()) {
    for (const auto& [key, basis] : r.attributes) {
      if (inc.has(r, key)) check_opaque(key);
    }
  }

  const ConceptLabels labels = label_with(graph, inc);
  auto subject_of = [&](ConceptHandle h) -> const Term& { return labels.subject.at(h); };
  auto literal_term = [&](const TypedLiteral& v) {
    return Term::literal(v.lexical(), datatype_for(v.kind(), vocab));
  };

  std::vector<Triple> out;
  auto emit = [&out](Term s, std::string p, Term o) {
    out.push_back({std::move(s), Term::iri(std::move(p)), std::move(o)});
  };

  // Hierarchies, data sources, graph-level provenance.
  for (const auto& [id, cls] : graph.classes()) {
    if (cls.parent) emit(Term::iri(vocab.class_iri(id)), kRdfsSubClassOf, Term::iri(vocab.class_iri(*cls.parent)));
    if (!cls.description.empty()) emit(Term::iri(vocab.class_iri(id)), kRdfsComment, Term::literal(cls.description));
  }
  for (const auto& [id, rt] : graph.relation_types()) {
    if (rt.parent) emit(Term::iri(vocab.rel_iri(id)), kRdfsSubPropertyOf, Term::iri(vocab.rel_iri(*rt.parent)));
    if (!rt.description.empty()) emit(Term::iri(vocab.rel_iri(id)), kRdfsComment, Term::literal(rt.description));
  }
  for (const auto& [id, ds] : graph.data_sources()) {
    emit(Term::iri(vocab.source_iri(id)), kRdfType, Term::iri(vocab.term("DataSource")));
    if (!ds.description.empty()) emit(Term::iri(vocab.source_iri(id)), kRdfsComment, Term::literal(ds.description));
  }
  if (graph.provenance()) {
    emit(Term::iri(vocab.term("graph")), vocab.term("provenance"), Term::literal(*graph.provenance()));
  }

  std::vector<Annotation> level1;
  for (const auto& c : graph.concepts()) {
    const Term& s = subject_of(c.handle);
    emit(s, kRdfType, Term::iri(vocab.class_iri(c.class_id)));
    for (const auto& acc : c.accessions) {
      emit(s, vocab.term("accession"), Term::iri(graph.registry().mint_uri(acc)));
    }
    if (c.source) emit(s, vocab.term("dataSource"), Term::iri(vocab.source_iri(*c.source)));
    for (const auto& e : c.evidence) emit(s, vocab.term("evidence"), Term::iri(vocab.evidence_iri(e)));
    for (auto t : c.contexts) emit(s, vocab.term("context"), subject_of(t));
    for (const auto& [key, basis] : c.attributes) {
      if (!inc.has(c, key)) continue;
      Triple t{s, Term::iri(vocab.attr_iri(key.name)), literal_term(key.value)};
      out.push_back(t);
      level1.push_back({std::move(t), &basis, nullptr, &key.value});
    }
  }
  for (const auto& r : graph.relations()) {
    if (!inc.has(r)) continue;
    Triple t{subject_of(r.from), Term::iri(vocab.rel_iri(r.type)), subject_of(r.to)};
    out.push_back(t);
    level1.push_back({std::move(t), &r.basis, &r, nullptr});
  }

  // Shared dependency locator nodes.
  std::map<std::pair<std::string, std::string>, std::pair<Term, std::string>> locators;
  auto collect_locators = [&](const BasisTag& b) {
    for (const auto& l : b.depends_on) {
      const Term& target = subject_of(l.owner);
      locators.emplace(std::make_pair(to_ntriples(target), l.name), std::make_pair(target, l.name));
    }
  };
  for (const auto& a : level1) collect_locators(*a.basis);
  for (const auto& r : graph.relations()) {
    for (const auto& [key, basis] : r.attributes) {
      if (inc.has(r, key)) collect_locators(basis);
    }
  }
  std::map<std::pair<std::string, std::string>, Term> locator_node;
  {
    std::size_t k = 0;
    for (const auto& [key, value] : locators) {
      Term node = Term::blank("d" + padded(k++, 6));
      emit(node, vocab.term("target"), value.first);
      emit(node, vocab.term("attribute"), Term::iri(vocab.attr_iri(value.second)));
      locator_node.emplace(key, std::move(node));
    }
  }

  std::size_t next_statement = 0;
  auto by_serialization = [](std::vector<Annotation>& list) {
    std::sort(list.begin(), list.end(), [](const Annotation& a, const Annotation& b) {
      return std::make_tuple(to_ntriples(a.triple.subject), to_ntriples(a.triple.predicate),
                             to_ntriples(a.triple.object)) <
             std::make_tuple(to_ntriples(b.triple.subject), to_ntriples(b.triple.predicate),
                             to_ntriples(b.triple.object));
    });
  };
  auto annotate = [&](const Annotation& a) {
    Term node = Term::blank("s" + padded(next_statement++, 6));
    emit(node, kRdfSubject, a.triple.subject);
    emit(node, kRdfPredicate, a.triple.predicate);
    emit(node, kRdfObject, a.triple.object);
    emit(node, vocab.term("basis"), Term::iri(vocab.basis_iri(a.basis->kind)));
    for (const auto& l : a.basis->depends_on) {
      emit(node, vocab.term("dependsOn"),
           locator_node.at({to_ntriples(subject_of(l.owner)), l.name}));
    }
    if (a.literal && a.literal->is_opaque()) {
      emit(node, vocab.term("opaqueOrigin"), Term::literal(a.literal->origin()));
    }
    return node;
  };

  by_serialization(level1);
  std::vector<Annotation> level2;
  for (const auto& a : level1) {
    Term node = annotate(a);
    if (!a.relation) continue;
    const Relation& r = *a.relation;
    if (r.source) emit(node, vocab.term("dataSource"), Term::iri(vocab.source_iri(*r.source)));
    for (const auto& e : r.evidence) emit(node, vocab.term("evidence"), Term::iri(vocab.evidence_iri(e)));
    for (const auto& [key, basis] : r.attributes) {
      if (!inc.has(r, key)) continue;
      Triple t{node, Term::iri(vocab.attr_iri(key.name)), literal_term(key.value)};
      out.push_back(t);
      level2.push_back({std::move(t), &basis, nullptr, &key.value});
    }
  }
  by_serialization(level2);
  for (const auto& a : level2) annotate(a);

  canonical_sort(out);
  return out;
}

// ---------------------------------------------------------------------------
// Import

namespace {

[[noreturn]] void inconsistent(const std::string& what) { throw Error(Errc::InconsistentBasis, what); }
[[noreturn]] void bad_vocab(const std::string& what) { throw Error(Errc::InvalidVocabulary, what); }

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

struct StatementInfo {
  Term node;
  Triple target;
  BasisKind basis = BasisKind::Asserted;
  std::vector<Term> depends_on;  // locator nodes
  std::optional<std::string> source;
  std::vector<std::string> evidence;
  std::optional<std::string> opaque_origin;
  bool used = false;
};

class Importer {
 public:
  Importer(std::span<const Triple> triples, std::shared_ptr<const NamespaceRegistry> registry,
           const VocabularyConfig& config)
      : triples_(triples),
        vocab_(config.vocab_base),
        config_(config),
        graph_(std::move(registry), config.allow_opaque ? GraphOrigin::Legacy : GraphOrigin::Native) {}

  Graph run() {
    index();
    define_types();
    classify_subjects();
    create_concepts();
    read_statements();
    populate();
    for (const auto& [key, st] : statements_) {
      if (!st.used) inconsistent("statement " + to_ntriples(st.node) + " describes a missing triple");
    }
    try {
      graph_.freeze();
    } catch (const Error& e) {
      inconsistent(e.what());
    }
    return std::move(graph_);
  }

 private:
  std::optional<std::string> strip(std::string_view iri, std::string_view local) const {
    const std::string prefix = vocab_.base() + std::string(local);
    if (iri.size() > prefix.size() && starts_with(iri, prefix)) return std::string(iri.substr(prefix.size()));
    return std::nullopt;
  }

  void index() {
    for (const auto& t : triples_) by_subject_[t.subject].push_back(&t);
  }

  void define_types() {
    std::map<std::string, std::string> class_parent;
    std::map<std::string, std::string> rel_parent;
    std::map<std::string, std::string> class_comment, rel_comment, source_comment;
    std::set<std::string> class_ids, rel_ids, source_ids;

    for (const auto& t : triples_) {
      const auto& p = t.predicate.value;
      const std::string s = t.subject.is_iri() ? t.subject.value : std::string();
      if (p == kRdfsSubClassOf && t.object.is_iri()) {
        auto child = strip(s, "class/");
        auto parent = strip(t.object.value, "class/");
        if (child && parent) {
          if (!class_parent.emplace(*child, *parent).second && class_parent[*child] != *parent) {
            bad_vocab("class " + *child + " has several parents");
          }
          class_ids.insert(*child);
          class_ids.insert(*parent);
          continue;
        }
      }
      if (p == kRdfsSubPropertyOf && t.object.is_iri()) {
        auto child = strip(s, "rel/");
        auto parent = strip(t.object.value, "rel/");
        if (child && parent) {
          if (!rel_parent.emplace(*child, *parent).second && rel_parent[*child] != *parent) {
            bad_vocab("relation type " + *child + " has several parents");
          }
          rel_ids.insert(*child);
          rel_ids.insert(*parent);
          continue;
        }
      }
      if (p == kRdfsComment && t.object.is_literal()) {
        if (auto id = strip(s, "class/")) class_comment[*id] = t.object.value;
        if (auto id = strip(s, "rel/")) rel_comment[*id] = t.object.value;
        if (auto id = strip(s, "source/")) source_comment[*id] = t.object.value;
      }
      if (p == kRdfType && t.object.is_iri()) {
        if (auto id = strip(t.object.value, "class/")) class_ids.insert(*id);
        if (t.object.value == vocab_.term("DataSource")) {
          if (auto id = strip(s, "source/")) source_ids.insert(*id);
        }
      }
      if (auto id = strip(p, "rel/"); id && !t.object.is_literal()) rel_ids.insert(*id);
      if (p == vocab_.term("dataSource") && t.object.is_iri()) {
        if (auto id = strip(t.object.value, "source/")) source_ids.insert(*id);
      }
      if (s == vocab_.term("graph") && p == vocab_.term("provenance") && t.object.is_literal()) {
        graph_.set_provenance(t.object.value);
      }
    }

    auto define_all = [](const std::set<std::string>& ids, std::map<std::string, std::string>& parent,
                         std::map<std::string, std::string>& comment, std::string_view root,
                         auto&& exists, auto&& define) {
      std::set<std::string> visiting;
      std::function<void(const std::string&)> visit = [&](const std::string& id) {
        if (exists(id)) return;
        if (id == root) return;
        if (!visiting.insert(id).second) bad_vocab("hierarchy cycle through " + id);
        auto it = parent.find(id);
        const std::string p = it == parent.end() ? std::string(root) : it->second;
        visit(p);
        define(id, p, comment.count(id) ? comment[id] : std::string());
      };
      if (parent.count(std::string(root))) bad_vocab(std::string(root) + " cannot have a parent");
      for (const auto& id : ids) visit(id);
    };
    define_all(
        class_ids, class_parent, class_comment, kRootClass,
        [this](const std::string& id) { return graph_.find_class(id) != nullptr; },
        [this](const std::string& id, const std::string& p, std::string d) {
          graph_.define_concept_class(id, p, std::move(d));
        });
    define_all(
        rel_ids, rel_parent, rel_comment, kRootRelationType,
        [this](const std::string& id) { return graph_.find_relation_type(id) != nullptr; },
        [this](const std::string& id, const std::string& p, std::string d) {
          graph_.define_relation_type(id, p, std::move(d));
        });
    for (const auto& id : source_ids) {
      graph_.define_data_source(id, source_comment.count(id) ? source_comment[id] : std::string());
    }
  }

  bool is_vocab_subject(const Term& t) const {
    if (!t.is_iri()) return false;
    return strip(t.value, "class/") || strip(t.value, "rel/") || strip(t.value, "source/") ||
           t.value == vocab_.term("graph");
  }

  void classify_subjects() {
    for (const auto& [subject, list] : by_subject_) {
      for (const auto* t : list) {
        const auto& p = t->predicate.value;
        if (p == kRdfSubject || p == kRdfPredicate || p == kRdfObject || p == vocab_.term("basis")) {
          statement_nodes_.insert(subject);
        }
        if (t->predicate.value == vocab_.term("target")) locator_nodes_.insert(subject);
      }
    }
    auto consider = [this](const Term& t) {
      if (t.is_literal() || statement_nodes_.count(t) || locator_nodes_.count(t) || is_vocab_subject(t)) return;
      concept_terms_.insert(t);
    };
    for (const auto& [subject, list] : by_subject_) consider(subject);
    for (const auto& t : triples_) {
      const auto& p = t.predicate.value;
      if (strip(p, "rel/") || p == vocab_.term("context") || p == vocab_.term("target")) {
        if (!t.object.is_literal()) consider(t.object);
      }
    }
  }

  void create_concepts() {
    for (const auto& term : concept_terms_) {
      std::optional<std::string> cls;
      std::vector<Accession> accessions;
      std::optional<std::string> source;
      if (term.is_iri()) {
        if (auto acc = graph_.registry().try_parse_uri(term.value)) accessions.push_back(*acc);
      }
      if (auto it = by_subject_.find(term); it != by_subject_.end()) {
        for (const auto* t : it->second) {
          const auto& p = t->predicate.value;
          if (p == kRdfType) {
            auto id = t->object.is_iri() ? strip(t->object.value, "class/") : std::nullopt;
            if (!id) throw Error(Errc::UnknownClass, "rdf:type " + to_ntriples(t->object) + " is not a known class");
            if (cls && *cls != *id) bad_vocab(to_ntriples(term) + " has several classes");
            cls = *id;
          } else if (p == vocab_.term("accession")) {
            if (!t->object.is_iri()) bad_vocab("accession object must be an IRI");
            accessions.push_back(graph_.registry().parse_uri(t->object.value));
          } else if (p == vocab_.term("dataSource")) {
            auto id = t->object.is_iri() ? strip(t->object.value, "source/") : std::nullopt;
            if (!id) bad_vocab("dataSource object must be a source IRI");
            if (source && *source != *id) bad_vocab(to_ntriples(term) + " has several data sources");
            source = *id;
          }
        }
      }
      handles_.emplace(term, graph_.create_concept(cls.value_or(std::string(kRootClass)), accessions, source));
    }
  }

  void read_statements() {
    for (const auto& node : statement_nodes_) {
      StatementInfo st;
      st.node = node;
      std::optional<Term> s, p, o;
      std::optional<BasisKind> basis;
      auto set_once = [&](std::optional<Term>& slot, const Term& v) {
        if (slot && *slot != v) inconsistent(to_ntriples(node) + " describes several triples");
        slot = v;
      };
      for (const auto* t : by_subject_.at(node)) {
        const auto& pred = t->predicate.value;
        if (pred == kRdfSubject) {
          set_once(s, t->object);
        } else if (pred == kRdfPredicate) {
          set_once(p, t->object);
        } else if (pred == kRdfObject) {
          set_once(o, t->object);
        } else if (pred == vocab_.term("basis")) {
          std::optional<BasisKind> kind;
          for (auto k : {BasisKind::Asserted, BasisKind::Derived, BasisKind::Instance}) {
            if (t->object.is_iri() && t->object.value == vocab_.basis_iri(k)) kind = k;
          }
          if (!kind) inconsistent("unknown basis " + to_ntriples(t->object));
          if (basis && *basis != *kind) inconsistent(to_ntriples(node) + " has conflicting bases");
          basis = kind;
        } else if (pred == vocab_.term("dependsOn")) {
          if (!locator_nodes_.count(t->object)) inconsistent("dependsOn must point at a locator node");
          st.depends_on.push_back(t->object);
        } else if (pred == vocab_.term("dataSource")) {
          auto id = t->object.is_iri() ? strip(t->object.value, "source/") : std::nullopt;
          if (!id) bad_vocab("dataSource object must be a source IRI");
          st.source = *id;
        } else if (pred == vocab_.term("evidence")) {
          auto id = t->object.is_iri() ? strip(t->object.value, "evidence/") : std::nullopt;
          if (!id) bad_vocab("evidence object must be an evidence IRI");
          st.evidence.push_back(*id);
        } else if (pred == vocab_.term("opaqueOrigin") && t->object.is_literal()) {
          st.opaque_origin = t->object.value;
        }
      }
      if (!s || !p || !o || !p->is_iri()) inconsistent(to_ntriples(node) + " is an incomplete statement");
      if (!basis) inconsistent(to_ntriples(node) + " has no basis");
      st.basis = *basis;
      st.target = Triple{*s, *p, *o};
      auto target = st.target;
      if (!statements_.emplace(std::move(target), std::move(st)).second) {
        inconsistent("two statements describe " + to_ntriples(Triple{*s, *p, *o}));
      }
    }
  }

  AttributeLocator locator(const Term& node) const {
    std::optional<Term> target;
    std::optional<std::string> name;
    for (const auto* t : by_subject_.at(node)) {
      if (t->predicate.value == vocab_.term("target")) target = t->object;
      if (t->predicate.value == vocab_.term("attribute") && t->object.is_iri()) {
        name = strip(t->object.value, "attr/");
      }
    }
    if (!target || !name || !handles_.count(*target)) inconsistent("malformed locator " + to_ntriples(node));
    return {handles_.at(*target), *name};
  }

  BasisTag basis_of(StatementInfo* st) const {
    if (!st) return BasisTag::asserted();
    BasisTag b;
    b.kind = st->basis;
    for (const auto& node : st->depends_on) b.depends_on.insert(locator(node));
    if (b.kind == BasisKind::Derived && b.depends_on.empty()) inconsistent("derived statement without dependencies");
    if (b.kind != BasisKind::Derived && !b.depends_on.empty()) inconsistent("dependencies on a non-derived statement");
    return b;
  }

  StatementInfo* statement_for(const Triple& t) {
    auto it = statements_.find(t);
    if (it == statements_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  TypedLiteral literal_value(const Term& object, StatementInfo* st) const {
    const auto& dt = object.datatype;
    if (dt == vocab_.term("opaque")) {
      if (!config_.allow_opaque) {
        throw Error(Errc::OpaqueLiteralPresent, "opaque literal in input");
      }
      return TypedLiteral::opaque(object.value, st && st->opaque_origin ? *st->opaque_origin : std::string());
    }
    for (auto k : {LiteralKind::Integer, LiteralKind::Decimal, LiteralKind::Boolean, LiteralKind::IriRef}) {
      if (dt == datatype_for(k, vocab_)) return TypedLiteral(k, object.value);
    }
    return TypedLiteral::string(object.value);
  }

  static std::string as_string(const Term& t) {
    return t.value;
  }

  void add_attr(Subject subject, const std::string& name, const TypedLiteral& value, BasisTag basis) {
    if (value.is_opaque()) {
      graph_.add_legacy_attribute(subject, name, value, std::move(basis));
    } else {
      graph_.add_attribute(subject, name, value, std::move(basis));
    }
  }

  void populate() {
    for (const auto& term : concept_terms_) {
      const ConceptHandle c = handles_.at(term);
      auto it = by_subject_.find(term);
      if (it == by_subject_.end()) continue;
      for (const auto* t : it->second) {
        const auto& p = t->predicate.value;
        if (p == kRdfType || p == vocab_.term("accession") || p == vocab_.term("dataSource")) continue;
        if (p == vocab_.term("evidence")) {
          auto id = t->object.is_iri() ? strip(t->object.value, "evidence/") : std::nullopt;
          if (!id) bad_vocab("evidence object must be an evidence IRI");
          graph_.add_evidence(c, *id);
          continue;
        }
        if (p == vocab_.term("context") && !t->object.is_literal()) {
          graph_.add_context(c, handles_.at(t->object));
          continue;
        }
        if (auto name = strip(p, "attr/"); name && t->object.is_literal()) {
          StatementInfo* st = statement_for(*t);
          add_attr(c, *name, literal_value(t->object, st), basis_of(st));
          continue;
        }
        if (auto type = strip(p, "rel/"); type && !t->object.is_literal()) {
          add_relation(c, *type, *t);
          continue;
        }
        // Anything else is kept as a plain string attribute.
        StatementInfo* st = statement_for(*t);
        add_attr(c, p, TypedLiteral::string(as_string(t->object)), basis_of(st));
      }
    }
  }

  void add_relation(ConceptHandle from, const std::string& type, const Triple& t) {
    StatementInfo* st = statement_for(t);
    const RelationHandle r = graph_.create_relation(from, handles_.at(t.object), type, basis_of(st));
    if (!st) return;
    if (st->source) {
      if (!graph_.find_data_source(*st->source)) graph_.define_data_source(*st->source);
      graph_.set_source(r, *st->source);
    }
    for (const auto& e : st->evidence) {
      try {
        graph_.add_evidence(r, e);
      } catch (const Error& err) {
        inconsistent(err.what());
      }
    }
    auto it = by_subject_.find(st->node);
    for (const auto* a : it->second) {
      auto name = strip(a->predicate.value, "attr/");
      if (!name || !a->object.is_literal()) continue;
      StatementInfo* nested = statement_for(*a);
      add_attr(r, *name, literal_value(a->object, nested), basis_of(nested));
    }
  }

  std::span<const Triple> triples_;
  Vocabulary vocab_;
  VocabularyConfig config_;
  Graph graph_;
  std::map<Term, std::vector<const Triple*>> by_subject_;
  std::set<Term> statement_nodes_;
  std::set<Term> locator_nodes_;
  std::set<Term> concept_terms_;
  std::map<Term, ConceptHandle> handles_;
  std::map<Triple, StatementInfo> statements_;
};

}  // namespace

Graph import_graph(std::span<const Triple> triples, std::shared_ptr<const NamespaceRegistry> registry,
                   const VocabularyConfig& config) {
  check_vocab(config);
  return Importer(triples, std::move(registry), config).run();
}

}  // namespace obridge::rdf
