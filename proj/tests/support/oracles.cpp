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

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace obridge::testing {

namespace {

// Everything about a concept that does not mention another handle.
std::string local_signature(const Graph& g, const Concept& c) {
  std::string s = c.class_id + "|";
  for (const auto& a : c.accessions) s += a.ns + ":" + a.local_id + ";";
  s += "|" + c.source.value_or("-") + "|";
  for (const auto& e : c.evidence) s += e + ";";
  s += "|" + std::to_string(c.contexts.size()) + "|";
  for (const auto& [key, basis] : c.attributes) {
    s += key.name + "=" + std::string(kind_name(key.value.kind())) + ":" + key.value.lexical() + "/" +
         std::string(basis_name(basis.kind)) + std::to_string(basis.depends_on.size()) + ";";
  }
  std::multiset<std::string> out;
  std::multiset<std::string> in;
  for (const auto& r : g.relations()) {
    if (r.from == c.handle) out.insert(r.type);
    if (r.to == c.handle) in.insert(r.type);
  }
  s += "|out:";
  for (const auto& t : out) s += t + ",";
  s += "|in:";
  for (const auto& t : in) s += t + ",";
  return s;
}

class Matcher {
 public:
  Matcher(const Graph& a, const Graph& b) : a_(a), b_(b), a_adj_(adjacency(a)), b_adj_(adjacency(b)) {
    for (const auto& r : b.relations()) b_edges_.insert({r.from, r.to, r.type});
    for (const auto& r : a.relations()) a_edges_.insert({r.from, r.to, r.type});
    for (const auto& c : b.concepts()) b_by_sig_[local_signature(b, c)].push_back(c.handle);
    for (const auto& c : a.concepts()) {
      const auto sig = local_signature(a, c);
      order_.push_back({c.handle, &b_by_sig_[sig]});
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [](const auto& x, const auto& y) { return x.second->size() < y.second->size(); });
  }

  bool run(std::string* why) {
    for (const auto& [h, cands] : order_) {
      if (cands->empty()) {
        if (why) *why = "no counterpart for concept with signature of #" + std::to_string(h.local_id);
        return false;
      }
    }
    if (!search(0)) {
      if (why) *why = last_failure_.empty() ? "no consistent concept mapping" : last_failure_;
      return false;
    }
    return true;
  }

 private:
  struct Adjacent {
    ConceptHandle other;
    std::string type;  // "" marks a context link
    bool outgoing;
  };

  static std::map<ConceptHandle, std::vector<Adjacent>> adjacency(const Graph& g) {
    std::map<ConceptHandle, std::vector<Adjacent>> adj;
    for (const auto& r : g.relations()) {
      adj[r.from].push_back({r.to, r.type, true});
      adj[r.to].push_back({r.from, r.type, false});
    }
    for (const auto& c : g.concepts()) {
      for (auto t : c.contexts) {
        adj[c.handle].push_back({t, "", true});
        adj[t].push_back({c.handle, "", false});
      }
    }
    return adj;
  }

  static bool linked(const Graph& g, const std::set<std::tuple<ConceptHandle, ConceptHandle, std::string>>& edges,
                     ConceptHandle from, ConceptHandle to, const std::string& type) {
    if (type.empty()) return g.concept_at(from).contexts.count(to) > 0;
    return edges.count({from, to, type}) > 0;
  }

  // Links between x and already mapped concepts (or itself) must exist on
  // both sides.
  bool consistent(ConceptHandle x, ConceptHandle y) {
    for (const auto& adj : a_adj_[x]) {
      std::optional<ConceptHandle> q;
      if (adj.other == x) {
        q = y;
      } else if (auto it = map_.find(adj.other); it != map_.end()) {
        q = it->second;
      }
      if (!q) continue;
      const bool ok = adj.outgoing ? linked(b_, b_edges_, y, *q, adj.type) : linked(b_, b_edges_, *q, y, adj.type);
      if (!ok) return false;
    }
    for (const auto& adj : b_adj_[y]) {
      std::optional<ConceptHandle> p;
      if (adj.other == y) {
        p = x;
      } else if (auto it = reverse_.find(adj.other); it != reverse_.end()) {
        p = it->second;
      }
      if (!p) continue;
      const bool ok = adj.outgoing ? linked(a_, a_edges_, x, *p, adj.type) : linked(a_, a_edges_, *p, x, adj.type);
      if (!ok) return false;
    }
    return true;
  }

  bool search(std::size_t i) {
    if (i == order_.size()) return verify();
    const auto& [x, cands] = order_[i];
    for (auto y : *cands) {
      if (reverse_.count(y)) continue;
      if (!consistent(x, y)) continue;
      map_[x] = y;
      reverse_[y] = x;
      if (search(i + 1)) return true;
      map_.erase(x);
      reverse_.erase(y);
    }
    return false;
  }

  BasisTag mapped(const BasisTag& b) const {
    BasisTag out{b.kind, {}};
    for (const auto& loc : b.depends_on) out.depends_on.insert({map_.at(loc.owner), loc.name});
    return out;
  }

  AttributeSet mapped(const AttributeSet& s) const {
    AttributeSet out;
    for (const auto& [k, b] : s) out.emplace(k, mapped(b));
    return out;
  }

  bool verify() {
    for (const auto& ca : a_.concepts()) {
      const auto& cb = b_.concept_at(map_.at(ca.handle));
      std::set<ConceptHandle> ctx;
      for (auto t : ca.contexts) ctx.insert(map_.at(t));
      if (ca.class_id != cb.class_id || ca.accessions != cb.accessions || ca.source != cb.source ||
          ca.evidence != cb.evidence || ctx != cb.contexts || mapped(ca.attributes) != cb.attributes) {
        last_failure_ = "concept content differs under mapping";
        return false;
      }
    }
    for (const auto& ra : a_.relations()) {
      auto hb = b_.find_relation(map_.at(ra.from), map_.at(ra.to), ra.type);
      if (!hb) {
        last_failure_ = "missing relation";
        return false;
      }
      const auto& rb = b_.relation_at(*hb);
      if (ra.source != rb.source || ra.evidence != rb.evidence || mapped(ra.basis) != rb.basis ||
          mapped(ra.attributes) != rb.attributes) {
        last_failure_ = "relation content differs under mapping";
        return false;
      }
    }
    return true;
  }

  const Graph& a_;
  const Graph& b_;
  std::set<std::tuple<ConceptHandle, ConceptHandle, std::string>> a_edges_;
  std::set<std::tuple<ConceptHandle, ConceptHandle, std::string>> b_edges_;
  std::map<std::string, std::vector<ConceptHandle>> b_by_sig_;
  std::vector<std::pair<ConceptHandle, std::vector<ConceptHandle>*>> order_;
  std::map<ConceptHandle, ConceptHandle> map_;
  std::map<ConceptHandle, ConceptHandle> reverse_;
  std::map<ConceptHandle, std::vector<Adjacent>> a_adj_;
  std::map<ConceptHandle, std::vector<Adjacent>> b_adj_;
  std::string last_failure_;
};

template <class M>
bool same_types(const M& a, const M& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.parent != ib->second.parent ||
        ia->second.description != ib->second.description) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (!same_types(a.classes(), b.classes())) return fail("class trees differ");
  if (!same_types(a.relation_types(), b.relation_types())) return fail("relation type trees differ");
  if (a.data_sources().size() != b.data_sources().size()) return fail("data source counts differ");
  for (const auto& [id, ds] : a.data_sources()) {
    const auto* other = b.find_data_source(id);
    if (!other || other->description != ds.description) return fail("data sources differ");
  }
  if (a.provenance() != b.provenance()) return fail("provenance differs");
  if (a.concepts().size() != b.concepts().size()) return fail("concept counts differ");
  if (a.relations().size() != b.relations().size()) return fail("relation counts differ");
  return Matcher(a, b).run(why);
}

IdentityMap brute_force_align(const Graph& left, const Graph& right) {
  IdentityMap out;
  for (const auto& l : left.concepts()) {
    for (const auto& r : right.concepts()) {
      std::vector<Accession> shared;
      for (const auto& x : l.accessions) {
        for (const auto& y : r.accessions) {
          if (x == y) shared.push_back(x);
        }
      }
      if (shared.empty()) continue;
      std::sort(shared.begin(), shared.end());
      out.pairs.push_back({l.handle, r.handle, shared, false});
    }
  }
  for (auto& p : out.pairs) {
    std::size_t left_degree = 0;
    std::size_t right_degree = 0;
    for (const auto& q : out.pairs) {
      if (q.left == p.left) ++left_degree;
      if (q.right == p.right) ++right_degree;
    }
    p.ambiguous = left_degree > 1 || right_degree > 1;
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const IdentityPair& x, const IdentityPair& y) {
    return std::tie(x.left, x.right) < std::tie(y.left, y.right);
  });
  return out;
}

}  // namespace obridge::testing
