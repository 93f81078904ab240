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

#include "obridge/identity.hpp"

#include "obridge/error.hpp"
#include "obridge/text.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace obridge {

namespace {

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (unreserved(c)) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::optional<std::string> percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out.push_back(s[i]);
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    const int hi = hex_value(s[i + 1]);
    const int lo = hex_value(s[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  if (!text::is_valid_utf8(out)) return std::nullopt;
  return out;
}

void NamespaceRegistry::register_namespace(NamespaceEntry entry) {
  if (!text::is_name_token(entry.prefix)) {
    throw Error(Errc::InvalidName, "namespace prefix \"" + entry.prefix + "\"");
  }
  if (!text::is_absolute_iri(entry.base_iri)) {
    throw Error(Errc::RelativeBaseIri, "base IRI \"" + entry.base_iri + "\" is not absolute");
  }
  const char last = entry.base_iri.back();
  if (last != '/' && last != '#') {
    throw Error(Errc::InvalidBaseIri, "base IRI \"" + entry.base_iri + "\" must end in '/' or '#'");
  }
  auto taken = [this](const std::string& name) { return names_.count(name) != 0; };
  if (taken(entry.prefix)) throw Error(Errc::DuplicatePrefix, "\"" + entry.prefix + "\"");
  for (const auto& alias : entry.aliases) {
    if (!text::is_name_token(alias)) throw Error(Errc::InvalidName, "alias \"" + alias + "\"");
    if (taken(alias) || alias == entry.prefix) {
      throw Error(Errc::DuplicatePrefix, "alias \"" + alias + "\"");
    }
  }
  for (const auto& [prefix, other] : entries_) {
    if (other.base_iri == entry.base_iri) {
      throw Error(Errc::DuplicateBaseIri, "\"" + entry.base_iri + "\" already belongs to " + prefix);
    }
  }
  names_.emplace(entry.prefix, entry.prefix);
  for (const auto& alias : entry.aliases) names_.emplace(alias, entry.prefix);
  auto prefix = entry.prefix;
  entries_.emplace(std::move(prefix), std::move(entry));
}

const NamespaceEntry* NamespaceRegistry::find(std::string_view prefix_or_alias) const {
  auto it = names_.find(prefix_or_alias);
  if (it == names_.end()) return nullptr;
  return &entries_.find(it->second)->second;
}

const std::string& NamespaceRegistry::canonical_prefix(std::string_view prefix_or_alias) const {
  const auto* entry = find(prefix_or_alias);
  if (!entry) {
    throw Error(Errc::UnknownNamespace,
                "namespace \"" + std::string(prefix_or_alias) + "\" is not registered");
  }
  return entry->prefix;
}

std::string NamespaceRegistry::mint_uri(const Accession& accession) const {
  const auto* entry = find(accession.ns);
  if (!entry) {
    throw Error(Errc::UnknownNamespace, "namespace \"" + accession.ns + "\" is not registered");
  }
  return entry->base_iri + percent_encode(accession.local_id);
}

std::optional<Accession> NamespaceRegistry::try_parse_uri(std::string_view iri) const {
  const NamespaceEntry* best = nullptr;
  for (const auto& [prefix, entry] : entries_) {
    if (iri.size() > entry.base_iri.size() && iri.substr(0, entry.base_iri.size()) == entry.base_iri &&
        (!best || entry.base_iri.size() > best->base_iri.size())) {
      best = &entry;
    }
  }
  if (!best) return std::nullopt;
  auto local = percent_decode(iri.substr(best->base_iri.size()));
  if (!local || local->empty()) return std::nullopt;
  return Accession{best->prefix, std::move(*local)};
}

Accession NamespaceRegistry::parse_uri(std::string_view iri) const {
  if (auto acc = try_parse_uri(iri)) return *acc;
  throw Error(Errc::NoMatchingNamespace, "no registered namespace matches <" + std::string(iri) + ">");
}

NamespaceRegistry parse_registry(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidConfig, std::string("registry: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("namespaces") || !doc["namespaces"].is_array()) {
    throw Error(Errc::InvalidConfig, "registry: expected {\"namespaces\": [...]}");
  }
  NamespaceRegistry registry;
  for (const auto& item : doc["namespaces"]) {
    if (!item.is_object() || !item.contains("prefix") || !item["prefix"].is_string() ||
        !item.contains("base_iri") || !item["base_iri"].is_string()) {
      throw Error(Errc::InvalidConfig, "registry: each namespace needs string prefix and base_iri");
    }
    NamespaceEntry entry;
    entry.prefix = item["prefix"].get<std::string>();
    entry.base_iri = item["base_iri"].get<std::string>();
    if (auto it = item.find("authority"); it != item.end() && it->is_string()) {
      entry.authority = it->get<std::string>();
    }
    if (auto it = item.find("aliases"); it != item.end()) {
      if (!it->is_array()) throw Error(Errc::InvalidConfig, "registry: aliases must be a list");
      for (const auto& a : *it) {
        if (!a.is_string()) throw Error(Errc::InvalidConfig, "registry: alias must be a string");
        entry.aliases.insert(a.get<std::string>());
      }
    }
    registry.register_namespace(std::move(entry));
  }
  return registry;
}

NamespaceRegistry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidConfig, "cannot read registry " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

IdentityMap align_graphs(const Graph& left, const Graph& right) {
  if (left.registry_ptr() != right.registry_ptr()) {
    throw Error(Errc::RegistryMismatch, "graphs were built against different registries");
  }
  std::map<Accession, std::vector<ConceptHandle>> by_accession;
  for (const auto& c : right.concepts()) {
    for (const auto& acc : c.accessions) by_accession[acc].push_back(c.handle);
  }
  std::map<std::pair<ConceptHandle, ConceptHandle>, std::vector<Accession>> shared;
  for (const auto& c : left.concepts()) {
    for (const auto& acc : c.accessions) {
      auto it = by_accession.find(acc);
      if (it == by_accession.end()) continue;
      for (auto r : it->second) shared[{c.handle, r}].push_back(acc);
    }
  }
  std::map<ConceptHandle, int> left_degree;
  std::map<ConceptHandle, int> right_degree;
  for (const auto& [key, accs] : shared) {
    ++left_degree[key.first];
    ++right_degree[key.second];
  }
  IdentityMap out;
  out.pairs.reserve(shared.size());
  for (auto& [key, accs] : shared) {
    const bool ambiguous = left_degree[key.first] > 1 || right_degree[key.second] > 1;
    out.pairs.push_back({key.first, key.second, std::move(accs), ambiguous});
  }
  return out;
}

}  // namespace obridge
