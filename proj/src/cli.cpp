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

#include "obridge/cli.hpp"

#include "obridge/audit.hpp"
#include "obridge/codec.hpp"
#include "obridge/document.hpp"
#include "obridge/error.hpp"
#include "obridge/identity.hpp"
#include "obridge/lint.hpp"
#include "obridge/ntriples.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace obridge {

namespace fs = std::filesystem;

namespace {

std::string read_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw Error(Errc::ParseFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::shared_ptr<NamespaceRegistry> open_registry(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("ONDEX_BRIDGE_REGISTRY")) path = env;
  }
  if (path.empty()) return std::make_shared<NamespaceRegistry>();
  return std::make_shared<NamespaceRegistry>(load_registry(path));
}

// Directories contribute their *.json files, recursively and in path order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(p);
    }
  }
  return out;
}

std::vector<Document> load_documents(const std::vector<std::string>& paths) {
  std::vector<Document> docs;
  for (const auto& p : expand_inputs(paths)) {
    docs.push_back(parse_document(read_input(p), p.generic_string()));
  }
  return docs;
}

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(Errc::ParseFailure, "cannot write " + out_path);
  file << payload;
}

lint::OutputFormat output_format(const std::string& name) {
  return name == "json" ? lint::OutputFormat::Json : lint::OutputFormat::Text;
}

struct ConvertOptions {
  std::string input;
  std::string from;
  std::string to;
  std::string out;
  std::string registry;
  std::string vocab_base = std::string(rdf::kDefaultVocabBase);
  bool allow_opaque = false;
  bool include_instance = false;
};

int convert(const ConvertOptions& o, std::ostream& out, std::ostream& err) {
  auto registry = open_registry(o.registry);
  const std::string bytes = read_input(o.input);
  std::string from = o.from;
  if (from.empty()) from = fs::path(o.input).extension() == ".nt" ? "ntriples" : "";
  rdf::VocabularyConfig vocab{o.vocab_base, o.include_instance, o.allow_opaque};

  std::optional<Graph> graph;
  if (from == "ntriples") {
    const auto triples = rdf::parse_ntriples(bytes);
    graph.emplace(rdf::import_graph(triples, registry, vocab));
  } else {
    std::optional<DocFormat> fmt;
    if (from == "native") fmt = DocFormat::Native;
    if (from == "legacy") fmt = DocFormat::Legacy;
    const Document doc = parse_document(bytes, o.input, fmt);
    std::vector<std::string> notes;
    graph.emplace(to_graph(doc, registry, &notes));
    for (const auto& n : notes) err << "note: " << n << "\n";
  }

  std::string to = o.to;
  if (to.empty()) to = from == "ntriples" ? "native" : "ntriples";
  if (to == "native") {
    emit(write_native(from_graph(*graph)), o.out, out);
  } else {
    emit(rdf::serialize_ntriples(rdf::export_triples(*graph, vocab)), o.out, out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convert, lint and audit Ondex-style graph documents", "ondex-bridge"};
  app.require_subcommand(1);

  ConvertOptions conv;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between native, legacy and N-Triples");
  convert_cmd->add_option("input", conv.input, "Input file")->required();
  convert_cmd->add_option("--from", conv.from, "Input format")
      ->check(CLI::IsMember({"native", "legacy", "ntriples"}));
  convert_cmd->add_option("--to", conv.to, "Output format")->check(CLI::IsMember({"native", "ntriples"}));
  convert_cmd->add_option("--out", conv.out, "Output file (default stdout)");
  convert_cmd->add_option("--registry", conv.registry, "Namespace registry JSON");
  convert_cmd->add_option("--vocab-base", conv.vocab_base, "Base IRI of the mapping vocabulary");
  convert_cmd->add_flag("--allow-opaque", conv.allow_opaque, "Export opaque literals");
  convert_cmd->add_flag("--include-instance-basis", conv.include_instance, "Export instance-basis data");

  std::vector<std::string> lint_paths;
  std::string lint_registry;
  std::string lint_rules;
  std::string lint_format = "text";
  auto* lint_cmd = app.add_subcommand("lint", "Check documents against the rule catalog");
  lint_cmd->add_option("paths", lint_paths, "Files or directories")->required();
  lint_cmd->add_option("--registry", lint_registry, "Namespace registry JSON");
  lint_cmd->add_option("--rules", lint_rules, "Rule configuration JSON");
  lint_cmd->add_option("--format", lint_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> audit_paths;
  std::string audit_registry;
  std::string audit_rules;
  std::string audit_templates;
  std::string audit_out;
  std::string audit_format = "text";
  auto* audit_cmd = app.add_subcommand("audit", "Profile element usage across a corpus");
  audit_cmd->add_option("paths", audit_paths, "Files or directories")->required();
  audit_cmd->add_option("--registry", audit_registry, "Namespace registry JSON");
  audit_cmd->add_option("--rules", audit_rules, "Rule configuration JSON");
  audit_cmd->add_option("--templates", audit_templates, "Report templates JSON");
  audit_cmd->add_option("--out", audit_out, "Output file (default stdout)");
  audit_cmd->add_option("--format", audit_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string mint_ns;
  std::string mint_id;
  std::string mint_registry;
  auto* mint_cmd = app.add_subcommand("mint", "Print the IRI of an accession");
  mint_cmd->add_option("namespace", mint_ns, "Namespace prefix or alias")->required();
  mint_cmd->add_option("id", mint_id, "Local identifier")->required();
  mint_cmd->add_option("--registry", mint_registry, "Namespace registry JSON");

  try {
    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (convert_cmd->parsed()) return convert(conv, out, err);

    if (lint_cmd->parsed()) {
      auto registry = open_registry(lint_registry);
      const auto config = lint_rules.empty() ? lint::RuleConfig{} : lint::load_rule_config(lint_rules);
      const auto docs = load_documents(lint_paths);
      const auto findings = lint::lint_corpus(docs, *registry, config);
      out << lint::render_findings(findings, output_format(lint_format));
      return lint::has_errors(findings) ? kExitLintErrors : kExitOk;
    }

    if (audit_cmd->parsed()) {
      auto registry = open_registry(audit_registry);
      const auto rules = audit_rules.empty() ? lint::RuleConfig{} : lint::load_rule_config(audit_rules);
      const auto config = audit_rules.empty() ? audit::AuditConfig{} : audit::load_audit_config(audit_rules);
      const auto templates =
          audit_templates.empty() ? audit::default_templates() : audit::load_templates(audit_templates);
      const auto docs = load_documents(audit_paths);
      const auto profiles = audit::profile_corpus(docs);
      const auto patterns = audit::detect_patterns(profiles, config);
      const auto findings = lint::lint_corpus(docs, *registry, rules);
      const auto report = audit::generate_report(profiles, patterns, templates, findings, docs.size());
      emit(audit::render_report(report, output_format(audit_format)), audit_out, out);
      return kExitOk;
    }

    if (mint_cmd->parsed()) {
      auto registry = open_registry(mint_registry);
      out << registry->mint_uri({mint_ns, mint_id}) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "ondex-bridge: " << e.what() << "\n";
    return e.code() == Errc::OpaqueLiteralPresent ? kExitRefused : kExitUsage;
  } catch (const std::exception& e) {
    err << "ondex-bridge: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace obridge
