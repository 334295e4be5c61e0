// Copyright 2026 The sempol Authors.
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

#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sempol/emit.hpp"
#include "sempol/error.hpp"
#include "sempol/model_io.hpp"
#include "sempol/normalize.hpp"
#include "sempol/reader.hpp"
#include "sempol/validate.hpp"

#ifndef SEMPOL_VERSION
#define SEMPOL_VERSION "unknown"
#endif

namespace fs = std::filesystem;

namespace sempol::cli {

namespace {

/// Failures that map to exit code 2.
class Unresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Unresolved("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Unresolved("error reading " + path.string());
  return buf.str();
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Unresolved& e) {
    err << "error: " << e.what() << "\n";
    return kUnresolved;
  } catch (const MatchError& e) {
    err << "error: " << e.what() << "\n";
    return kUnresolved;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUnresolved;
  }
}

std::string display(const QName& q, const PrefixMap& prefixes) {
  if (q.ns.empty()) return q.local;
  if (auto it = prefixes.find(q.ns); it != prefixes.end()) return it->second + ":" + q.local;
  return q.clark();
}

std::string token(const AssertionInstance& inst, const PrefixMap& prefixes) {
  std::string out = display(inst.qname, prefixes);
  if (!inst.parameters.empty()) {
    out += '[';
    for (std::size_t i = 0; i < inst.parameters.size(); ++i) {
      if (i > 0) out += ',';
      out += inst.parameters[i].name + "=" + inst.parameters[i].value;
    }
    out += ']';
  }
  return out;
}

void format_into(std::string& out, const NormalForm& form, const PrefixMap& prefixes,
                 std::size_t indent) {
  std::string pad(indent, ' ');
  if (form.unsatisfiable()) {
    out += pad + "UNSATISFIABLE (0 alternatives)\n";
    return;
  }
  for (const auto& alt : form.alternatives) {
    if (alt.empty()) {
      out += pad + "(empty alternative)\n";
      continue;
    }
    out += pad;
    for (std::size_t i = 0; i < alt.size(); ++i) {
      if (i > 0) out += ' ';
      out += token(alt[i], prefixes);
    }
    out += '\n';
    for (const auto& inst : alt) {
      if (!inst.nested) continue;
      out += pad + "  " + display(inst.qname, prefixes) + " nested:\n";
      format_into(out, *inst.nested, prefixes, indent + 4);
    }
  }
}

void explain_into(std::ostream& out, const std::vector<AlternativeMatch>& matches,
                  const PrefixMap& prefixes, std::size_t indent) {
  std::string pad(indent, ' ');
  for (const auto& m : matches) {
    out << pad << "pair " << m.left << " " << m.right << "\n";
    for (const auto& inst : m.instances) {
      out << pad << "  match " << display(inst.left, prefixes) << " "
          << display(inst.right, prefixes);
      if (inst.sharedConcept) out << " " << *inst.sharedConcept;
      out << "\n";
      explain_into(out, inst.nested, prefixes, indent + 4);
    }
  }
}

void collect_prefixes(const xml::Element& e, PrefixMap& out) {
  for (const auto& [prefix, uri] : e.namespaces)
    if (!prefix.empty()) out.emplace(uri, prefix);
  for (const auto& c : e.children) collect_prefixes(c, out);
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) err << d.to_string() << "\n";
}

struct PolicySource {
  PolicyExpr policy;
  std::vector<DomainSchema> domains;
  PrefixMap prefixes;
};

std::pair<std::string, std::string> split_source(const std::string& source) {
  if (fs::exists(source)) return {source, ""};
  auto hash = source.rfind('#');
  if (hash == std::string::npos) return {source, ""};
  return {source.substr(0, hash), source.substr(hash + 1)};
}

std::string list_subjects(const std::vector<PolicyAttachment>& attachments) {
  std::string out;
  for (const auto& a : attachments) out += (out.empty() ? "" : ", ") + a.subject.to_string();
  return out.empty() ? "none" : out;
}

const PolicyAttachment& select_attachment(const std::vector<PolicyAttachment>& attachments,
                                          const std::string& fragment,
                                          const std::string& file) {
  if (fragment.empty()) {
    if (attachments.size() == 1) return attachments.front();
    throw Unresolved(file + " has " + std::to_string(attachments.size()) +
                     " policy attachments; choose one with '#subject' (available: " +
                     list_subjects(attachments) + ")");
  }
  std::vector<const PolicyAttachment*> found;
  if (fragment.find(':') != std::string::npos) {
    auto subject = SubjectRef::parse(fragment);
    if (!subject) throw Unresolved("malformed subject '" + fragment + "'");
    for (const auto& a : attachments)
      if (a.subject == *subject) found.push_back(&a);
  } else {
    auto path = SubjectRef::parse("service:" + fragment)->path;
    for (const auto& a : attachments)
      if (a.subject.path == path) found.push_back(&a);
  }
  if (found.size() != 1)
    throw Unresolved((found.empty() ? "no policy attached to '" : "ambiguous subject '") +
                     fragment + "' in " + file + " (available: " + list_subjects(attachments) +
                     ")");
  return *found.front();
}

PolicySource load_policy(const std::string& source, std::ostream& err) {
  auto [file, fragment] = split_source(source);
  std::string bytes = read_file(file);
  PolicySource out;

  auto first = bytes.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && bytes[first] == '{') {
    ServiceModel model = parse_model(bytes);
    out.policy = select_attachment(model.attachments, fragment, file).policy;
    out.domains = model.domains;
    for (const auto& b : model.namespaces) out.prefixes.emplace(b.uri, b.prefix);
    for (const auto& d : model.domains) out.prefixes.emplace(d.targetNamespace, d.prefix);
    return out;
  }

  xml::Document doc = xml::parse(bytes);
  collect_prefixes(doc.root, out.prefixes);
  if (doc.root.name == QName{std::string(ns::kPolicy), "Policy"}) {
    if (!fragment.empty())
      throw Unresolved(file + " is a standalone policy; it has no subject '" + fragment + "'");
    out.policy = parse_policy_element(doc.root);
    return out;
  }
  if (doc.root.name != QName{std::string(ns::kWsdl), "description"})
    throw SchemaError(file, "expected a service model, a WSDL description or a wsp:Policy document");

  // Companion schemas are looked up next to the WSDL; nothing is fetched.
  std::vector<std::string> companions;
  fs::path dir = fs::path(file).parent_path();
  for (const auto& c : doc.root.children) {
    if (c.name != QName{std::string(ns::kWsdl), "types"}) continue;
    for (const auto& imp : c.children) {
      auto location = imp.attribute("schemaLocation");
      if (!location || location->find("://") != std::string::npos) continue;
      fs::path path = dir / *location;
      if (fs::exists(path)) companions.push_back(read_file(path));
    }
  }
  ParsedArtifacts parsed = parse_wsdl(bytes, companions);
  for (const auto& w : parsed.warnings) err << w.to_string() << "\n";
  out.policy = select_attachment(parsed.attachments, fragment, file).policy;
  out.domains = parsed.domains;
  return out;
}

void collect_qnames(const NormalForm& form, std::set<QName>& out) {
  for (const auto& alt : form.alternatives) {
    for (const auto& inst : alt) {
      out.insert(inst.qname);
      if (inst.nested) collect_qnames(*inst.nested, out);
    }
  }
}

}  // namespace

std::string format_normal_form(const NormalForm& form, const PrefixMap& prefixes) {
  std::string out;
  format_into(out, form, prefixes, 0);
  return out;
}

int cmd_validate(const std::string& modelPath, std::ostream&, std::ostream& err) {
  return guarded(err, [&] {
    ServiceModel model = parse_model(read_file(modelPath));
    auto diagnostics = validate_model(model);
    print_diagnostics(err, diagnostics);
    return has_errors(diagnostics) ? kInvalid : kSuccess;
  });
}

int cmd_generate(const std::string& modelPath, const std::string& outputDir,
                 std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ServiceModel model = parse_model(read_file(modelPath));
    auto diagnostics = validate_model(model);
    auto extra = generation_diagnostics(model);
    diagnostics.insert(diagnostics.end(), extra.begin(), extra.end());
    print_diagnostics(err, diagnostics);
    if (has_errors(diagnostics)) return kInvalid;

    // Render everything before touching the output directory.
    std::vector<std::pair<fs::path, std::string>> rendered;
    for (const auto& file : emit_wsdl(model))
      rendered.emplace_back(fs::path(outputDir) / file.fileName, xml::write_canonical(file.document));

    fs::create_directories(outputDir);
    for (const auto& [path, bytes] : rendered) {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << bytes;
      if (!f.flush()) throw Unresolved("cannot write " + path.string());
      out << path.string() << "\n";
    }
    return kSuccess;
  });
}

int cmd_normalize(const std::string& source, OutputFormat format, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    PolicySource src = load_policy(source, err);
    NormalForm form = normalize(src.policy);
    if (form.unsatisfiable()) {
      out << "UNSATISFIABLE (0 alternatives)\n";
      return kEmpty;
    }
    if (format == OutputFormat::Xml) {
      EmitOptions options;
      for (const auto& [uri, prefix] : src.prefixes) options.prefixTable[uri] = prefix;
      out << xml::write_canonical(policy_document(denormalize(form), options));
    } else {
      out << format_normal_form(form, src.prefixes);
    }
    return kSuccess;
  });
}

int cmd_intersect(const std::string& sourceA, const std::string& sourceB,
                  const IntersectOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PolicySource a = load_policy(sourceA, err);
    PolicySource b = load_policy(sourceB, err);

    std::vector<DomainSchema> domains = a.domains;
    domains.insert(domains.end(), b.domains.begin(), b.domains.end());
    for (const auto& path : options.vocabPaths) {
      std::vector<Diagnostic> warnings;
      domains.push_back(parse_domain_xsd(read_file(path), warnings));
      print_diagnostics(err, warnings);
    }
    Vocabulary vocab = assertion_vocabulary(domains);

    PrefixMap prefixes = a.prefixes;
    prefixes.insert(b.prefixes.begin(), b.prefixes.end());
    for (const auto& d : domains) prefixes.emplace(d.targetNamespace, d.prefix);

    NormalForm p = normalize(a.policy);
    NormalForm q = normalize(b.policy);
    if (options.mode == MatchMode::Semantic) {
      std::set<QName> used;
      collect_qnames(p, used);
      collect_qnames(q, used);
      std::string missing;
      for (const auto& name : used)
        if (!vocab.contains(name)) missing += (missing.empty() ? "" : ", ") + name.clark();
      if (!missing.empty())
        throw Unresolved("semantic matching needs a vocabulary for " + missing +
                         " (supply the domain XSD with --vocab)");
    }

    IntersectionReport report = intersect_explained(p, q, options.mode, vocab);
    out << format_normal_form(report.result, prefixes);
    if (options.explain) explain_into(out, report.matches, prefixes, 0);
    return report.result.unsatisfiable() ? kEmpty : kSuccess;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generates semantic WS-Policy descriptions and matches policies.", "sempol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("sempol ") + SEMPOL_VERSION);

  std::string modelPath;
  std::string outputDir = ".";
  std::string source;
  std::string format = "text";
  std::vector<std::string> sources;
  std::string mode = "strict";
  IntersectOptions intersectOptions;

  auto* validate = app.add_subcommand("validate", "Check a service model and print diagnostics");
  validate->add_option("model", modelPath, "Service model (JSON)")->required();

  auto* generate = app.add_subcommand("generate", "Write the WSDL and domain XSD files");
  generate->add_option("model", modelPath, "Service model (JSON)")->required();
  generate->add_option("--output-dir", outputDir, "Directory for the generated files")
      ->capture_default_str();

  auto* normalizeCmd = app.add_subcommand("normalize", "Print the normal form of a policy");
  normalizeCmd->add_option("source", source, "model.json#subject, file.wsdl#subject or policy XML")
      ->required();
  normalizeCmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "xml"}))
      ->capture_default_str();

  auto* intersectCmd = app.add_subcommand("intersect", "Intersect two policies");
  intersectCmd->add_option("sources", sources, "Two policy sources")->required()->expected(2);
  intersectCmd->add_option("--mode", mode, "Assertion matching")
      ->check(CLI::IsMember({"strict", "semantic"}))
      ->capture_default_str();
  intersectCmd->add_option("--vocab", intersectOptions.vocabPaths, "Domain XSD (repeatable)");
  intersectCmd->add_flag("--explain", intersectOptions.explain,
                         "Print the compatible alternative pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUnresolved;
  }

  if (validate->parsed()) return cmd_validate(modelPath, out, err);
  if (generate->parsed()) return cmd_generate(modelPath, outputDir, out, err);
  if (normalizeCmd->parsed())
    return cmd_normalize(source, format == "xml" ? OutputFormat::Xml : OutputFormat::Text, out,
                         err);
  intersectOptions.mode = *match_mode_from_string(mode);
  return cmd_intersect(sources[0], sources[1], intersectOptions, out, err);
}

}  // namespace sempol::cli
