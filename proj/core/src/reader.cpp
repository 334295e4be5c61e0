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

#include "sempol/reader.hpp"

#include <sstream>

#include "sempol/error.hpp"
#include "sempol/normalize.hpp"

namespace sempol {

namespace {

bool is_in(const xml::Element& e, std::string_view nsUri, std::string_view local = {}) {
  return e.name.ns == nsUri && (local.empty() || e.name.local == local);
}

std::string where(const xml::Element& e) { return "line " + std::to_string(e.line); }

[[noreturn]] void fail(const xml::Element& e, const std::string& message) {
  throw SchemaError(where(e), message);
}

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string token; in >> token;) out.push_back(token);
  return out;
}

std::string required(const xml::Element& e, std::string_view attr) {
  auto v = e.attribute(attr);
  if (!v) fail(e, "<" + e.name.local + "> requires attribute '" + std::string(attr) + "'");
  return *v;
}

QName required_qname(const xml::Element& e, std::string_view attr) {
  std::string raw = required(e, attr);
  auto q = e.resolve_qname(raw);
  if (!q) fail(e, "attribute '" + std::string(attr) + "' value '" + raw + "' is not a resolvable QName");
  return *q;
}

PolicyExpr policy_node(const xml::Element& e) {
  if (is_in(e, ns::kPolicy)) {
    PolicyExpr expr;
    if (e.name.local == "Policy") {
      expr.kind = PolicyKind::Policy;
    } else if (e.name.local == "All") {
      expr.kind = PolicyKind::All;
    } else if (e.name.local == "ExactlyOne") {
      expr.kind = PolicyKind::ExactlyOne;
    } else {
      fail(e, "unsupported policy element wsp:" + e.name.local);
    }
    for (const auto& child : e.children) expr.children.push_back(policy_node(child));
    return expr;
  }

  PolicyExpr expr;
  expr.kind = PolicyKind::Assertion;
  expr.qname = e.name;
  for (const auto& a : e.attributes) {
    if (a.name.ns == ns::kPolicy) {
      if (a.name.local != "Optional")
        fail(e, "unsupported policy attribute wsp:" + a.name.local);
      std::string v = trim(a.value);
      if (v == "true" || v == "1") {
        expr.optional = true;
      } else if (v != "false" && v != "0") {
        fail(e, "wsp:Optional must be a boolean, got '" + a.value + "'");
      }
    } else if (a.name.ns.empty()) {
      expr.parameters.push_back({a.name.local, a.value});
    } else {
      expr.parameters.push_back({a.name.clark(), a.value});
    }
  }
  for (const auto& child : e.children) {
    if (is_in(child, ns::kPolicy, "Policy")) {
      if (expr.nested) fail(child, "assertion " + e.name.clark() + " has more than one nested policy");
      expr.nested = std::make_shared<PolicyExpr>(policy_node(child));
    } else {
      // Non-policy children are opaque parameters.
      expr.parameters.push_back({child.name.clark(), trim(child.text)});
    }
  }
  if (e.children.empty()) {
    if (std::string text = trim(e.text); !text.empty())
      expr.parameters.push_back({"#text", text});
  }
  return expr;
}

void collect_assertions(const PolicyExpr& expr, std::set<QName>& out) {
  if (expr.kind == PolicyKind::Assertion) {
    out.insert(expr.qname);
    if (expr.nested) collect_assertions(*expr.nested, out);
    return;
  }
  for (const auto& c : expr.children) collect_assertions(c, out);
}

std::optional<SemanticAnnotation> read_annotation(const xml::Element& e, bool withMappings) {
  SemanticAnnotation ann;
  bool any = false;
  if (auto v = e.attribute(QName{std::string(ns::kSawsdl), "modelReference"})) {
    ann.modelReference = split_ws(*v);
    any = true;
  }
  if (withMappings) {
    if (auto v = e.attribute(QName{std::string(ns::kSawsdl), "liftingSchemaMapping"})) {
      ann.liftingSchema = trim(*v);
      any = true;
    }
    if (auto v = e.attribute(QName{std::string(ns::kSawsdl), "loweringSchemaMapping"})) {
      ann.loweringSchema = trim(*v);
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return ann;
}

void warn(std::vector<Diagnostic>& out, std::string code, std::string path, std::string message) {
  out.push_back({Severity::Warning, std::move(code), std::move(path), std::move(message)});
}

void read_attributes(const xml::Element& owner, AssertionDecl& decl) {
  for (const auto& c : owner.children) {
    if (!is_in(c, ns::kXsd, "attribute")) continue;
    AttributeDecl attr;
    attr.name = required(c, "name");
    attr.simpleType = required_qname(c, "type");
    attr.annotation = read_annotation(c, false);
    decl.attributes.push_back(std::move(attr));
  }
}

AssertionDecl read_assertion(const xml::Element& e, std::vector<Diagnostic>& warnings,
                             const std::string& domainName) {
  AssertionDecl decl;
  decl.name = required(e, "name");
  decl.annotation = read_annotation(e, true);
  std::string path = "domain:" + domainName + "/" + decl.name;

  if (e.attribute("type")) {
    decl.typeKind = TypeKind::Simple;
    decl.valueType = required_qname(e, "type");
    return decl;
  }
  decl.typeKind = TypeKind::Empty;
  for (const auto& c : e.children) {
    if (is_in(c, ns::kXsd, "annotation")) continue;
    if (!is_in(c, ns::kXsd, "complexType")) {
      warn(warnings, "unsupported-component", path, "ignored <" + c.name.local + ">");
      continue;
    }
    for (const auto& part : c.children) {
      if (is_in(part, ns::kXsd, "attribute") || is_in(part, ns::kXsd, "annotation")) continue;
      if (is_in(part, ns::kXsd, "simpleContent")) {
        for (const auto& ext : part.children) {
          if (!is_in(ext, ns::kXsd, "extension")) continue;
          decl.typeKind = TypeKind::Simple;
          decl.valueType = required_qname(ext, "base");
          read_attributes(ext, decl);
        }
      } else if (is_in(part, ns::kXsd, "sequence")) {
        decl.typeKind = TypeKind::Complex;
        for (const auto& any : part.children) {
          for (const auto& annotation : any.children) {
            if (!is_in(annotation, ns::kXsd, "annotation")) continue;
            for (const auto& info : annotation.children) {
              if (!is_in(info, ns::kXsd, "appinfo")) continue;
              for (auto& name : split_ws(info.text)) decl.nestableChildren.push_back(name);
            }
          }
        }
      } else {
        warn(warnings, "unsupported-component", path, "ignored <" + part.name.local + ">");
      }
    }
    read_attributes(c, decl);
  }
  return decl;
}

DomainSchema domain_from(const xml::Document& doc, std::vector<Diagnostic>& warnings) {
  const xml::Element& root = doc.root;
  if (!is_in(root, ns::kXsd, "schema")) fail(root, "expected xs:schema, found " + root.name.clark());
  DomainSchema domain;
  domain.targetNamespace = required(root, "targetNamespace");
  for (const auto& [prefix, uri] : root.namespaces) {
    if (!prefix.empty() && uri == domain.targetNamespace) {
      domain.prefix = prefix;
      break;
    }
  }
  if (domain.prefix.empty()) domain.prefix = "tns";
  if (auto id = root.attribute("id")) {
    domain.name = *id;
  } else {
    domain.name = domain.prefix;
    warn(warnings, "domain-name", "domain:" + domain.name,
         "schema for " + domain.targetNamespace + " has no id; using its prefix as the domain name");
  }
  for (const auto& c : root.children) {
    if (is_in(c, ns::kXsd, "element")) {
      domain.assertions.push_back(read_assertion(c, warnings, domain.name));
    } else if (!is_in(c, ns::kXsd, "annotation")) {
      warn(warnings, "unsupported-component", "domain:" + domain.name,
           "ignored top-level <" + c.name.local + ">");
    }
  }
  return domain;
}

class WsdlReader {
 public:
  WsdlReader(const std::vector<std::string>& companions) {
    for (const auto& bytes : companions) {
      DomainSchema d = domain_from(xml::parse(bytes), out_.warnings);
      companions_.emplace(d.targetNamespace, std::move(d));
    }
  }

  ParsedArtifacts run(std::string_view bytes) {
    xml::Document doc = xml::parse(bytes);
    const xml::Element& root = doc.root;
    if (!is_in(root, ns::kWsdl, "description"))
      fail(root, "expected wsdl:description, found " + root.name.clark());
    ServiceModel& model = out_.serviceModel;
    model.targetNamespace = required(root, "targetNamespace");

    for (const auto& [prefix, uri] : root.namespaces) {
      if (prefix.empty()) continue;
      out_.prefixes.emplace(uri, prefix);
      if (uri == ns::kWsdl || uri == ns::kXsd || uri == ns::kXsi || uri == ns::kPolicy ||
          uri == ns::kSawsdl || uri == ns::kWsdlSoap || uri == ns::kWsdlHttp)
        continue;
      model.namespaces.push_back({prefix, uri});
    }

    for (const auto& c : root.children) {
      if (is_in(c, ns::kWsdl, "types")) {
        types(c);
      } else if (is_in(c, ns::kWsdl, "interface")) {
        interface(c);
      } else if (is_in(c, ns::kWsdl, "binding")) {
        binding(c);
      } else if (is_in(c, ns::kWsdl, "service")) {
        service(c);
      } else if (is_in(c, ns::kPolicy)) {
        fail(c, "policy is not attached to an endpoint, binding, operation, interface or service");
      } else if (!is_in(c, ns::kWsdl, "documentation")) {
        warn(out_.warnings, "unsupported-component", "model", "ignored <" + c.name.local + ">");
      }
    }

    // Domain namespaces live in the domain table, not the namespaces table.
    std::erase_if(model.namespaces, [&](const NamespaceBinding& b) {
      for (const auto& d : model.domains)
        if (d.targetNamespace == b.uri) return true;
      return false;
    });

    for (auto& [subject, policy] : attached_) model.attachments.push_back({subject, policy});

    std::set<QName> declared;
    for (const auto& d : model.domains)
      for (const auto& a : d.assertions) declared.insert(d.qname_of(a));
    for (const auto& att : model.attachments) {
      std::set<QName> used;
      collect_assertions(att.policy, used);
      for (const auto& q : used) {
        if (declared.contains(q) || out_.unresolvedAssertions.contains(q)) continue;
        out_.unresolvedAssertions.insert(q);
        warn(out_.warnings, "unresolved-assertion", "attachment:" + att.subject.to_string(),
             "assertion " + q.clark() + " is not declared by a supplied domain");
      }
    }

    canonicalize(model);
    out_.domains = model.domains;
    out_.attachments = model.attachments;
    return std::move(out_);
  }

 private:
  void types(const xml::Element& e) {
    for (const auto& c : e.children) {
      if (!is_in(c, ns::kXsd, "import")) {
        warn(out_.warnings, "unsupported-component", "model", "ignored <" + c.name.local + "> in wsdl:types");
        continue;
      }
      SchemaImport imp{required(c, "namespace"), c.attribute("schemaLocation").value_or("")};
      auto it = companions_.find(imp.ns);
      if (it == companions_.end()) {
        warn(out_.warnings, "unresolved-domain", "model", "unresolved domain " + imp.ns);
      } else if (!imported_.contains(imp.ns)) {
        imported_.insert(imp.ns);
        out_.serviceModel.domains.push_back(it->second);
      }
      out_.imports.push_back(std::move(imp));
    }
  }

  // Local name of a reference into the WSDL target namespace.
  std::string local_ref(const xml::Element& e, std::string_view attr) {
    QName q = required_qname(e, attr);
    if (q.ns != out_.serviceModel.targetNamespace)
      fail(e, "'" + std::string(attr) + "' must reference a component in " +
                  out_.serviceModel.targetNamespace);
    return q.local;
  }

  void attach(const xml::Element& policy, SubjectKind kind, std::vector<std::string> path) {
    SubjectRef subject{kind, std::move(path)};
    PolicyExpr expr = policy_node(policy);
    auto [it, inserted] = attached_.emplace(subject, expr);
    if (!inserted) {
      it->second = merge(it->second, expr);
      warn(out_.warnings, "merged-policies", "attachment:" + subject.to_string(),
           "several policies on one subject were merged");
    }
  }

  // Handles a wsp:Policy child; fails for other policy elements.
  bool maybe_attach(const xml::Element& c, SubjectKind kind, std::vector<std::string> path) {
    if (!is_in(c, ns::kPolicy)) return false;
    if (c.name.local != "Policy") fail(c, "unsupported policy element wsp:" + c.name.local);
    attach(c, kind, std::move(path));
    return true;
  }

  void reject_policies(const xml::Element& e) {
    for (const auto& c : e.children)
      if (is_in(c, ns::kPolicy))
        fail(c, "policy is not attached to an endpoint, binding, operation, interface or service");
  }

  void interface(const xml::Element& e) {
    InterfaceDecl iface;
    iface.name = required(e, "name");
    for (const auto& c : e.children) {
      if (maybe_attach(c, SubjectKind::Interface, {iface.name})) continue;
      if (is_in(c, ns::kWsdl, "fault")) {
        reject_policies(c);
        FaultDecl fault;
        fault.name = required(c, "name");
        if (c.attribute("element")) fault.element = required_qname(c, "element");
        iface.faults.push_back(std::move(fault));
      } else if (is_in(c, ns::kWsdl, "operation")) {
        iface.operations.push_back(operation(c, iface.name));
      } else if (!is_in(c, ns::kWsdl, "documentation")) {
        warn(out_.warnings, "unsupported-component", "interface:" + iface.name,
             "ignored <" + c.name.local + ">");
      }
    }
    out_.serviceModel.interfaces.push_back(std::move(iface));
  }

  OperationDecl operation(const xml::Element& e, const std::string& ifaceName) {
    OperationDecl op;
    op.name = required(e, "name");
    for (const auto& c : e.children) {
      if (maybe_attach(c, SubjectKind::Operation, {ifaceName, op.name})) continue;
      if (is_in(c, ns::kWsdl, "input") || is_in(c, ns::kWsdl, "output")) {
        reject_policies(c);
        bool input = c.name.local == "input";
        MessageRef m;
        m.name = c.attribute("messageLabel").value_or(input ? "In" : "Out");
        m.element = required_qname(c, "element");
        (input ? op.inputs : op.outputs).push_back(std::move(m));
      } else if (is_in(c, ns::kWsdl, "outfault") || is_in(c, ns::kWsdl, "infault")) {
        reject_policies(c);
        op.faultRefs.push_back(local_ref(c, "ref"));
      } else if (!is_in(c, ns::kWsdl, "documentation")) {
        warn(out_.warnings, "unsupported-component", "operation:" + ifaceName + "/" + op.name,
             "ignored <" + c.name.local + ">");
      }
    }
    return op;
  }

  void binding(const xml::Element& e) {
    BindingDecl b;
    b.name = required(e, "name");
    b.interfaceRef = local_ref(e, "interface");
    std::string type = required(e, "type");
    if (type == ns::kWsdlSoap) {
      b.messageEncoding = "soap";
    } else if (type == ns::kWsdlHttp) {
      b.messageEncoding = "http";
    } else {
      fail(e, "unsupported binding type '" + type + "'");
    }
    b.transportProtocol =
        e.attribute(QName{std::string(ns::kWsdlSoap), "protocol"}).value_or("");
    for (const auto& c : e.children) {
      if (maybe_attach(c, SubjectKind::Binding, {b.name})) continue;
      if (!is_in(c, ns::kWsdl, "documentation")) {
        reject_policies(c);
        warn(out_.warnings, "unsupported-component", "binding:" + b.name,
             "ignored <" + c.name.local + ">");
      }
    }
    out_.serviceModel.bindings.push_back(std::move(b));
  }

  void service(const xml::Element& e) {
    ServiceDecl s;
    s.name = required(e, "name");
    s.interfaceRef = local_ref(e, "interface");
    for (const auto& c : e.children) {
      if (maybe_attach(c, SubjectKind::Service, {s.name})) continue;
      if (is_in(c, ns::kWsdl, "endpoint")) {
        Endpoint ep;
        ep.name = required(c, "name");
        ep.bindingRef = local_ref(c, "binding");
        ep.address = c.attribute("address").value_or("");
        for (const auto& p : c.children) {
          if (maybe_attach(p, SubjectKind::Endpoint, {s.name, ep.name})) continue;
          if (!is_in(p, ns::kWsdl, "documentation"))
            warn(out_.warnings, "unsupported-component", "endpoint:" + s.name + "/" + ep.name,
                 "ignored <" + p.name.local + ">");
        }
        s.endpoints.push_back(std::move(ep));
      } else if (!is_in(c, ns::kWsdl, "documentation")) {
        warn(out_.warnings, "unsupported-component", "service:" + s.name,
             "ignored <" + c.name.local + ">");
      }
    }
    out_.serviceModel.services.push_back(std::move(s));
  }

  ParsedArtifacts out_;
  std::map<std::string, DomainSchema> companions_;
  std::set<std::string> imported_;
  std::map<SubjectRef, PolicyExpr> attached_;
};

}  // namespace

PolicyExpr parse_policy_element(const xml::Element& element) {
  if (!is_in(element, ns::kPolicy, "Policy"))
    fail(element, "expected wsp:Policy, found " + element.name.clark());
  return policy_node(element);
}

PolicyExpr parse_policy_document(std::string_view bytes) {
  return parse_policy_element(xml::parse(bytes).root);
}

DomainSchema parse_domain_xsd(std::string_view bytes, std::vector<Diagnostic>& warnings) {
  return domain_from(xml::parse(bytes), warnings);
}

DomainSchema parse_domain_xsd(std::string_view bytes) {
  std::vector<Diagnostic> ignored;
  return parse_domain_xsd(bytes, ignored);
}

ParsedArtifacts parse_wsdl(std::string_view wsdl, const std::vector<std::string>& companionSchemas) {
  return WsdlReader(companionSchemas).run(wsdl);
}

}  // namespace sempol
