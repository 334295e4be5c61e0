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

#include "sempol/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sempol/normalize.hpp"
#include "sempol/uri.hpp"

namespace sempol {

namespace {

template <typename T, typename Pred>
std::vector<const T*> find_all(const std::vector<T>& items, Pred pred) {
  std::vector<const T*> out;
  for (const auto& item : items)
    if (pred(item)) out.push_back(&item);
  return out;
}

template <typename T>
const T* find_unique(const std::vector<T>& items, const std::string& name) {
  auto found = find_all(items, [&](const T& t) { return t.name == name; });
  return found.size() == 1 ? found.front() : nullptr;
}

template <typename T>
bool exists(const std::vector<T>& items, const std::string& name) {
  return std::any_of(items.begin(), items.end(),
                     [&](const T& t) { return t.name == name; });
}

template <typename T>
std::size_t count_named(const std::vector<T>& items, const std::string& name) {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [&](const T& t) { return t.name == name; }));
}

// True when some segment of the subject path matches more than one element.
bool subject_is_ambiguous(const sempol::ServiceModel& model, const sempol::SubjectRef& subject) {
  using sempol::SubjectKind;
  const auto& path = subject.path;
  if (path.empty()) return false;
  switch (subject.kind) {
    case SubjectKind::Endpoint:
    case SubjectKind::Service: {
      if (count_named(model.services, path[0]) > 1) return true;
      if (subject.kind == SubjectKind::Service || path.size() != 2) return false;
      auto services = find_all(model.services, [&](const auto& s) { return s.name == path[0]; });
      return services.size() == 1 && count_named(services[0]->endpoints, path[1]) > 1;
    }
    case SubjectKind::Operation:
    case SubjectKind::Interface: {
      if (count_named(model.interfaces, path[0]) > 1) return true;
      if (subject.kind == SubjectKind::Interface || path.size() != 2) return false;
      auto ifaces = find_all(model.interfaces, [&](const auto& i) { return i.name == path[0]; });
      return ifaces.size() == 1 && count_named(ifaces[0]->operations, path[1]) > 1;
    }
    case SubjectKind::Binding:
      return count_named(model.bindings, path[0]) > 1;
  }
  return false;
}

class Validator {
 public:
  explicit Validator(const ServiceModel& model) : model_(model) {}

  std::vector<Diagnostic> run() {
    check_header();
    check_namespaces();
    check_domains();
    check_interfaces();
    check_bindings();
    check_services();
    check_attachments();
    std::stable_sort(out_.begin(), out_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                       if (a.subjectPath != b.subjectPath)
                         return a.subjectPath < b.subjectPath;
                       return a.code < b.code;
                     });
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string path, std::string message) {
    out_.push_back({Severity::Error, std::move(code), std::move(path),
                    std::move(message)});
  }

  void name(const std::string& value, const std::string& path,
            std::string_view what) {
    if (!is_ncname(value))
      error("bad-name", path, std::string(what) + " '" + value + "' is not an NCName");
  }

  void uri(const std::string& value, const std::string& path,
           std::string_view what) {
    if (!is_absolute_uri(value))
      error("bad-uri", path, std::string(what) + " '" + value + "' is not an absolute URI");
  }

  template <typename T>
  void unique_names(const std::vector<T>& items, const std::string& path,
                    std::string_view what) {
    std::set<std::string> seen;
    for (const auto& item : items) {
      if (!seen.insert(item.name).second)
        error("duplicate-name", path,
              "duplicate " + std::string(what) + " name '" + item.name + "'");
    }
  }

  void annotation(const SemanticAnnotation& a, const std::string& path,
                  bool mappingsAllowed) {
    if (a.modelReference.empty())
      error("annotation-empty", path, "annotation without modelReference");
    for (const auto& u : a.modelReference) uri(u, path, "modelReference");
    if (a.loweringSchema) uri(*a.loweringSchema, path, "loweringSchema");
    if (a.liftingSchema) uri(*a.liftingSchema, path, "liftingSchema");
    if (!mappingsAllowed && (a.loweringSchema || a.liftingSchema))
      error("annotation-placement", path,
            "schema mappings are only allowed on assertion elements");
  }

  bool namespace_declared(const std::string& uri) const {
    if (uri == model_.targetNamespace || uri == ns::kXsd) return true;
    for (const auto& binding : model_.namespaces)
      if (binding.uri == uri) return true;
    for (const auto& domain : model_.domains)
      if (domain.targetNamespace == uri) return true;
    return false;
  }

  void check_header() {
    name(model_.modelName, "model", "model name");
    uri(model_.targetNamespace, "model", "targetNamespace");
  }

  void check_namespaces() {
    std::set<std::string> prefixes;
    for (const auto& binding : model_.namespaces) {
      std::string path = "namespace:" + binding.prefix;
      name(binding.prefix, path, "prefix");
      uri(binding.uri, path, "namespace");
      if (!prefixes.insert(binding.prefix).second)
        error("duplicate-prefix", path, "prefix '" + binding.prefix + "' declared twice");
    }
  }

  void check_domains() {
    unique_names(model_.domains, "model", "domain");
    std::map<std::string, std::string> prefixOwner;
    for (const auto& binding : model_.namespaces) prefixOwner[binding.prefix] = binding.uri;
    std::set<QName> qnames;
    for (const auto& domain : model_.domains) {
      std::string path = "domain:" + domain.name;
      name(domain.name, path, "domain name");
      name(domain.prefix, path, "prefix");
      uri(domain.targetNamespace, path, "targetNamespace");
      if (domain.targetNamespace == model_.targetNamespace)
        error("namespace-conflict", path,
              "domain namespace equals the service targetNamespace");
      if (auto [it, inserted] = prefixOwner.emplace(domain.prefix, domain.targetNamespace);
          !inserted && it->second != domain.targetNamespace)
        error("duplicate-prefix", path,
              "prefix '" + domain.prefix + "' is bound to another namespace");
      unique_names(domain.assertions, path, "assertion");
      for (const auto& decl : domain.assertions) {
        if (!qnames.insert(domain.qname_of(decl)).second)
          error("duplicate-qname", path + "/" + decl.name,
                "assertion " + domain.qname_of(decl).clark() +
                    " is declared by more than one domain");
        check_assertion(domain, decl, path + "/" + decl.name);
      }
    }
  }

  void check_assertion(const DomainSchema& domain, const AssertionDecl& decl,
                       const std::string& path) {
    name(decl.name, path, "assertion name");
    if (decl.typeKind == TypeKind::Simple) {
      if (!decl.valueType)
        error("value-type", path, "simple assertion needs a valueType");
      else if (decl.valueType->ns != ns::kXsd)
        error("attribute-type-unsupported", path,
              "valueType must be an XML Schema built-in type");
    } else if (decl.valueType) {
      error("value-type", path, "valueType is only allowed on simple assertions");
    }
    unique_names(decl.attributes, path, "attribute");
    for (const auto& attr : decl.attributes) {
      std::string attrPath = path + "@" + attr.name;
      name(attr.name, attrPath, "attribute name");
      if (attr.simpleType.ns != ns::kXsd)
        error("attribute-type-unsupported", attrPath,
              "attribute type must be an XML Schema built-in type");
      if (attr.annotation) annotation(*attr.annotation, attrPath, false);
    }
    if (!decl.nestableChildren.empty() && decl.typeKind != TypeKind::Complex)
      error("nesting-requires-complex", path,
            "only complex assertions may carry a nested policy");
    for (const auto& child : decl.nestableChildren) {
      if (!exists(domain.assertions, child))
        error("nestable-unresolved", path,
              "nestable child '" + child + "' is not declared in domain " + domain.name);
    }
    if (decl.annotation) annotation(*decl.annotation, path, true);
  }

  void message(const MessageRef& m, const std::string& path) {
    name(m.name, path, "message label");
    if (!is_ncname(m.element.local))
      error("bad-name", path, "element local name '" + m.element.local + "' is not an NCName");
    if (!namespace_declared(m.element.ns))
      error("namespace-undeclared", path,
            "namespace '" + m.element.ns + "' of message " + m.name + " is not declared");
  }

  void check_interfaces() {
    unique_names(model_.interfaces, "model", "interface");
    for (const auto& iface : model_.interfaces) {
      std::string path = "interface:" + iface.name;
      name(iface.name, path, "interface name");
      unique_names(iface.operations, path, "operation");
      unique_names(iface.faults, path, "fault");
      for (const auto& fault : iface.faults) {
        std::string faultPath = "fault:" + iface.name + "/" + fault.name;
        name(fault.name, faultPath, "fault name");
        if (fault.element && !namespace_declared(fault.element->ns))
          error("namespace-undeclared", faultPath,
                "namespace '" + fault.element->ns + "' is not declared");
      }
      for (const auto& op : iface.operations) {
        std::string opPath = "operation:" + iface.name + "/" + op.name;
        name(op.name, opPath, "operation name");
        std::set<std::string> labels;
        for (const auto* list : {&op.inputs, &op.outputs}) {
          for (const auto& m : *list) {
            message(m, opPath);
            if (!labels.insert(m.name).second)
              error("duplicate-name", opPath, "duplicate message label '" + m.name + "'");
          }
        }
        for (const auto& ref : op.faultRefs) {
          if (!exists(iface.faults, ref))
            error("fault-unresolved", opPath,
                  "fault '" + ref + "' is not declared on interface " + iface.name);
        }
      }
    }
  }

  void check_bindings() {
    unique_names(model_.bindings, "model", "binding");
    for (const auto& binding : model_.bindings) {
      std::string path = "binding:" + binding.name;
      name(binding.name, path, "binding name");
      if (!exists(model_.interfaces, binding.interfaceRef))
        error("interface-unresolved", path,
              "interface '" + binding.interfaceRef + "' does not exist");
      uri(binding.transportProtocol, path, "transportProtocol");
      if (binding.messageEncoding != "soap" && binding.messageEncoding != "http")
        error("bad-encoding", path,
              "messageEncoding '" + binding.messageEncoding + "' must be soap or http");
    }
  }

  void check_services() {
    unique_names(model_.services, "model", "service");
    for (const auto& service : model_.services) {
      std::string path = "service:" + service.name;
      name(service.name, path, "service name");
      if (!exists(model_.interfaces, service.interfaceRef))
        error("interface-unresolved", path,
              "interface '" + service.interfaceRef + "' does not exist");
      if (service.endpoints.empty())
        error("no-endpoints", path, "a service needs at least one endpoint");
      unique_names(service.endpoints, path, "endpoint");
      for (const auto& ep : service.endpoints) {
        std::string epPath = "endpoint:" + service.name + "/" + ep.name;
        name(ep.name, epPath, "endpoint name");
        uri(ep.address, epPath, "address");
        const BindingDecl* binding = find_unique(model_.bindings, ep.bindingRef);
        if (!exists(model_.bindings, ep.bindingRef)) {
          error("binding-unresolved", epPath,
                "binding '" + ep.bindingRef + "' does not exist");
        } else if (binding && binding->interfaceRef != service.interfaceRef &&
                   exists(model_.interfaces, binding->interfaceRef) &&
                   exists(model_.interfaces, service.interfaceRef)) {
          error("binding-interface-mismatch", epPath,
                "binding '" + ep.bindingRef + "' is bound to interface '" +
                    binding->interfaceRef + "', not '" + service.interfaceRef + "'");
        }
      }
    }
  }

  void check_policy(const PolicyExpr& expr, const Vocabulary& vocab,
                    const std::string& path) {
    if (expr.kind != PolicyKind::Assertion) {
      for (const auto& child : expr.children) check_policy(child, vocab, path);
      return;
    }
    if (!vocab.contains(expr.qname))
      error("assertion-undeclared", path,
            "assertion " + expr.qname.clark() + " is not declared by any domain");
    std::set<std::string> names;
    for (const auto& p : expr.parameters) {
      if (!is_ncname(p.name))
        error("bad-name", path, "parameter '" + p.name + "' is not an NCName");
      if (!names.insert(p.name).second)
        error("duplicate-parameter", path,
              "parameter '" + p.name + "' repeated on " + expr.qname.clark());
    }
    if (expr.nested) check_policy(*expr.nested, vocab, path);
  }

  void check_attachments() {
    Vocabulary vocab = assertion_vocabulary(model_);
    std::set<SubjectRef> subjects;
    for (const auto& att : model_.attachments) {
      std::string path = "attachment:" + att.subject.to_string();
      // An ambiguous subject is already reported as a duplicate name.
      if (!resolve_subject(model_, att.subject) && !subject_is_ambiguous(model_, att.subject))
        error("subject-unresolved", path,
              "subject " + att.subject.to_string() + " does not resolve");
      if (!subjects.insert(att.subject).second)
        error("duplicate-attachment", path,
              "more than one policy attached; merge them into one policy");
      check_policy(att.policy, vocab, path);
      if (normalize(att.policy).unsatisfiable())
        error("unsatisfiable-policy", path, "policy has no alternative");
    }
  }

  const ServiceModel& model_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_model(const ServiceModel& model) {
  return Validator(model).run();
}

std::optional<SubjectTarget> resolve_subject(const ServiceModel& model,
                                             const SubjectRef& subject) {
  const auto& path = subject.path;
  switch (subject.kind) {
    case SubjectKind::Endpoint: {
      if (path.size() != 2) return std::nullopt;
      const ServiceDecl* service = find_unique(model.services, path[0]);
      if (!service) return std::nullopt;
      if (const Endpoint* ep = find_unique(service->endpoints, path[1])) return ep;
      return std::nullopt;
    }
    case SubjectKind::Operation: {
      if (path.size() != 2) return std::nullopt;
      const InterfaceDecl* iface = find_unique(model.interfaces, path[0]);
      if (!iface) return std::nullopt;
      if (const OperationDecl* op = find_unique(iface->operations, path[1])) return op;
      return std::nullopt;
    }
    case SubjectKind::Binding:
      if (path.size() != 1) return std::nullopt;
      if (const BindingDecl* b = find_unique(model.bindings, path[0])) return b;
      return std::nullopt;
    case SubjectKind::Interface:
      if (path.size() != 1) return std::nullopt;
      if (const InterfaceDecl* i = find_unique(model.interfaces, path[0])) return i;
      return std::nullopt;
    case SubjectKind::Service:
      if (path.size() != 1) return std::nullopt;
      if (const ServiceDecl* s = find_unique(model.services, path[0])) return s;
      return std::nullopt;
  }
  return std::nullopt;
}

Vocabulary assertion_vocabulary(const std::vector<DomainSchema>& domains) {
  Vocabulary vocab;
  for (const auto& domain : domains)
    for (const auto& decl : domain.assertions)
      vocab.emplace(domain.qname_of(decl), decl);
  return vocab;
}

Vocabulary assertion_vocabulary(const ServiceModel& model) {
  return assertion_vocabulary(model.domains);
}

}  // namespace sempol
