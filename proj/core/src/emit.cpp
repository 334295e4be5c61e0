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

#include "sempol/emit.hpp"

#include <set>

#include "sempol/error.hpp"
#include "sempol/normalize.hpp"
#include "sempol/validate.hpp"

namespace sempol {

namespace {

constexpr std::string_view kWsdl20Location = "http://www.w3.org/2007/06/wsdl/wsdl20.xsd";

QName xs(std::string local) { return {std::string(ns::kXsd), std::move(local)}; }
QName wsdl(std::string local) { return {std::string(ns::kWsdl), std::move(local)}; }
QName wsp(std::string local) { return {std::string(ns::kPolicy), std::move(local)}; }
QName sawsdl(std::string local) { return {std::string(ns::kSawsdl), std::move(local)}; }

std::string replace_all(std::string text, std::string_view token, std::string_view value) {
  for (auto pos = text.find(token); pos != std::string::npos;
       pos = text.find(token, pos + value.size()))
    text.replace(pos, token.size(), value);
  return text;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

/// Assigns prefixes to namespaces and records which ones a document uses.
class Prefixes {
 public:
  explicit Prefixes(const EmitOptions& options) {
    for (const auto& [uri, prefix] : options.prefixTable) prefer(uri, prefix);
    prefer(std::string(ns::kWsdl), "wsdl");
    prefer(std::string(ns::kXsd), "xs");
    prefer(std::string(ns::kXsi), "xsi");
    prefer(std::string(ns::kPolicy), "wsp");
    prefer(std::string(ns::kSawsdl), "sawsdl");
    prefer(std::string(ns::kWsdlSoap), "wsoap");
  }

  /// First preference for a URI wins; a prefix already bound elsewhere is
  /// ignored.
  void prefer(const std::string& uri, const std::string& prefix) {
    if (!is_ncname(prefix) || byUri_.contains(uri) || taken_.contains(prefix)) return;
    byUri_[uri] = prefix;
    taken_.insert(prefix);
  }

  void set_default(const std::string& uri) { default_ = uri; }

  const std::string& prefix_for(const std::string& uri) {
    auto it = byUri_.find(uri);
    if (it == byUri_.end()) {
      std::string generated;
      do {
        generated = "ns" + std::to_string(++counter_);
      } while (taken_.contains(generated));
      taken_.insert(generated);
      it = byUri_.emplace(uri, generated).first;
    }
    used_.insert(uri);
    return it->second;
  }

  /// Text form of a QName-valued attribute.
  std::string qualified(const QName& name) {
    if (name.ns.empty()) return name.local;
    if (default_ && name.ns == *default_) return name.local;
    return prefix_for(name.ns) + ":" + name.local;
  }

  /// Marks every namespace an element tree uses.
  void collect(const xml::Element& e) {
    if (!e.name.ns.empty() && !(default_ && e.name.ns == *default_)) prefix_for(e.name.ns);
    for (const auto& a : e.attributes)
      if (!a.name.ns.empty()) prefix_for(a.name.ns);
    for (const auto& c : e.children) collect(c);
  }

  xml::NamespaceScope declarations() const {
    xml::NamespaceScope out;
    if (default_) out[""] = *default_;
    for (const auto& uri : used_) out[byUri_.at(uri)] = uri;
    return out;
  }

 private:
  std::map<std::string, std::string> byUri_;
  std::set<std::string> taken_;
  std::set<std::string> used_;
  std::optional<std::string> default_;
  int counter_ = 0;
};

void annotate(xml::Element& e, const std::optional<SemanticAnnotation>& annotation,
              bool withMappings) {
  if (!annotation) return;
  e.set(sawsdl("modelReference"), join(annotation->modelReference, ' '));
  if (!withMappings) return;
  if (annotation->liftingSchema)
    e.set(sawsdl("liftingSchemaMapping"), *annotation->liftingSchema);
  if (annotation->loweringSchema)
    e.set(sawsdl("loweringSchemaMapping"), *annotation->loweringSchema);
}

void check_domain(const DomainSchema& domain) {
  ServiceModel probe;
  probe.modelName = "probe";
  probe.targetNamespace = "urn:sempol:domain-probe";
  probe.domains.push_back(domain);
  for (const auto& d : validate_model(probe)) {
    if (d.severity == Severity::Error)
      throw GenerationError("domain " + domain.name + ": " + d.message);
  }
}

xml::Element policy_element(const PolicyExpr& expr) {
  switch (expr.kind) {
    case PolicyKind::Policy:
    case PolicyKind::All:
    case PolicyKind::ExactlyOne: {
      const char* tag = expr.kind == PolicyKind::Policy ? "Policy"
                        : expr.kind == PolicyKind::All  ? "All"
                                                        : "ExactlyOne";
      xml::Element e(wsp(tag));
      for (const auto& child : expr.children) e.add(policy_element(child));
      return e;
    }
    case PolicyKind::Assertion: {
      xml::Element e(expr.qname);
      if (expr.optional) e.set(wsp("Optional"), "true");
      for (const auto& p : expr.parameters) {
        if (!is_ncname(p.name))
          throw GenerationError("parameter name '" + p.name + "' on " +
                                expr.qname.clark() + " is not an NCName");
        if (e.find_attribute(QName{"", p.name}))
          throw GenerationError("parameter '" + p.name + "' repeated on " +
                                expr.qname.clark());
        e.set(p.name, p.value);
      }
      if (expr.nested) {
        if (expr.nested->kind == PolicyKind::Policy)
          e.add(policy_element(*expr.nested));
        else
          e.add(xml::Element(wsp("Policy")).add(policy_element(*expr.nested)));
      }
      return e;
    }
  }
  return {};
}

void collect_assertions(const PolicyExpr& expr, std::set<QName>& out) {
  if (expr.kind == PolicyKind::Assertion) {
    out.insert(expr.qname);
    if (expr.nested) collect_assertions(*expr.nested, out);
    return;
  }
  for (const auto& c : expr.children) collect_assertions(c, out);
}

std::string_view operation_pattern(const OperationDecl& op) {
  bool in = !op.inputs.empty();
  bool out = !op.outputs.empty();
  bool faults = !op.faultRefs.empty();
  if (in && out) return "http://www.w3.org/ns/wsdl/in-out";
  if (out) return faults ? "http://www.w3.org/ns/wsdl/robust-out-only"
                         : "http://www.w3.org/ns/wsdl/out-only";
  return faults ? "http://www.w3.org/ns/wsdl/robust-in-only"
                : "http://www.w3.org/ns/wsdl/in-only";
}

class WsdlBuilder {
 public:
  WsdlBuilder(const ServiceModel& model, const EmitOptions& options)
      : model_(model), options_(options), prefixes_(options) {
    for (const auto& d : model.domains) prefixes_.prefer(d.targetNamespace, d.prefix);
    for (const auto& b : model.namespaces) prefixes_.prefer(b.uri, b.prefix);
    prefixes_.set_default(model.targetNamespace);
  }

  xml::Document build() {
    Vocabulary vocab = assertion_vocabulary(model_);
    std::set<QName> used;
    for (const auto& att : model_.attachments) {
      collect_assertions(att.policy, used);
      if (normalize(att.policy).unsatisfiable())
        throw GenerationError("policy attached to " + att.subject.to_string() +
                              " has no alternative");
    }
    for (const auto& q : used) {
      if (!vocab.contains(q))
        throw GenerationError("assertion " + q.clark() + " is not declared by any domain");
    }

    xml::Element root(wsdl("description"));
    root.set("targetNamespace", model_.targetNamespace);
    root.set(QName{std::string(ns::kXsi), "schemaLocation"},
             std::string(ns::kWsdl) + " " + std::string(kWsdl20Location));

    xml::Element types(wsdl("types"));
    for (const auto& domain : model_.domains) {
      bool referenced = false;
      for (const auto& q : used) referenced = referenced || q.ns == domain.targetNamespace;
      if (!referenced) continue;
      types.add(xml::Element(xs("import"))
                    .set("namespace", domain.targetNamespace)
                    .set("schemaLocation", xsd_file_name(domain, options_)));
    }
    if (!types.children.empty()) root.add(std::move(types));

    for (const auto& iface : model_.interfaces) root.add(interface(iface));
    for (const auto& binding : model_.bindings) root.add(this->binding(binding));
    for (const auto& svc : model_.services) root.add(service(svc));

    prefixes_.collect(root);
    root.namespaces = prefixes_.declarations();
    return xml::Document{std::move(root)};
  }

 private:
  QName tns(const std::string& local) const { return {model_.targetNamespace, local}; }

  void attach(xml::Element& e, SubjectKind kind, std::vector<std::string> path) {
    SubjectRef subject{kind, std::move(path)};
    for (const auto& att : model_.attachments) {
      if (att.subject == subject) {
        e.add(emit_policy_element(att.policy, options_));
        return;
      }
    }
  }

  xml::Element interface(const InterfaceDecl& iface) {
    xml::Element e(wsdl("interface"));
    e.set("name", iface.name);
    attach(e, SubjectKind::Interface, {iface.name});
    for (const auto& fault : iface.faults) {
      xml::Element f(wsdl("fault"));
      f.set("name", fault.name);
      if (fault.element) f.set("element", prefixes_.qualified(*fault.element));
      e.add(std::move(f));
    }
    for (const auto& op : iface.operations) {
      xml::Element o(wsdl("operation"));
      o.set("name", op.name);
      o.set("pattern", std::string(operation_pattern(op)));
      attach(o, SubjectKind::Operation, {iface.name, op.name});
      for (const auto& m : op.inputs)
        o.add(xml::Element(wsdl("input"))
                  .set("messageLabel", m.name)
                  .set("element", prefixes_.qualified(m.element)));
      for (const auto& m : op.outputs)
        o.add(xml::Element(wsdl("output"))
                  .set("messageLabel", m.name)
                  .set("element", prefixes_.qualified(m.element)));
      // robust-out-only faults travel against the output; everything else
      // uses outfault.
      const char* faultTag = op.inputs.empty() && !op.outputs.empty() ? "infault" : "outfault";
      for (const auto& ref : op.faultRefs)
        o.add(xml::Element(wsdl(faultTag)).set("ref", prefixes_.qualified(tns(ref))));
      e.add(std::move(o));
    }
    return e;
  }

  xml::Element binding(const BindingDecl& b) {
    xml::Element e(wsdl("binding"));
    e.set("name", b.name);
    e.set("interface", prefixes_.qualified(tns(b.interfaceRef)));
    e.set("type", b.messageEncoding == "http" ? std::string(ns::kWsdlHttp)
                                              : std::string(ns::kWsdlSoap));
    e.set(QName{std::string(ns::kWsdlSoap), "protocol"}, b.transportProtocol);
    attach(e, SubjectKind::Binding, {b.name});
    return e;
  }

  xml::Element service(const ServiceDecl& s) {
    xml::Element e(wsdl("service"));
    e.set("name", s.name);
    e.set("interface", prefixes_.qualified(tns(s.interfaceRef)));
    attach(e, SubjectKind::Service, {s.name});
    for (const auto& ep : s.endpoints) {
      xml::Element x(wsdl("endpoint"));
      x.set("name", ep.name);
      x.set("binding", prefixes_.qualified(tns(ep.bindingRef)));
      x.set("address", ep.address);
      attach(x, SubjectKind::Endpoint, {s.name, ep.name});
      e.add(std::move(x));
    }
    return e;
  }

  const ServiceModel& model_;
  const EmitOptions& options_;
  Prefixes prefixes_;
};

}  // namespace

std::string xsd_file_name(const DomainSchema& domain, const EmitOptions& options) {
  return replace_all(options.xsdFileNamePattern, "{domain}", domain.name);
}

xml::Document emit_domain_xsd(const DomainSchema& domain, const EmitOptions& options) {
  check_domain(domain);
  Prefixes prefixes(options);
  prefixes.prefer(domain.targetNamespace, domain.prefix);

  xml::Element schema(xs("schema"));
  schema.set("targetNamespace", domain.targetNamespace);
  schema.set("elementFormDefault", "qualified");
  schema.set("id", domain.name);
  prefixes.prefix_for(domain.targetNamespace);

  auto attributes = [&](xml::Element& owner, const AssertionDecl& decl) {
    for (const auto& attr : decl.attributes) {
      xml::Element a(xs("attribute"));
      a.set("name", attr.name);
      a.set("type", prefixes.qualified(attr.simpleType));
      annotate(a, attr.annotation, false);
      owner.add(std::move(a));
    }
  };

  for (const auto& decl : domain.assertions) {
    xml::Element el(xs("element"));
    el.set("name", decl.name);
    annotate(el, decl.annotation, true);
    switch (decl.typeKind) {
      case TypeKind::Simple: {
        std::string base = prefixes.qualified(*decl.valueType);
        if (decl.attributes.empty()) {
          el.set("type", base);
          break;
        }
        xml::Element extension(xs("extension"));
        extension.set("base", base);
        attributes(extension, decl);
        el.add(xml::Element(xs("complexType"))
                   .add(xml::Element(xs("simpleContent")).add(std::move(extension))));
        break;
      }
      case TypeKind::Empty: {
        xml::Element type(xs("complexType"));
        attributes(type, decl);
        el.add(std::move(type));
        break;
      }
      case TypeKind::Complex: {
        xml::Element sequence(xs("sequence"));
        if (!decl.nestableChildren.empty()) {
          // Slot for the nested wsp:Policy; appinfo lists the assertions it
          // may contain.
          xml::Element any(xs("any"));
          any.set("namespace", std::string(ns::kPolicy));
          any.set("processContents", "lax");
          any.set("minOccurs", "0");
          xml::Element appinfo(xs("appinfo"));
          appinfo.text = join(decl.nestableChildren, ' ');
          any.add(xml::Element(xs("annotation")).add(std::move(appinfo)));
          sequence.add(std::move(any));
        }
        xml::Element type(xs("complexType"));
        type.add(std::move(sequence));
        attributes(type, decl);
        el.add(std::move(type));
        break;
      }
    }
    schema.add(std::move(el));
  }

  prefixes.collect(schema);
  schema.namespaces = prefixes.declarations();
  return xml::Document{std::move(schema)};
}

xml::Element emit_policy_element(const PolicyExpr& expr, const EmitOptions&) {
  if (normalize(expr).unsatisfiable())
    throw GenerationError("policy has no alternative and cannot be emitted");
  xml::Element root = policy_element(expr);
  if (expr.kind != PolicyKind::Policy) {
    xml::Element wrapper(wsp("Policy"));
    wrapper.add(std::move(root));
    return wrapper;
  }
  return root;
}

xml::Document policy_document(const PolicyExpr& expr, const EmitOptions& options) {
  xml::Element root = emit_policy_element(expr, options);
  Prefixes prefixes(options);
  prefixes.collect(root);
  root.namespaces = prefixes.declarations();
  return xml::Document{std::move(root)};
}

std::vector<EmittedFile> emit_wsdl(const ServiceModel& model, const EmitOptions& options) {
  std::vector<EmittedFile> files;
  files.push_back({replace_all(options.wsdlFileNamePattern, "{model}", model.modelName),
                   WsdlBuilder(model, options).build()});
  for (const auto& domain : model.domains) {
    EmitOptions domainOptions = options;
    files.push_back({xsd_file_name(domain, options), emit_domain_xsd(domain, domainOptions)});
  }
  return files;
}

std::vector<Diagnostic> generation_diagnostics(const ServiceModel& model) {
  std::vector<Diagnostic> out;
  if (model.services.empty())
    out.push_back({Severity::Error, "nothing-to-generate", "model",
                   "the model declares no service"});
  return out;
}

}  // namespace sempol
