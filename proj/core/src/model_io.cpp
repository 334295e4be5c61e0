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

#include "sempol/model_io.hpp"

#include <map>
#include <set>

#include <json.hpp>

#include "sempol/error.hpp"
#include "sempol/uri.hpp"

namespace sempol {

namespace {

using json = nlohmann::ordered_json;

std::string describe(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "an object";
    case json::value_t::array: return "an array";
    case json::value_t::string: return "a string";
    case json::value_t::boolean: return "a boolean";
    default: return "a number";
  }
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string member_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

/// Field access on one JSON object with path-qualified errors.
class ObjectView {
 public:
  ObjectView(const json& j, std::string path,
             std::initializer_list<std::string_view> keys)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw SchemaError(path_.empty() ? "$" : path_, "expected an object, got " + describe(j_));
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) throw SchemaError(member_path(path_, key), "unknown key");
    }
  }

  const std::string& path() const { return path_; }
  std::string at(std::string_view key) const { return member_path(path_, key); }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const json& get(std::string_view key) const {
    auto it = j_.find(std::string(key));
    if (it == j_.end()) throw SchemaError(at(key), "missing required field");
    return *it;
  }

  std::string string(std::string_view key) const {
    const json& v = get(key);
    if (!v.is_string()) throw SchemaError(at(key), "expected a string, got " + describe(v));
    return v.get<std::string>();
  }

  std::optional<std::string> optional_string(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return string(key);
  }

  std::string uri(std::string_view key) const {
    std::string value = string(key);
    check_uri(value, at(key));
    return value;
  }

  std::optional<std::string> optional_uri(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return uri(key);
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = get(key);
    if (!v.is_boolean()) throw SchemaError(at(key), "expected a boolean, got " + describe(v));
    return v.get<bool>();
  }

  /// Calls fn(element, path) for each element of an optional array.
  template <typename Fn>
  void each(std::string_view key, Fn fn) const {
    if (!has(key)) return;
    const json& v = get(key);
    if (!v.is_array()) throw SchemaError(at(key), "expected an array, got " + describe(v));
    for (std::size_t i = 0; i < v.size(); ++i) fn(v[i], index_path(at(key), i));
  }

  std::vector<std::string> strings(std::string_view key) const {
    std::vector<std::string> out;
    each(key, [&](const json& e, const std::string& p) {
      if (!e.is_string()) throw SchemaError(p, "expected a string, got " + describe(e));
      out.push_back(e.get<std::string>());
    });
    return out;
  }

  static void check_uri(const std::string& value, const std::string& path) {
    if (!is_absolute_uri(value))
      throw SchemaError(path, "'" + value + "' is not an absolute URI");
  }

 private:
  const json& j_;
  std::string path_;
};

class ModelParser {
 public:
  ServiceModel parse(const json& root) {
    ObjectView top(root, "",
                   {"formatVersion", "modelName", "targetNamespace", "namespaces",
                    "domains", "interfaces", "bindings", "services", "attachments"});
    std::string version = top.string("formatVersion");
    if (version != kModelFormatVersion)
      throw SchemaError("formatVersion", "unsupported format version '" + version + "'");

    ServiceModel model;
    model.modelName = top.string("modelName");
    model.targetNamespace = top.uri("targetNamespace");

    prefixes_["xs"] = std::string(ns::kXsd);
    top.each("namespaces", [&](const json& j, const std::string& path) {
      ObjectView o(j, path, {"prefix", "uri"});
      NamespaceBinding b{o.string("prefix"), o.uri("uri")};
      prefixes_[b.prefix] = b.uri;
      model.namespaces.push_back(std::move(b));
    });
    // Domain prefixes are needed to resolve QNames anywhere in the document.
    top.each("domains", [&](const json& j, const std::string& path) {
      ObjectView o(j, path, {"name", "targetNamespace", "prefix", "assertions"});
      if (o.has("prefix") && o.get("prefix").is_string() &&
          o.has("targetNamespace") && o.get("targetNamespace").is_string())
        prefixes_.emplace(o.string("prefix"), o.string("targetNamespace"));
    });
    top.each("domains", [&](const json& j, const std::string& path) {
      model.domains.push_back(domain(j, path));
    });
    top.each("interfaces", [&](const json& j, const std::string& path) {
      model.interfaces.push_back(interface(j, path));
    });
    top.each("bindings", [&](const json& j, const std::string& path) {
      ObjectView o(j, path, {"name", "interface", "transportProtocol", "messageEncoding"});
      model.bindings.push_back({o.string("name"), o.string("interface"),
                                o.uri("transportProtocol"), o.string("messageEncoding")});
    });
    top.each("services", [&](const json& j, const std::string& path) {
      ObjectView o(j, path, {"name", "interface", "endpoints"});
      ServiceDecl s{o.string("name"), o.string("interface"), {}};
      o.each("endpoints", [&](const json& e, const std::string& p) {
        ObjectView eo(e, p, {"name", "binding", "address"});
        s.endpoints.push_back({eo.string("name"), eo.string("binding"), eo.uri("address")});
      });
      model.services.push_back(std::move(s));
    });
    std::set<SubjectRef> subjects;
    top.each("attachments", [&](const json& j, const std::string& path) {
      ObjectView o(j, path, {"subject", "policy"});
      PolicyAttachment att{subject(o.get("subject"), o.at("subject")),
                           policy_expr(o.get("policy"), o.at("policy"))};
      if (!subjects.insert(att.subject).second)
        throw SchemaError(o.at("subject"),
                          "a policy is already attached to " + att.subject.to_string() +
                              "; merge the policies into one (wsp:All) before attaching");
      model.attachments.push_back(std::move(att));
    });
    canonicalize(model);
    return model;
  }

 private:
  QName qname(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a QName string, got " + describe(j));
    std::string text = j.get<std::string>();
    if (text.starts_with('{')) {
      try {
        return QName::from_clark(text);
      } catch (const Error& e) {
        throw SchemaError(path, e.what());
      }
    }
    auto colon = text.find(':');
    if (colon == std::string::npos) return {"", text};
    auto it = prefixes_.find(text.substr(0, colon));
    if (it == prefixes_.end())
      throw SchemaError(path, "undeclared prefix in QName '" + text + "'");
    return {it->second, text.substr(colon + 1)};
  }

  SemanticAnnotation annotation(const json& j, const std::string& path) {
    ObjectView o(j, path, {"modelReference", "loweringSchema", "liftingSchema"});
    SemanticAnnotation a;
    o.each("modelReference", [&](const json& e, const std::string& p) {
      if (!e.is_string()) throw SchemaError(p, "expected a string, got " + describe(e));
      ObjectView::check_uri(e.get<std::string>(), p);
      a.modelReference.push_back(e.get<std::string>());
    });
    if (!o.has("modelReference"))
      throw SchemaError(o.at("modelReference"), "missing required field");
    a.loweringSchema = o.optional_uri("loweringSchema");
    a.liftingSchema = o.optional_uri("liftingSchema");
    return a;
  }

  DomainSchema domain(const json& j, const std::string& path) {
    ObjectView o(j, path, {"name", "targetNamespace", "prefix", "assertions"});
    DomainSchema d{o.string("name"), o.uri("targetNamespace"), o.string("prefix"), {}};
    o.each("assertions", [&](const json& e, const std::string& p) {
      ObjectView a(e, p, {"name", "typeKind", "valueType", "attributes",
                          "nestableChildren", "annotation"});
      AssertionDecl decl;
      decl.name = a.string("name");
      std::string kind = a.string("typeKind");
      auto tk = type_kind_from_string(kind);
      if (!tk)
        throw SchemaError(a.at("typeKind"),
                          "unknown typeKind '" + kind + "' (expected empty, simple or complex)");
      decl.typeKind = *tk;
      if (a.has("valueType")) decl.valueType = qname(a.get("valueType"), a.at("valueType"));
      a.each("attributes", [&](const json& at, const std::string& ap) {
        ObjectView ao(at, ap, {"name", "type", "annotation"});
        AttributeDecl attr{ao.string("name"), qname(ao.get("type"), ao.at("type")), {}};
        if (ao.has("annotation"))
          attr.annotation = annotation(ao.get("annotation"), ao.at("annotation"));
        decl.attributes.push_back(std::move(attr));
      });
      decl.nestableChildren = a.strings("nestableChildren");
      if (a.has("annotation"))
        decl.annotation = annotation(a.get("annotation"), a.at("annotation"));
      d.assertions.push_back(std::move(decl));
    });
    return d;
  }

  std::vector<MessageRef> messages(const ObjectView& o, std::string_view key) {
    std::vector<MessageRef> out;
    o.each(key, [&](const json& e, const std::string& p) {
      ObjectView m(e, p, {"name", "element"});
      out.push_back({m.string("name"), qname(m.get("element"), m.at("element"))});
    });
    return out;
  }

  InterfaceDecl interface(const json& j, const std::string& path) {
    ObjectView o(j, path, {"name", "faults", "operations"});
    InterfaceDecl iface{o.string("name"), {}, {}};
    o.each("faults", [&](const json& e, const std::string& p) {
      ObjectView f(e, p, {"name", "element"});
      FaultDecl fault{f.string("name"), std::nullopt};
      if (f.has("element")) fault.element = qname(f.get("element"), f.at("element"));
      iface.faults.push_back(std::move(fault));
    });
    o.each("operations", [&](const json& e, const std::string& p) {
      ObjectView op(e, p, {"name", "inputs", "outputs", "faults"});
      iface.operations.push_back({op.string("name"), messages(op, "inputs"),
                                  messages(op, "outputs"), op.strings("faults")});
    });
    return iface;
  }

  SubjectRef subject(const json& j, const std::string& path) {
    ObjectView o(j, path, {"kind", "path"});
    std::string kind = o.string("kind");
    auto k = subject_kind_from_string(kind);
    if (!k)
      throw SchemaError(o.at("kind"),
                        "unknown subject kind '" + kind +
                            "' (expected endpoint, binding, operation, interface or service)");
    return {*k, o.strings("path")};
  }

  PolicyExpr policy_expr(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1)
      throw SchemaError(path,
                        "a policy expression is an object with exactly one of "
                        "policy, all, exactlyOne, assertion");
    const auto& [key, value] = *j.items().begin();
    std::string childPath = member_path(path, key);
    if (key == "assertion") return assertion_expr(value, childPath);
    PolicyKind kind;
    if (key == "policy") kind = PolicyKind::Policy;
    else if (key == "all") kind = PolicyKind::All;
    else if (key == "exactlyOne") kind = PolicyKind::ExactlyOne;
    else throw SchemaError(childPath, "unknown policy operator");
    if (!value.is_array())
      throw SchemaError(childPath, "expected an array, got " + describe(value));
    PolicyExpr expr;
    expr.kind = kind;
    for (std::size_t i = 0; i < value.size(); ++i)
      expr.children.push_back(policy_expr(value[i], index_path(childPath, i)));
    return expr;
  }

  PolicyExpr assertion_expr(const json& j, const std::string& path) {
    ObjectView o(j, path, {"qname", "optional", "parameters", "nested"});
    PolicyExpr expr;
    expr.kind = PolicyKind::Assertion;
    expr.qname = qname(o.get("qname"), o.at("qname"));
    expr.optional = o.boolean("optional", false);
    o.each("parameters", [&](const json& e, const std::string& p) {
      ObjectView po(e, p, {"name", "value"});
      expr.parameters.push_back({po.string("name"), po.string("value")});
    });
    if (o.has("nested"))
      expr.nested = std::make_shared<const PolicyExpr>(
          policy_expr(o.get("nested"), o.at("nested")));
    return expr;
  }

  std::map<std::string, std::string> prefixes_;
};

// 1-based line/column of a byte offset.
std::pair<int, int> locate(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// --- serialization -------------------------------------------------------

json annotation_json(const SemanticAnnotation& a) {
  json j;
  j["modelReference"] = a.modelReference;
  if (a.loweringSchema) j["loweringSchema"] = *a.loweringSchema;
  if (a.liftingSchema) j["liftingSchema"] = *a.liftingSchema;
  return j;
}

json policy_json(const PolicyExpr& expr) {
  json j;
  switch (expr.kind) {
    case PolicyKind::Assertion: {
      json a;
      a["qname"] = expr.qname.clark();
      if (expr.optional) a["optional"] = true;
      if (!expr.parameters.empty()) {
        json params = json::array();
        for (const auto& p : expr.parameters)
          params.push_back(json{{"name", p.name}, {"value", p.value}});
        a["parameters"] = std::move(params);
      }
      if (expr.nested) a["nested"] = policy_json(*expr.nested);
      j["assertion"] = std::move(a);
      return j;
    }
    case PolicyKind::Policy:
    case PolicyKind::All:
    case PolicyKind::ExactlyOne: {
      json children = json::array();
      for (const auto& child : expr.children) children.push_back(policy_json(child));
      const char* key = expr.kind == PolicyKind::Policy ? "policy"
                        : expr.kind == PolicyKind::All  ? "all"
                                                        : "exactlyOne";
      j[key] = std::move(children);
      return j;
    }
  }
  return j;
}

json messages_json(const std::vector<MessageRef>& messages) {
  json arr = json::array();
  for (const auto& m : messages)
    arr.push_back(json{{"name", m.name}, {"element", m.element.clark()}});
  return arr;
}

}  // namespace

ServiceModel parse_model(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line
    // 1, column 2: " preamble; we report the location ourselves.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw SyntaxError(what, line, column);
  }
  return ModelParser().parse(root);
}

std::string serialize_model(const ServiceModel& input) {
  ServiceModel model = input;
  canonicalize(model);

  json root;
  root["formatVersion"] = std::string(kModelFormatVersion);
  root["modelName"] = model.modelName;
  root["targetNamespace"] = model.targetNamespace;

  if (!model.namespaces.empty()) {
    json arr = json::array();
    for (const auto& b : model.namespaces)
      arr.push_back(json{{"prefix", b.prefix}, {"uri", b.uri}});
    root["namespaces"] = std::move(arr);
  }
  if (!model.domains.empty()) {
    json arr = json::array();
    for (const auto& d : model.domains) {
      json dj;
      dj["name"] = d.name;
      dj["targetNamespace"] = d.targetNamespace;
      dj["prefix"] = d.prefix;
      if (!d.assertions.empty()) {
        json as = json::array();
        for (const auto& a : d.assertions) {
          json aj;
          aj["name"] = a.name;
          aj["typeKind"] = std::string(to_string(a.typeKind));
          if (a.valueType) aj["valueType"] = a.valueType->clark();
          if (!a.attributes.empty()) {
            json attrs = json::array();
            for (const auto& at : a.attributes) {
              json atj;
              atj["name"] = at.name;
              atj["type"] = at.simpleType.clark();
              if (at.annotation) atj["annotation"] = annotation_json(*at.annotation);
              attrs.push_back(std::move(atj));
            }
            aj["attributes"] = std::move(attrs);
          }
          if (!a.nestableChildren.empty()) aj["nestableChildren"] = a.nestableChildren;
          if (a.annotation) aj["annotation"] = annotation_json(*a.annotation);
          as.push_back(std::move(aj));
        }
        dj["assertions"] = std::move(as);
      }
      arr.push_back(std::move(dj));
    }
    root["domains"] = std::move(arr);
  }
  if (!model.interfaces.empty()) {
    json arr = json::array();
    for (const auto& i : model.interfaces) {
      json ij;
      ij["name"] = i.name;
      if (!i.faults.empty()) {
        json fs = json::array();
        for (const auto& f : i.faults) {
          json fj;
          fj["name"] = f.name;
          if (f.element) fj["element"] = f.element->clark();
          fs.push_back(std::move(fj));
        }
        ij["faults"] = std::move(fs);
      }
      if (!i.operations.empty()) {
        json ops = json::array();
        for (const auto& op : i.operations) {
          json oj;
          oj["name"] = op.name;
          if (!op.inputs.empty()) oj["inputs"] = messages_json(op.inputs);
          if (!op.outputs.empty()) oj["outputs"] = messages_json(op.outputs);
          if (!op.faultRefs.empty()) oj["faults"] = op.faultRefs;
          ops.push_back(std::move(oj));
        }
        ij["operations"] = std::move(ops);
      }
      arr.push_back(std::move(ij));
    }
    root["interfaces"] = std::move(arr);
  }
  if (!model.bindings.empty()) {
    json arr = json::array();
    for (const auto& b : model.bindings) {
      json bj;
      bj["name"] = b.name;
      bj["interface"] = b.interfaceRef;
      bj["transportProtocol"] = b.transportProtocol;
      bj["messageEncoding"] = b.messageEncoding;
      arr.push_back(std::move(bj));
    }
    root["bindings"] = std::move(arr);
  }
  if (!model.services.empty()) {
    json arr = json::array();
    for (const auto& s : model.services) {
      json sj;
      sj["name"] = s.name;
      sj["interface"] = s.interfaceRef;
      json eps = json::array();
      for (const auto& e : s.endpoints) {
        json ej;
        ej["name"] = e.name;
        ej["binding"] = e.bindingRef;
        ej["address"] = e.address;
        eps.push_back(std::move(ej));
      }
      sj["endpoints"] = std::move(eps);
      arr.push_back(std::move(sj));
    }
    root["services"] = std::move(arr);
  }
  if (!model.attachments.empty()) {
    json arr = json::array();
    for (const auto& a : model.attachments) {
      json aj;
      aj["subject"] = json{{"kind", std::string(to_string(a.subject.kind))},
                           {"path", a.subject.path}};
      aj["policy"] = policy_json(a.policy);
      arr.push_back(std::move(aj));
    }
    root["attachments"] = std::move(arr);
  }
  return root.dump(2) + "\n";
}

}  // namespace sempol
