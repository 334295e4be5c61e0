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

#include "sempol/xml.hpp"

#include <algorithm>

#include "sempol/error.hpp"

namespace sempol::xml {

Element& Element::set(QName attr, std::string value) {
  for (auto& a : attributes) {
    if (a.name == attr) {
      a.value = std::move(value);
      return *this;
    }
  }
  attributes.push_back({std::move(attr), std::move(value)});
  return *this;
}

Element& Element::add(Element child) {
  children.push_back(std::move(child));
  return *this;
}

const Attribute* Element::find_attribute(const QName& attr) const {
  for (const auto& a : attributes)
    if (a.name == attr) return &a;
  return nullptr;
}

std::optional<std::string> Element::attribute(const QName& attr) const {
  if (const Attribute* a = find_attribute(attr)) return a->value;
  return std::nullopt;
}

std::optional<QName> Element::resolve_qname(std::string_view value) const {
  while (!value.empty() && (value.front() == ' ' || value.front() == '\t' ||
                            value.front() == '\n' || value.front() == '\r'))
    value.remove_prefix(1);
  while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                            value.back() == '\n' || value.back() == '\r'))
    value.remove_suffix(1);

  std::string prefix;
  std::string_view local = value;
  if (auto colon = value.find(':'); colon != std::string_view::npos) {
    prefix = std::string(value.substr(0, colon));
    local = value.substr(colon + 1);
    if (!is_ncname(prefix)) return std::nullopt;
  }
  if (!is_ncname(local)) return std::nullopt;

  auto lookup = [&](const NamespaceScope& s) -> std::optional<std::string> {
    if (auto it = s.find(prefix); it != s.end()) return it->second;
    return std::nullopt;
  };
  std::optional<std::string> uri = scope ? lookup(*scope) : lookup(namespaces);
  if (!uri) {
    if (!prefix.empty()) return std::nullopt;
    uri = "";
  }
  return QName{*uri, std::string(local)};
}

bool operator==(const Element& a, const Element& b) {
  // Attribute order carries no meaning; names are unique within an element.
  auto same_attributes = [&] {
    if (a.attributes.size() != b.attributes.size()) return false;
    for (const auto& attr : a.attributes) {
      const Attribute* other = b.find_attribute(attr.name);
      if (!other || other->value != attr.value) return false;
    }
    return true;
  };
  return a.name == b.name && same_attributes() &&
         a.children == b.children && a.text == b.text &&
         a.namespaces == b.namespaces;
}

namespace {

void escape_text(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
}

void escape_attribute(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

class Writer {
 public:
  std::string run(const Document& doc) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    NamespaceScope scope{{"xml", std::string(ns::kXml)}};
    element(doc.root, scope, 0);
    return std::move(out_);
  }

 private:
  static std::string qualify(const QName& name, const NamespaceScope& scope,
                             bool isAttribute) {
    if (name.ns.empty()) {
      if (!isAttribute) {
        auto def = scope.find("");
        if (def != scope.end() && !def->second.empty())
          throw Error("element '" + name.local +
                      "' has no namespace but a default namespace is in scope");
      }
      return name.local;
    }
    // Smallest prefix wins; the default namespace only serves elements.
    for (const auto& [prefix, uri] : scope) {
      if (uri != name.ns) continue;
      if (prefix.empty()) {
        if (isAttribute) continue;
        return name.local;
      }
      return prefix + ":" + name.local;
    }
    throw Error("no prefix declared for namespace '" + name.ns + "' (" +
                name.local + ")");
  }

  void element(const Element& e, const NamespaceScope& parentScope, int depth) {
    NamespaceScope scope = parentScope;
    for (const auto& [prefix, uri] : e.namespaces) scope[prefix] = uri;

    std::string tag = qualify(e.name, scope, false);
    std::vector<std::pair<std::string, const std::string*>> attrs;
    attrs.reserve(e.attributes.size());
    for (const auto& a : e.attributes)
      attrs.emplace_back(qualify(a.name, scope, true), &a.value);
    std::sort(attrs.begin(), attrs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < attrs.size(); ++i) {
      if (attrs[i].first == attrs[i - 1].first)
        throw Error("duplicate attribute '" + attrs[i].first + "' on <" + tag + ">");
    }

    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += indent;
    out_ += '<';
    out_ += tag;
    for (const auto& [prefix, uri] : e.namespaces) {  // std::map: sorted
      out_ += prefix.empty() ? " xmlns=\"" : " xmlns:" + prefix + "=\"";
      escape_attribute(out_, uri);
      out_ += '"';
    }
    for (const auto& [name, value] : attrs) {
      out_ += ' ';
      out_ += name;
      out_ += "=\"";
      escape_attribute(out_, *value);
      out_ += '"';
    }
    if (e.children.empty()) {
      if (e.text.empty()) {
        out_ += "/>\n";
      } else {
        out_ += '>';
        escape_text(out_, e.text);
        out_ += "</" + tag + ">\n";
      }
      return;
    }
    out_ += ">\n";
    for (const auto& child : e.children) element(child, scope, depth + 1);
    out_ += indent + "</" + tag + ">\n";
  }

  std::string out_;
};

}  // namespace

std::string write_canonical(const Document& doc) { return Writer().run(doc); }

}  // namespace sempol::xml
