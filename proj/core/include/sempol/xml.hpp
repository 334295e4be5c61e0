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

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sempol/qname.hpp"

namespace sempol::xml {

struct Attribute {
  QName name;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

/// prefix -> namespace URI. The empty prefix is the default namespace.
using NamespaceScope = std::map<std::string, std::string>;

/// Namespace-aware element. An element holds either child elements or text;
/// the writer ignores `text` when children are present.
struct Element {
  QName name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  std::string text;

  /// Declarations made on this element (prefix -> URI).
  NamespaceScope namespaces;

  /// In-scope declarations; filled by the parser, used to resolve QName-valued
  /// attributes. Not part of element identity.
  std::shared_ptr<const NamespaceScope> scope;
  int line = 0;

  Element() = default;
  explicit Element(QName qname) : name(std::move(qname)) {}

  /// Sets (or replaces) an attribute.
  Element& set(QName attr, std::string value);
  Element& set(std::string local, std::string value) {
    return set(QName{"", std::move(local)}, std::move(value));
  }
  Element& add(Element child);

  const Attribute* find_attribute(const QName& attr) const;
  std::optional<std::string> attribute(const QName& attr) const;
  std::optional<std::string> attribute(std::string_view local) const {
    return attribute(QName{"", std::string(local)});
  }

  /// Resolves a "prefix:local" value against the in-scope namespaces. An
  /// unprefixed value takes the default namespace. std::nullopt when the
  /// prefix is undeclared or the value is not a QName.
  std::optional<QName> resolve_qname(std::string_view value) const;

  friend bool operator==(const Element& a, const Element& b);
};

/// A document whose namespace table is declared on the root element.
struct Document {
  Element root;

  bool operator==(const Document&) const = default;
};

/// Canonical bytes: UTF-8 XML declaration, 2-space indentation, namespace
/// declarations first (sorted by prefix), then attributes sorted by qualified
/// name, empty elements self-closed, trailing newline.
///
/// Throws sempol::Error if an element or attribute namespace has no prefix
/// in scope, or if two attributes share a qualified name.
std::string write_canonical(const Document& doc);

/// Parses a document. DOCTYPE declarations are rejected, so no entity is
/// ever expanded or fetched. Throws SyntaxError (with location) for
/// malformed or namespace-invalid input.
Document parse(std::string_view bytes);

}  // namespace sempol::xml
