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

// Tokenizing is done by expat without its namespace processing; prefixes are
// resolved here so that QName-valued attributes can be resolved later
// against the same scopes.

#include <expat.h>

#include <memory>
#include <set>

#include "sempol/error.hpp"
#include "sempol/xml.hpp"

namespace sempol::xml {

namespace {

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool all_space(const std::string& s) {
  for (char c : s)
    if (!is_space(c)) return false;
  return true;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(XML_Parser parser) : parser_(parser) {
    auto root = std::make_shared<NamespaceScope>();
    (*root)["xml"] = std::string(ns::kXml);
    rootScope_ = root;
  }

  Document take() { return std::move(doc_); }

  bool failed() const { return !error_.empty(); }
  const std::string& error() const { return error_; }
  int error_line() const { return errorLine_; }
  int error_column() const { return errorColumn_; }

  static void XMLCALL on_start(void* data, const XML_Char* name,
                               const XML_Char** atts) {
    static_cast<TreeBuilder*>(data)->start(name, atts);
  }
  static void XMLCALL on_end(void* data, const XML_Char*) {
    static_cast<TreeBuilder*>(data)->end();
  }
  static void XMLCALL on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    if (!self->stack_.empty()) self->stack_.back()->text.append(s, static_cast<std::size_t>(len));
  }
  static void XMLCALL on_doctype(void* data, const XML_Char*, const XML_Char*,
                                 const XML_Char*, int) {
    static_cast<TreeBuilder*>(data)->fail("DOCTYPE declarations are not supported");
  }

 private:
  void fail(std::string message) {
    if (!error_.empty()) return;
    error_ = std::move(message);
    errorLine_ = static_cast<int>(XML_GetCurrentLineNumber(parser_));
    errorColumn_ = static_cast<int>(XML_GetCurrentColumnNumber(parser_)) + 1;
    XML_StopParser(parser_, XML_FALSE);
  }

  std::optional<QName> resolve(std::string_view raw, const NamespaceScope& scope,
                               bool isAttribute) {
    std::string prefix;
    std::string_view local = raw;
    if (auto colon = raw.find(':'); colon != std::string_view::npos) {
      prefix = std::string(raw.substr(0, colon));
      local = raw.substr(colon + 1);
      if (!is_ncname(prefix) || !is_ncname(local)) {
        fail("malformed qualified name '" + std::string(raw) + "'");
        return std::nullopt;
      }
    } else if (isAttribute) {
      return QName{"", std::string(raw)};
    }
    auto it = scope.find(prefix);
    if (it == scope.end() || (it->second.empty() && !prefix.empty())) {
      if (prefix.empty()) return QName{"", std::string(local)};
      fail("undeclared namespace prefix '" + prefix + "'");
      return std::nullopt;
    }
    return QName{it->second, std::string(local)};
  }

  void start(const XML_Char* name, const XML_Char** atts) {
    if (failed()) return;
    Element element;
    element.line = static_cast<int>(XML_GetCurrentLineNumber(parser_));

    std::vector<std::pair<std::string, std::string>> rawAttrs;
    for (const XML_Char** a = atts; *a; a += 2) {
      std::string_view key = a[0];
      if (key == "xmlns") {
        element.namespaces[""] = a[1];
      } else if (key.starts_with("xmlns:")) {
        std::string prefix(key.substr(6));
        if (std::string_view(a[1]).empty()) {
          fail("namespace prefix '" + prefix + "' bound to an empty URI");
          return;
        }
        element.namespaces[prefix] = a[1];
      } else {
        rawAttrs.emplace_back(a[0], a[1]);
      }
    }

    std::shared_ptr<const NamespaceScope> parentScope =
        stack_.empty() ? rootScope_ : stack_.back()->scope;
    if (element.namespaces.empty()) {
      element.scope = parentScope;
    } else {
      auto scope = std::make_shared<NamespaceScope>(*parentScope);
      for (const auto& [prefix, uri] : element.namespaces) (*scope)[prefix] = uri;
      element.scope = std::move(scope);
    }

    auto qname = resolve(name, *element.scope, false);
    if (!qname) return;
    element.name = std::move(*qname);

    std::set<QName> seen;
    for (auto& [key, value] : rawAttrs) {
      auto attr = resolve(key, *element.scope, true);
      if (!attr) return;
      if (!seen.insert(*attr).second) {
        fail("duplicate attribute " + attr->clark());
        return;
      }
      element.attributes.push_back({std::move(*attr), std::move(value)});
    }

    if (stack_.empty()) {
      doc_.root = std::move(element);
      stack_.push_back(&doc_.root);
    } else {
      Element* parent = stack_.back();
      parent->children.push_back(std::move(element));
      stack_.push_back(&parent->children.back());
    }
  }

  void end() {
    if (failed() || stack_.empty()) return;
    Element* e = stack_.back();
    if (!e->children.empty() && all_space(e->text)) e->text.clear();
    stack_.pop_back();
  }

  XML_Parser parser_;
  Document doc_;
  std::vector<Element*> stack_;
  std::shared_ptr<const NamespaceScope> rootScope_;
  std::string error_;
  int errorLine_ = 0;
  int errorColumn_ = 0;
};

}  // namespace

Document parse(std::string_view bytes) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate(nullptr));
  if (!parser) throw Error("cannot allocate XML parser");
  XML_SetParamEntityParsing(parser.get(), XML_PARAM_ENTITY_PARSING_NEVER);

  TreeBuilder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), &TreeBuilder::on_doctype);

  if (bytes.size() > static_cast<std::size_t>(INT32_MAX))
    throw Error("XML input too large");
  auto status = XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (builder.failed())
    throw SyntaxError(builder.error(), builder.error_line(), builder.error_column());
  if (status != XML_STATUS_OK) {
    throw SyntaxError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                      static_cast<int>(XML_GetCurrentLineNumber(parser.get())),
                      static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1);
  }
  return builder.take();
}

}  // namespace sempol::xml
