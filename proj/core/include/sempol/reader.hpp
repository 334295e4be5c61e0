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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sempol/model.hpp"
#include "sempol/xml.hpp"

namespace sempol {

/// An xs:import found in wsdl:types.
struct SchemaImport {
  std::string ns;
  std::string schemaLocation;
};

struct ParsedArtifacts {
  /// Interfaces, bindings, services and attachments recovered from the WSDL,
  /// plus the companion domains that matched an import. The WSDL carries no
  /// model name, so `modelName` is empty.
  ServiceModel serviceModel;
  std::vector<DomainSchema> domains;
  std::vector<PolicyAttachment> attachments;
  std::vector<Diagnostic> warnings;

  std::vector<SchemaImport> imports;
  /// Assertion QNames used by policies that no imported companion domain
  /// declares.
  std::set<QName> unresolvedAssertions;
  /// Prefixes declared in the document, by namespace URI (first wins).
  std::map<std::string, std::string> prefixes;
};

/// Reads a WSDL 2.0 description in the dialect emit_wsdl() writes.
/// Companion schemas are matched to xs:import namespaces by targetNamespace.
///
/// Throws SyntaxError for malformed XML and SchemaError for a wsp:Policy
/// placed under an element that is not a policy subject.
ParsedArtifacts parse_wsdl(std::string_view wsdl,
                           const std::vector<std::string>& companionSchemas = {});

/// Reads a wsp:Policy element. wsp:Optional="true" sets the optional flag;
/// plain attributes on assertions become parameters. Throws SchemaError for
/// unsupported wsp constructs (wsp:Ignorable, wsp:PolicyReference, ...).
PolicyExpr parse_policy_element(const xml::Element& element);

/// Parses a standalone policy document.
PolicyExpr parse_policy_document(std::string_view bytes);

/// Reads a domain schema. Top-level components other than xs:element are
/// skipped with a warning appended to `warnings`.
DomainSchema parse_domain_xsd(std::string_view bytes,
                              std::vector<Diagnostic>& warnings);
DomainSchema parse_domain_xsd(std::string_view bytes);

}  // namespace sempol
