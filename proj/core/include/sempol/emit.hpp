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
#include <string>
#include <vector>

#include "sempol/model.hpp"
#include "sempol/xml.hpp"

namespace sempol {

struct EmitOptions {
  /// "{domain}" is replaced by the domain name.
  std::string xsdFileNamePattern = "ws-semantic{domain}policy.xsd";
  /// "{model}" is replaced by the model name.
  std::string wsdlFileNamePattern = "{model}.wsdl";
  /// Preferred prefixes by namespace URI; they win over the defaults and
  /// over domain prefixes.
  std::map<std::string, std::string> prefixTable;
};

std::string xsd_file_name(const DomainSchema& domain, const EmitOptions& options);

/// SAWSDL-annotated schema with one top-level xs:element per assertion.
/// Throws GenerationError naming the domain if it is not emit-ready.
xml::Document emit_domain_xsd(const DomainSchema& domain,
                              const EmitOptions& options = {});

/// The policy tree as a wsp:Policy element, verbatim (no normalization).
/// Optional assertions keep wsp:Optional="true". Declares no namespaces;
/// see policy_document() for a standalone document.
///
/// Throws GenerationError when the policy has no alternative.
xml::Element emit_policy_element(const PolicyExpr& expr,
                                 const EmitOptions& options = {});

/// emit_policy_element() wrapped in a document that declares every namespace
/// the fragment uses. Unknown namespaces get prefixes ns1, ns2, ...
xml::Document policy_document(const PolicyExpr& expr,
                              const EmitOptions& options = {});

struct EmittedFile {
  std::string fileName;
  xml::Document document;
};

/// The WSDL 2.0 description followed by one XSD per domain.
/// Throws GenerationError if a policy names an assertion that no domain
/// declares, or has no alternative.
std::vector<EmittedFile> emit_wsdl(const ServiceModel& model,
                                   const EmitOptions& options = {});

/// Extra rules for generation on top of validate_model (currently: the model
/// must declare at least one service).
std::vector<Diagnostic> generation_diagnostics(const ServiceModel& model);

}  // namespace sempol
