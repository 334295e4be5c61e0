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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sempol/policy.hpp"
#include "sempol/qname.hpp"

namespace sempol {

// ---------------------------------------------------------------------------
// Non-functional domains
// ---------------------------------------------------------------------------

/// SAWSDL annotation of a schema component.
struct SemanticAnnotation {
  std::vector<std::string> modelReference;
  std::optional<std::string> loweringSchema;
  std::optional<std::string> liftingSchema;

  bool operator==(const SemanticAnnotation&) const = default;
};

enum class TypeKind { Empty, Simple, Complex };

std::string_view to_string(TypeKind kind);
std::optional<TypeKind> type_kind_from_string(std::string_view text);

struct AttributeDecl {
  std::string name;
  QName simpleType;
  std::optional<SemanticAnnotation> annotation;

  bool operator==(const AttributeDecl&) const = default;
};

/// A policy assertion declared as a top-level schema element.
struct AssertionDecl {
  std::string name;
  TypeKind typeKind = TypeKind::Empty;
  /// Content type of a Simple assertion; unset for the other kinds.
  std::optional<QName> valueType;
  std::vector<AttributeDecl> attributes;
  /// Assertions allowed inside this assertion's nested policy.
  std::vector<std::string> nestableChildren;
  std::optional<SemanticAnnotation> annotation;

  bool operator==(const AssertionDecl&) const = default;
};

/// A non-functional domain (security, QoS, ...) rendered as one XML schema.
struct DomainSchema {
  std::string name;
  std::string targetNamespace;
  std::string prefix;
  std::vector<AssertionDecl> assertions;

  QName qname_of(const AssertionDecl& decl) const {
    return {targetNamespace, decl.name};
  }

  bool operator==(const DomainSchema&) const = default;
};

// ---------------------------------------------------------------------------
// WSDL 2.0 components
// ---------------------------------------------------------------------------

struct MessageRef {
  std::string name;
  QName element;

  bool operator==(const MessageRef&) const = default;
};

struct FaultDecl {
  std::string name;
  std::optional<QName> element;

  bool operator==(const FaultDecl&) const = default;
};

struct OperationDecl {
  std::string name;
  std::vector<MessageRef> inputs;
  std::vector<MessageRef> outputs;
  std::vector<std::string> faultRefs;

  bool operator==(const OperationDecl&) const = default;
};

struct InterfaceDecl {
  std::string name;
  std::vector<OperationDecl> operations;
  std::vector<FaultDecl> faults;

  bool operator==(const InterfaceDecl&) const = default;
};

struct BindingDecl {
  std::string name;
  std::string interfaceRef;
  std::string transportProtocol;
  /// "soap" or "http"; selects the WSDL 2.0 binding type.
  std::string messageEncoding;

  bool operator==(const BindingDecl&) const = default;
};

struct Endpoint {
  std::string name;
  std::string bindingRef;
  std::string address;

  bool operator==(const Endpoint&) const = default;
};

struct ServiceDecl {
  std::string name;
  std::string interfaceRef;
  std::vector<Endpoint> endpoints;

  bool operator==(const ServiceDecl&) const = default;
};

// ---------------------------------------------------------------------------
// Policy attachment
// ---------------------------------------------------------------------------

enum class SubjectKind { Endpoint, Binding, Operation, Interface, Service };

std::string_view to_string(SubjectKind kind);
std::optional<SubjectKind> subject_kind_from_string(std::string_view text);

/// Addresses a WSDL element. Path shapes:
///   endpoint  [service, endpoint]
///   binding   [binding]
///   operation [interface, operation]
///   interface [interface]
///   service   [service]
struct SubjectRef {
  SubjectKind kind = SubjectKind::Endpoint;
  std::vector<std::string> path;

  /// "kind:seg/seg", e.g. "endpoint:TravelAgencyService/TravelAgencyEndpoint".
  std::string to_string() const;
  /// Inverse of to_string(); std::nullopt when malformed.
  static std::optional<SubjectRef> parse(std::string_view text);

  auto operator<=>(const SubjectRef&) const = default;
  bool operator==(const SubjectRef&) const = default;
};

struct PolicyAttachment {
  SubjectRef subject;
  PolicyExpr policy;

  bool operator==(const PolicyAttachment&) const = default;
};

/// Prefix declared for an external schema namespace (message element types).
struct NamespaceBinding {
  std::string prefix;
  std::string uri;

  bool operator==(const NamespaceBinding&) const = default;
};

struct ServiceModel {
  std::string modelName;
  std::string targetNamespace;
  std::vector<NamespaceBinding> namespaces;
  std::vector<DomainSchema> domains;
  std::vector<InterfaceDecl> interfaces;
  std::vector<BindingDecl> bindings;
  std::vector<ServiceDecl> services;
  std::vector<PolicyAttachment> attachments;

  bool operator==(const ServiceModel&) const = default;
};

/// Sorts every name-keyed collection by name and attachments by subject.
/// Stable, so duplicate names keep their relative order.
void canonicalize(ServiceModel& model);

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string subjectPath;
  std::string message;

  bool operator==(const Diagnostic&) const = default;

  /// "severity code subjectPath: message"
  std::string to_string() const;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace sempol
