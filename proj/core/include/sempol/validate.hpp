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
#include <optional>
#include <variant>
#include <vector>

#include "sempol/model.hpp"

namespace sempol {

/// Every violated model invariant, ordered by subject path, then code. An
/// empty result means the model is ready for generation.
///
/// Codes: bad-name, bad-uri, duplicate-name, duplicate-prefix,
/// duplicate-qname, namespace-conflict, namespace-undeclared,
/// interface-unresolved, binding-unresolved, binding-interface-mismatch,
/// fault-unresolved, no-endpoints, bad-encoding, nestable-unresolved,
/// nesting-requires-complex, value-type, attribute-type-unsupported,
/// annotation-empty, annotation-placement, subject-unresolved,
/// duplicate-attachment, assertion-undeclared, unsatisfiable-policy,
/// duplicate-parameter.
std::vector<Diagnostic> validate_model(const ServiceModel& model);

/// The element a subject path addresses.
using SubjectTarget =
    std::variant<const Endpoint*, const BindingDecl*, const OperationDecl*,
                 const InterfaceDecl*, const ServiceDecl*>;

/// The unique element addressed by `subject`, or std::nullopt when the path
/// is empty, has the wrong shape, names nothing, or is ambiguous.
std::optional<SubjectTarget> resolve_subject(const ServiceModel& model,
                                             const SubjectRef& subject);

/// Assertion declarations keyed by (domain namespace, assertion name).
using Vocabulary = std::map<QName, AssertionDecl>;

/// Collects the assertions of every domain. On a duplicate QName the first
/// declaration wins; validate_model reports the clash as duplicate-qname.
Vocabulary assertion_vocabulary(const ServiceModel& model);

/// Same, for loose domain schemas (e.g. parsed from XSD files).
Vocabulary assertion_vocabulary(const std::vector<DomainSchema>& domains);

}  // namespace sempol
