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

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "sempol/qname.hpp"

namespace sempol {

/// An opaque assertion parameter. Parameters are carried through
/// normalization and intersection but never compared for compatibility.
struct Parameter {
  std::string name;
  std::string value;

  auto operator<=>(const Parameter&) const = default;
  bool operator==(const Parameter&) const = default;
};

enum class PolicyKind { Policy, All, ExactlyOne, Assertion };

/// A WS-Policy operator tree as written by an author. Policy behaves exactly
/// like All; it only exists so that documents keep their wsp:Policy wrappers.
///
/// Operator nodes use `children`; assertion nodes use `qname`, `optional`,
/// `parameters` and `nested`. Nested policies are shared and never mutated.
struct PolicyExpr {
  PolicyKind kind = PolicyKind::Policy;
  std::vector<PolicyExpr> children;

  QName qname;
  bool optional = false;
  std::vector<Parameter> parameters;
  std::shared_ptr<const PolicyExpr> nested;

  bool is_operator() const noexcept { return kind != PolicyKind::Assertion; }

  friend bool operator==(const PolicyExpr& a, const PolicyExpr& b);
};

PolicyExpr policy(std::vector<PolicyExpr> children = {});
PolicyExpr all(std::vector<PolicyExpr> children = {});
PolicyExpr exactly_one(std::vector<PolicyExpr> children = {});
PolicyExpr assertion(QName qname, bool optional = false,
                     std::vector<Parameter> parameters = {});
/// Assertion carrying a nested policy expression.
PolicyExpr assertion(QName qname, PolicyExpr nested, bool optional = false,
                     std::vector<Parameter> parameters = {});

/// Number of assertion nodes in the tree, nested policies included.
std::size_t assertion_count(const PolicyExpr& expr);

struct NormalForm;

/// One assertion inside a policy alternative. Parameters are kept sorted by
/// name; `nested` is the normal form of the assertion's nested policy.
struct AssertionInstance {
  QName qname;
  std::vector<Parameter> parameters;
  std::shared_ptr<const NormalForm> nested;

  friend std::strong_ordering operator<=>(const AssertionInstance& a,
                                          const AssertionInstance& b);
  friend bool operator==(const AssertionInstance& a,
                         const AssertionInstance& b);
};

using Alternative = std::vector<AssertionInstance>;

/// A policy as a set of alternatives, each a set of assertion instances.
/// Values produced by the library are canonical: instances and alternatives
/// sorted, without duplicates.
struct NormalForm {
  std::vector<Alternative> alternatives;

  bool unsatisfiable() const noexcept { return alternatives.empty(); }

  /// Sorts and deduplicates in place (recursing into nested forms).
  void canonicalize();

  friend std::strong_ordering operator<=>(const NormalForm& a,
                                          const NormalForm& b);
  friend bool operator==(const NormalForm& a, const NormalForm& b);
};

/// Sorts and deduplicates an alternative.
void canonicalize(Alternative& alternative);

/// Convenience builders used by tests and the CLI.
AssertionInstance instance(QName qname, std::vector<Parameter> parameters = {});
AssertionInstance instance(QName qname, NormalForm nested,
                           std::vector<Parameter> parameters = {});
NormalForm make_normal_form(std::vector<Alternative> alternatives);

}  // namespace sempol
