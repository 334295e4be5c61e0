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

#include "sempol/policy.hpp"

#include <algorithm>

namespace sempol {

bool operator==(const PolicyExpr& a, const PolicyExpr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != PolicyKind::Assertion) return a.children == b.children;
  if (a.qname != b.qname || a.optional != b.optional ||
      a.parameters != b.parameters)
    return false;
  if (!a.nested || !b.nested) return !a.nested && !b.nested;
  return *a.nested == *b.nested;
}

namespace {

PolicyExpr make_operator(PolicyKind kind, std::vector<PolicyExpr> children) {
  PolicyExpr expr;
  expr.kind = kind;
  expr.children = std::move(children);
  return expr;
}

}  // namespace

PolicyExpr policy(std::vector<PolicyExpr> children) {
  return make_operator(PolicyKind::Policy, std::move(children));
}

PolicyExpr all(std::vector<PolicyExpr> children) {
  return make_operator(PolicyKind::All, std::move(children));
}

PolicyExpr exactly_one(std::vector<PolicyExpr> children) {
  return make_operator(PolicyKind::ExactlyOne, std::move(children));
}

PolicyExpr assertion(QName qname, bool optional,
                     std::vector<Parameter> parameters) {
  PolicyExpr expr;
  expr.kind = PolicyKind::Assertion;
  expr.qname = std::move(qname);
  expr.optional = optional;
  expr.parameters = std::move(parameters);
  return expr;
}

PolicyExpr assertion(QName qname, PolicyExpr nested, bool optional,
                     std::vector<Parameter> parameters) {
  PolicyExpr expr = assertion(std::move(qname), optional, std::move(parameters));
  expr.nested = std::make_shared<const PolicyExpr>(std::move(nested));
  return expr;
}

std::size_t assertion_count(const PolicyExpr& expr) {
  if (expr.kind == PolicyKind::Assertion)
    return 1 + (expr.nested ? assertion_count(*expr.nested) : 0);
  std::size_t total = 0;
  for (const auto& child : expr.children) total += assertion_count(child);
  return total;
}

std::strong_ordering operator<=>(const AssertionInstance& a,
                                 const AssertionInstance& b) {
  if (auto c = a.qname <=> b.qname; c != 0) return c;
  if (auto c = a.parameters <=> b.parameters; c != 0) return c;
  if (!a.nested || !b.nested) {
    return static_cast<bool>(a.nested) <=> static_cast<bool>(b.nested);
  }
  return *a.nested <=> *b.nested;
}

bool operator==(const AssertionInstance& a, const AssertionInstance& b) {
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const NormalForm& a, const NormalForm& b) {
  return std::lexicographical_compare_three_way(
      a.alternatives.begin(), a.alternatives.end(), b.alternatives.begin(),
      b.alternatives.end(), [](const Alternative& x, const Alternative& y) {
        return std::lexicographical_compare_three_way(x.begin(), x.end(),
                                                      y.begin(), y.end());
      });
}

bool operator==(const NormalForm& a, const NormalForm& b) {
  return (a <=> b) == 0;
}

void canonicalize(Alternative& alternative) {
  for (auto& inst : alternative) {
    std::sort(inst.parameters.begin(), inst.parameters.end());
    if (inst.nested) {
      // Nested forms are shared; canonicalize a private copy.
      NormalForm copy = *inst.nested;
      copy.canonicalize();
      if (!(copy == *inst.nested))
        inst.nested = std::make_shared<const NormalForm>(std::move(copy));
    }
  }
  std::sort(alternative.begin(), alternative.end());
  alternative.erase(std::unique(alternative.begin(), alternative.end()),
                    alternative.end());
}

void NormalForm::canonicalize() {
  for (auto& alt : alternatives) sempol::canonicalize(alt);
  std::sort(alternatives.begin(), alternatives.end(),
            [](const Alternative& x, const Alternative& y) {
              return std::lexicographical_compare_three_way(
                         x.begin(), x.end(), y.begin(), y.end()) < 0;
            });
  alternatives.erase(std::unique(alternatives.begin(), alternatives.end()),
                     alternatives.end());
}

AssertionInstance instance(QName qname, std::vector<Parameter> parameters) {
  std::sort(parameters.begin(), parameters.end());
  return AssertionInstance{std::move(qname), std::move(parameters), nullptr};
}

AssertionInstance instance(QName qname, NormalForm nested,
                           std::vector<Parameter> parameters) {
  AssertionInstance inst = instance(std::move(qname), std::move(parameters));
  nested.canonicalize();
  inst.nested = std::make_shared<const NormalForm>(std::move(nested));
  return inst;
}

NormalForm make_normal_form(std::vector<Alternative> alternatives) {
  NormalForm form{std::move(alternatives)};
  form.canonicalize();
  return form;
}

}  // namespace sempol
