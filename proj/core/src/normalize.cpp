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

#include "sempol/normalize.hpp"

#include <algorithm>
#include <iterator>

namespace sempol {

PolicyExpr expand_optional(const PolicyExpr& expr) {
  if (expr.kind != PolicyKind::Assertion) {
    PolicyExpr out;
    out.kind = expr.kind;
    out.children.reserve(expr.children.size());
    for (const auto& child : expr.children)
      out.children.push_back(expand_optional(child));
    return out;
  }
  PolicyExpr required = expr;
  required.optional = false;
  if (expr.nested)
    required.nested = std::make_shared<const PolicyExpr>(expand_optional(*expr.nested));
  if (!expr.optional) return required;
  return exactly_one({all({std::move(required)}), all()});
}

namespace {

// Union of two canonical alternatives.
Alternative merge_alternatives(const Alternative& a, const Alternative& b) {
  Alternative out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NormalForm normalize_expanded(const PolicyExpr& expr) {
  switch (expr.kind) {
    case PolicyKind::Assertion: {
      AssertionInstance inst;
      inst.qname = expr.qname;
      inst.parameters = expr.parameters;
      std::sort(inst.parameters.begin(), inst.parameters.end());
      if (expr.nested)
        inst.nested = std::make_shared<const NormalForm>(normalize_expanded(*expr.nested));
      return NormalForm{{Alternative{std::move(inst)}}};
    }
    case PolicyKind::ExactlyOne: {
      NormalForm out;
      for (const auto& child : expr.children) {
        NormalForm sub = normalize_expanded(child);
        std::move(sub.alternatives.begin(), sub.alternatives.end(),
                  std::back_inserter(out.alternatives));
      }
      out.canonicalize();
      return out;
    }
    case PolicyKind::Policy:
    case PolicyKind::All: {
      NormalForm acc{{Alternative{}}};
      for (const auto& child : expr.children) {
        NormalForm sub = normalize_expanded(child);
        NormalForm next;
        next.alternatives.reserve(acc.alternatives.size() * sub.alternatives.size());
        for (const auto& left : acc.alternatives)
          for (const auto& right : sub.alternatives)
            next.alternatives.push_back(merge_alternatives(left, right));
        next.canonicalize();
        acc = std::move(next);
        if (acc.unsatisfiable()) break;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

NormalForm normalize(const PolicyExpr& expr) {
  return normalize_expanded(expand_optional(expr));
}

PolicyExpr denormalize(const NormalForm& form) {
  std::vector<PolicyExpr> alternatives;
  alternatives.reserve(form.alternatives.size());
  for (const auto& alt : form.alternatives) {
    std::vector<PolicyExpr> members;
    members.reserve(alt.size());
    for (const auto& inst : alt) {
      if (inst.nested)
        members.push_back(assertion(inst.qname, denormalize(*inst.nested), false,
                                    inst.parameters));
      else
        members.push_back(assertion(inst.qname, false, inst.parameters));
    }
    alternatives.push_back(all(std::move(members)));
  }
  return policy({exactly_one(std::move(alternatives))});
}

PolicyExpr merge(const PolicyExpr& p, const PolicyExpr& q) {
  return all({p, q});
}

bool normal_forms_equal(const NormalForm& p, const NormalForm& q) {
  NormalForm a = p;
  NormalForm b = q;
  a.canonicalize();
  b.canonicalize();
  return a == b;
}

}  // namespace sempol
