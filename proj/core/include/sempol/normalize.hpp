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

#include "sempol/policy.hpp"

namespace sempol {

/// Rewrites every optional assertion A into ExactlyOne(All(A), All()),
/// including inside nested policies.
PolicyExpr expand_optional(const PolicyExpr& expr);

/// Reduces a policy to its alternatives:
///   assertion        -> {{a}}
///   All / Policy     -> unions over the cross product of the children
///   ExactlyOne       -> union of the children's alternatives
/// Nested policies are normalized recursively and kept on their assertion.
NormalForm normalize(const PolicyExpr& expr);

/// Rebuilds Policy(ExactlyOne(All(...), ...)) from a normal form.
PolicyExpr denormalize(const NormalForm& form);

/// All(p, q).
PolicyExpr merge(const PolicyExpr& p, const PolicyExpr& q);

/// Set equality of alternatives, recursing into nested forms. Accepts
/// non-canonical inputs.
bool normal_forms_equal(const NormalForm& p, const NormalForm& q);

}  // namespace sempol
