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
#include "sempol/validate.hpp"

namespace sempol {

/// Strict compares assertion QNames. Semantic additionally accepts two
/// different QNames whose declarations share a sawsdl:modelReference URI.
enum class MatchMode { Strict, Semantic };

std::string_view to_string(MatchMode mode);
std::optional<MatchMode> match_mode_from_string(std::string_view text);

/// Parameters are ignored. Nested policies must be present on both sides (or
/// absent on both) and intersect to a non-empty normal form.
///
/// Throws MatchError in semantic mode when either QName is missing from
/// `vocab`.
bool assertions_compatible(const AssertionInstance& a,
                           const AssertionInstance& b, MatchMode mode,
                           const Vocabulary& vocab);

/// { A u B : A in p, B in q, every instance of A has a compatible instance
/// in B and vice versa }. Instances with nested policies carry the
/// intersection of the matched nested forms.
NormalForm intersect(const NormalForm& p, const NormalForm& q, MatchMode mode,
                     const Vocabulary& vocab);

struct AlternativeMatch;

/// Why two instances matched. `sharedConcept` is set when a semantic match
/// joined two different QNames.
struct InstanceMatch {
  QName left;
  QName right;
  std::optional<std::string> sharedConcept;
  /// Compatible pairs inside the nested policies, if any.
  std::vector<AlternativeMatch> nested;
};

/// A compatible pair of alternatives, by index into the operands.
struct AlternativeMatch {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<InstanceMatch> instances;
};

struct IntersectionReport {
  NormalForm result;
  std::vector<AlternativeMatch> matches;
};

/// intersect() plus the compatible pairs that produced each result
/// alternative.
IntersectionReport intersect_explained(const NormalForm& p, const NormalForm& q,
                                       MatchMode mode, const Vocabulary& vocab);

}  // namespace sempol
