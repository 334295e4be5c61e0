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

#include "sempol/intersect.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sempol/error.hpp"
#include "sempol/uri.hpp"

namespace sempol {

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::Strict ? "strict" : "semantic";
}

std::optional<MatchMode> match_mode_from_string(std::string_view text) {
  if (text == "strict") return MatchMode::Strict;
  if (text == "semantic") return MatchMode::Semantic;
  return std::nullopt;
}

namespace {

struct HeadMatch {
  bool matched = false;
  std::optional<std::string> sharedConcept;
};

struct NestedResult {
  NormalForm form;
  std::vector<AlternativeMatch> matches;
};

class Matcher {
 public:
  Matcher(MatchMode mode, const Vocabulary& vocab) : mode_(mode), vocab_(vocab) {}

  IntersectionReport intersect(const NormalForm& p, const NormalForm& q) {
    IntersectionReport report;
    for (std::size_t i = 0; i < p.alternatives.size(); ++i) {
      for (std::size_t j = 0; j < q.alternatives.size(); ++j) {
        const Alternative& left = p.alternatives[i];
        const Alternative& right = q.alternatives[j];

        // cells[x][y]: left[x] against right[y]
        std::vector<std::vector<std::optional<Cell>>> cells(left.size());
        std::vector<bool> rightCovered(right.size(), false);
        bool leftCovered = true;
        for (std::size_t x = 0; x < left.size(); ++x) {
          cells[x].resize(right.size());
          bool any = false;
          for (std::size_t y = 0; y < right.size(); ++y) {
            cells[x][y] = match(left[x], right[y]);
            if (cells[x][y]) {
              any = true;
              rightCovered[y] = true;
            }
          }
          if (!any) leftCovered = false;
        }
        if (!leftCovered ||
            std::find(rightCovered.begin(), rightCovered.end(), false) !=
                rightCovered.end())
          continue;

        Alternative combined;
        AlternativeMatch explanation{i, j, {}};
        for (std::size_t x = 0; x < left.size(); ++x) {
          std::vector<const Cell*> partners;
          for (std::size_t y = 0; y < right.size(); ++y) {
            if (!cells[x][y]) continue;
            partners.push_back(&*cells[x][y]);
            explanation.instances.push_back(InstanceMatch{
                left[x].qname, right[y].qname, cells[x][y]->head.sharedConcept,
                cells[x][y]->nested.matches});
          }
          combined.push_back(refined(left[x], partners));
        }
        for (std::size_t y = 0; y < right.size(); ++y) {
          std::vector<const Cell*> partners;
          for (std::size_t x = 0; x < left.size(); ++x)
            if (cells[x][y]) partners.push_back(&*cells[x][y]);
          combined.push_back(refined(right[y], partners));
        }
        canonicalize(combined);
        report.result.alternatives.push_back(std::move(combined));
        report.matches.push_back(std::move(explanation));
      }
    }
    report.result.canonicalize();
    return report;
  }

  bool compatible(const AssertionInstance& a, const AssertionInstance& b) {
    return match(a, b).has_value();
  }

 private:
  struct Cell {
    HeadMatch head;
    NestedResult nested;
  };

  std::optional<Cell> match(const AssertionInstance& a,
                            const AssertionInstance& b) {
    Cell cell;
    cell.head = head_match(a.qname, b.qname);
    if (!cell.head.matched) return std::nullopt;
    if (!a.nested || !b.nested) {
      if (a.nested || b.nested) return std::nullopt;
      return cell;
    }
    cell.nested = nested_intersection(*a.nested, *b.nested);
    if (cell.nested.form.unsatisfiable()) return std::nullopt;
    return cell;
  }

  const NestedResult& nested_intersection(const NormalForm& a,
                                          const NormalForm& b) {
    auto key = std::make_pair(&a, &b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    IntersectionReport sub = intersect(a, b);
    auto [it, _] = memo_.emplace(
        key, NestedResult{std::move(sub.result), std::move(sub.matches)});
    return it->second;
  }

  HeadMatch head_match(const QName& a, const QName& b) {
    if (mode_ == MatchMode::Strict) return {a == b, std::nullopt};
    const std::set<std::string>& left = concepts(a);
    const std::set<std::string>& right = concepts(b);
    if (a == b) return {true, std::nullopt};
    for (const auto& uri : left) {
      if (right.contains(uri)) return {true, uri};
    }
    return {};
  }

  const std::set<std::string>& concepts(const QName& name) {
    if (auto it = concepts_.find(name); it != concepts_.end()) return it->second;
    auto decl = vocab_.find(name);
    if (decl == vocab_.end())
      throw MatchError("semantic matching needs a declaration for assertion " +
                       name.clark());
    std::set<std::string> uris;
    if (decl->second.annotation) {
      for (const auto& uri : decl->second.annotation->modelReference)
        uris.insert(normalize_uri(uri));
    }
    return concepts_.emplace(name, std::move(uris)).first->second;
  }

  // The instance as it appears in the result: a nested policy becomes the
  // union of its intersections with every compatible partner.
  static AssertionInstance refined(const AssertionInstance& inst,
                                   const std::vector<const Cell*>& partners) {
    if (!inst.nested) return inst;
    NormalForm merged;
    for (const Cell* cell : partners) {
      merged.alternatives.insert(merged.alternatives.end(),
                                 cell->nested.form.alternatives.begin(),
                                 cell->nested.form.alternatives.end());
    }
    merged.canonicalize();
    AssertionInstance out = inst;
    out.nested = std::make_shared<const NormalForm>(std::move(merged));
    return out;
  }

  MatchMode mode_;
  const Vocabulary& vocab_;
  std::map<QName, std::set<std::string>> concepts_;
  std::map<std::pair<const NormalForm*, const NormalForm*>, NestedResult> memo_;
};

}  // namespace

bool assertions_compatible(const AssertionInstance& a,
                           const AssertionInstance& b, MatchMode mode,
                           const Vocabulary& vocab) {
  Matcher matcher(mode, vocab);
  return matcher.compatible(a, b);
}

NormalForm intersect(const NormalForm& p, const NormalForm& q, MatchMode mode,
                     const Vocabulary& vocab) {
  return intersect_explained(p, q, mode, vocab).result;
}

IntersectionReport intersect_explained(const NormalForm& p, const NormalForm& q,
                                       MatchMode mode, const Vocabulary& vocab) {
  Matcher matcher(mode, vocab);
  return matcher.intersect(p, q);
}

}  // namespace sempol
