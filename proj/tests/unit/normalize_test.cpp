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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "sempol/normalize.hpp"

namespace sempol {
namespace {

using testing::enumerate_alternatives_oracle;
using testing::enumerate_oracle_form;
using testing::sec;
using testing::to_oracle_form;

const std::string kT = "urn:test";
QName q(const char* local) { return {kT, local}; }
PolicyExpr a(const char* local, bool optional = false) { return assertion(q(local), optional); }
AssertionInstance i(const char* local) { return instance(q(local)); }

PolicyExpr username_token_policy() {
  return policy({assertion(
      sec("UsernameToken"),
      policy({exactly_one({all({assertion(sec("NoPassword")), assertion(sec("WssUsernameToken10"))}),
                           all({assertion(sec("HashPassword")),
                                assertion(sec("WssUsernameToken10"))})})}))});
}

NormalForm password_choices() {
  return make_normal_form({{instance(sec("NoPassword")), instance(sec("WssUsernameToken10"))},
                           {instance(sec("HashPassword")), instance(sec("WssUsernameToken10"))}});
}

TEST(ExpandOptionalTest, OptionalBecomesChoice) {
  EXPECT_EQ(expand_optional(a("X", true)), exactly_one({all({a("X")}), all()}));
  EXPECT_EQ(expand_optional(a("X")), a("X"));
  EXPECT_EQ(expand_optional(all({a("X"), a("Y", true)})),
            all({a("X"), exactly_one({all({a("Y")}), all()})}));
}

TEST(ExpandOptionalTest, ReachesNestedPolicies) {
  PolicyExpr e = assertion(q("N"), policy({a("Y", true)}));
  PolicyExpr expected = assertion(q("N"), policy({exactly_one({all({a("Y")}), all()})}));
  EXPECT_EQ(expand_optional(e), expected);
}

TEST(NormalizeTest, OptionalYieldsTwoAlternatives) {
  NormalForm nf = normalize(all({a("X"), a("Y", true)}));
  EXPECT_EQ(nf, make_normal_form({{i("X"), i("Y")}, {i("X")}}));
  EXPECT_EQ(to_oracle_form(nf), enumerate_oracle_form(all({a("X"), a("Y", true)})));
}

TEST(NormalizeTest, UsernameTokenHasOneAlternativeWithTwoNested) {
  NormalForm nf = normalize(username_token_policy());
  ASSERT_EQ(nf.alternatives.size(), 1u);
  ASSERT_EQ(nf.alternatives[0].size(), 1u);
  const AssertionInstance& token = nf.alternatives[0][0];
  EXPECT_EQ(token.qname, sec("UsernameToken"));
  ASSERT_TRUE(token.nested);
  EXPECT_EQ(*token.nested, password_choices());
}

TEST(NormalizeTest, BaseCases) {
  EXPECT_EQ(normalize(policy()), make_normal_form({{}}));
  EXPECT_TRUE(normalize(exactly_one()).unsatisfiable());
  EXPECT_TRUE(normalize(policy({exactly_one()})).unsatisfiable());
  EXPECT_TRUE(normalize(all({a("X"), exactly_one()})).unsatisfiable());
}

TEST(NormalizeTest, NestedUnsatisfiableStaysNested) {
  NormalForm nf = normalize(policy({assertion(q("N"), policy({exactly_one()}))}));
  ASSERT_EQ(nf.alternatives.size(), 1u);
  ASSERT_TRUE(nf.alternatives[0][0].nested);
  EXPECT_TRUE(nf.alternatives[0][0].nested->unsatisfiable());
}

TEST(NormalizeTest, DuplicatesCollapse) {
  EXPECT_EQ(normalize(all({a("X"), a("X")})), make_normal_form({{i("X")}}));
  EXPECT_EQ(normalize(exactly_one({a("X"), a("X")})), make_normal_form({{i("X")}}));
}

TEST(NormalizeTest, ParametersDistinguishInstances) {
  PolicyExpr e = all({assertion(q("X"), false, {{"k", "1"}}), assertion(q("X"), false, {{"k", "2"}})});
  NormalForm nf = normalize(e);
  ASSERT_EQ(nf.alternatives.size(), 1u);
  EXPECT_EQ(nf.alternatives[0].size(), 2u);
}

TEST(OracleTest, HandWorkedExamples) {
  EXPECT_EQ(enumerate_alternatives_oracle(exactly_one({all({a("A"), a("B")}), all({a("C")})})),
            make_normal_form({{i("A"), i("B")}, {i("C")}}));
  EXPECT_EQ(enumerate_alternatives_oracle(
                all({exactly_one({a("A"), a("B")}), exactly_one({a("C"), a("D")})})),
            make_normal_form({{i("A"), i("C")}, {i("A"), i("D")}, {i("B"), i("C")}, {i("B"), i("D")}}));
  NormalForm token = enumerate_alternatives_oracle(username_token_policy());
  ASSERT_EQ(token.alternatives.size(), 1u);
  EXPECT_EQ(to_oracle_form(*token.alternatives[0][0].nested), to_oracle_form(password_choices()));
}

TEST(OracleTest, RefusesLargeInputs) {
  std::vector<PolicyExpr> many;
  for (int n = 0; n < 17; ++n) many.push_back(a("A"));
  EXPECT_THROW(enumerate_oracle_form(all(many)), testing::OracleRefused);
}

TEST(NormalizeProperty, MatchesOracleOnRandomTrees) {
  testing::Rng rng(20261016);
  int checked = 0;
  for (int n = 0; n < 600; ++n) {
    PolicyExpr e = testing::random_policy(rng);
    testing::OracleForm expected;
    try {
      expected = enumerate_oracle_form(e);
    } catch (const testing::OracleRefused&) {
      continue;
    }
    ASSERT_EQ(to_oracle_form(normalize(e)), expected) << testing::describe(e);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(NormalizeProperty, IdempotentThroughDenormalize) {
  testing::Rng rng(7);
  for (int n = 0; n < 300; ++n) {
    NormalForm nf = normalize(testing::random_policy(rng));
    EXPECT_EQ(normalize(denormalize(nf)), nf);
  }
}

TEST(NormalizeProperty, AllIsBoundedByProductOfChildren) {
  testing::Rng rng(11);
  for (int n = 0; n < 300; ++n) {
    std::vector<PolicyExpr> children;
    std::size_t bound = 1;
    for (int c = 0; c < 3; ++c) {
      testing::PolicyShape shape;
      shape.maxDepth = 3;
      shape.maxReferences = 5;
      children.push_back(testing::random_policy(rng, shape));
      bound *= normalize(children.back()).alternatives.size();
    }
    EXPECT_LE(normalize(all(children)).alternatives.size(), bound);
  }
}

TEST(MergeTest, Examples) {
  PolicyExpr qexpr = exactly_one({a("A"), all({a("B"), a("C", true)})});
  EXPECT_EQ(normalize(merge(policy(), qexpr)), normalize(qexpr));
  EXPECT_EQ(normalize(merge(a("A"), a("B"))), make_normal_form({{i("A"), i("B")}}));
}

TEST(MergeTest, MatchesOracleOnRandomPairs) {
  testing::Rng rng(5);
  testing::PolicyShape shape;
  shape.maxReferences = 8;
  for (int n = 0; n < 300; ++n) {
    PolicyExpr p = testing::random_policy(rng, shape);
    PolicyExpr r = testing::random_policy(rng, shape);
    auto expected = testing::merge_oracle(enumerate_oracle_form(p), enumerate_oracle_form(r));
    EXPECT_EQ(to_oracle_form(normalize(merge(p, r))), expected);
  }
}

TEST(NormalFormsEqualTest, SetSemantics) {
  NormalForm p = normalize(username_token_policy());
  EXPECT_TRUE(normal_forms_equal(p, p));

  NormalForm ab{{{i("A"), i("B")}}};
  NormalForm ba{{{i("B"), i("A")}}};
  EXPECT_TRUE(normal_forms_equal(ab, ba));

  NormalForm nested = password_choices();
  NormalForm swapped = nested;
  std::swap(swapped.alternatives[0], swapped.alternatives[1]);
  NormalForm outer1{{{instance(sec("UsernameToken"), nested)}}};
  NormalForm outer2{{{AssertionInstance{sec("UsernameToken"), {},
                                         std::make_shared<const NormalForm>(swapped)}}}};
  EXPECT_TRUE(normal_forms_equal(outer1, outer2));
  EXPECT_FALSE(normal_forms_equal(ab, NormalForm{{{i("A")}}}));
}

}  // namespace
}  // namespace sempol
