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
#include "sempol/error.hpp"
#include "sempol/intersect.hpp"
#include "sempol/normalize.hpp"

namespace sempol {
namespace {

using testing::acme;
using testing::sec;

NormalForm password_choices() {
  return make_normal_form({{instance(sec("NoPassword")), instance(sec("WssUsernameToken10"))},
                           {instance(sec("HashPassword")), instance(sec("WssUsernameToken10"))}});
}

NormalForm hash_requirement() {
  return make_normal_form({{instance(sec("HashPassword")), instance(sec("WssUsernameToken10"))}});
}

AssertionDecl annotated(const std::string& name, std::vector<std::string> uris) {
  AssertionDecl d;
  d.name = name;
  d.annotation = SemanticAnnotation{std::move(uris), std::nullopt, std::nullopt};
  return d;
}

TEST(CompatibleTest, StrictIsQNameEquality) {
  Vocabulary none;
  EXPECT_TRUE(assertions_compatible(instance(sec("HashPassword")), instance(sec("HashPassword")),
                                    MatchMode::Strict, none));
  EXPECT_FALSE(assertions_compatible(instance(sec("NoPassword")), instance(sec("HashPassword")),
                                     MatchMode::Strict, none));
}

TEST(CompatibleTest, SemanticUsesSharedConcept) {
  QName other{"urn:other", "HashedPwd"};
  Vocabulary vocab{{sec("HashPassword"), annotated("HashPassword", {"http://example.org/sec-onto#HashedPassword"})},
                   {other, annotated("HashedPwd", {"http://example.org/sec-onto#HashedPassword"})},
                   {sec("NoPassword"), annotated("NoPassword", {"http://example.org/sec-onto#NoPassword"})}};
  EXPECT_TRUE(assertions_compatible(instance(sec("HashPassword")), instance(other),
                                    MatchMode::Semantic, vocab));
  EXPECT_FALSE(assertions_compatible(instance(sec("NoPassword")), instance(other),
                                     MatchMode::Semantic, vocab));
  EXPECT_FALSE(assertions_compatible(instance(sec("HashPassword")), instance(other),
                                     MatchMode::Strict, vocab));
}

TEST(CompatibleTest, ConceptUrisAreComparedAfterNormalization) {
  QName x{"urn:a", "X"};
  QName y{"urn:b", "Y"};
  Vocabulary vocab{{x, annotated("X", {"HTTP://Example.org/onto#%7eC"})},
                   {y, annotated("Y", {"http://example.org/onto#~C"})}};
  EXPECT_TRUE(assertions_compatible(instance(x), instance(y), MatchMode::Semantic, vocab));
}

TEST(CompatibleTest, SemanticNeedsDeclarations) {
  Vocabulary none;
  EXPECT_THROW(assertions_compatible(instance(sec("A")), instance(sec("A")), MatchMode::Semantic, none),
               MatchError);
}

TEST(CompatibleTest, NestedPresenceMustAgree) {
  Vocabulary none;
  EXPECT_FALSE(assertions_compatible(instance(sec("UsernameToken"), password_choices()),
                                     instance(sec("UsernameToken")), MatchMode::Strict, none));
  EXPECT_TRUE(assertions_compatible(instance(sec("UsernameToken"), password_choices()),
                                    instance(sec("UsernameToken"), hash_requirement()),
                                    MatchMode::Strict, none));
  NormalForm noPassword = make_normal_form({{instance(sec("NoPassword"))}});
  EXPECT_FALSE(assertions_compatible(instance(sec("UsernameToken"), hash_requirement()),
                                     instance(sec("UsernameToken"), noPassword), MatchMode::Strict,
                                     none));
}

TEST(IntersectTest, PasswordChoicesFlatExample) {
  NormalForm result = intersect(password_choices(), hash_requirement(), MatchMode::Strict, {});
  EXPECT_EQ(result, hash_requirement());
}

TEST(IntersectTest, PasswordChoicesNestedExample) {
  NormalForm provider{{{instance(sec("UsernameToken"), password_choices())}}};
  NormalForm requester{{{instance(sec("UsernameToken"), hash_requirement())}}};
  NormalForm result = intersect(provider, requester, MatchMode::Strict, {});
  ASSERT_EQ(result.alternatives.size(), 1u);
  ASSERT_EQ(result.alternatives[0].size(), 1u);
  ASSERT_TRUE(result.alternatives[0][0].nested);
  EXPECT_EQ(*result.alternatives[0][0].nested, hash_requirement());
}

TEST(IntersectTest, EmptyCases) {
  NormalForm p = password_choices();
  NormalForm none;
  NormalForm emptyAlt{{{}}};
  EXPECT_TRUE(intersect(p, none, MatchMode::Strict, {}).unsatisfiable());
  EXPECT_TRUE(intersect(none, p, MatchMode::Strict, {}).unsatisfiable());
  EXPECT_TRUE(intersect(p, emptyAlt, MatchMode::Strict, {}).unsatisfiable());
  EXPECT_EQ(intersect(emptyAlt, emptyAlt, MatchMode::Strict, {}), emptyAlt);
}

TEST(IntersectTest, SemanticAliasFixture) {
  Vocabulary vocab = testing::fixture_vocabulary();
  NormalForm provider{{{instance(sec("UsernameToken"), password_choices())}}};
  NormalForm alias{{{instance(acme("UserToken"),
                              make_normal_form({{instance(acme("HashedPwd")),
                                                 instance(acme("UsernameToken10"))}}))}}};
  EXPECT_TRUE(intersect(provider, alias, MatchMode::Strict, vocab).unsatisfiable());

  IntersectionReport report = intersect_explained(provider, alias, MatchMode::Semantic, vocab);
  ASSERT_EQ(report.result.alternatives.size(), 1u);
  ASSERT_EQ(report.matches.size(), 1u);
  ASSERT_EQ(report.matches[0].instances.size(), 1u);
  const InstanceMatch& top = report.matches[0].instances[0];
  EXPECT_EQ(top.left, sec("UsernameToken"));
  EXPECT_EQ(top.right, acme("UserToken"));
  EXPECT_EQ(top.sharedConcept, "http://example.org/sec-onto#UsernameToken");
  ASSERT_EQ(top.nested.size(), 1u);
  EXPECT_EQ(top.nested[0].left, 0u);  // {HashPassword, WssUsernameToken10} sorts first
  EXPECT_EQ(top.nested[0].instances.size(), 2u);
}

TEST(IntersectTest, EmptyAlternativeOnlyMatchesEmpty) {
  NormalForm p{{{}, {instance(sec("HashPassword"))}}};
  NormalForm r{{{}}};
  EXPECT_EQ(intersect(p, r, MatchMode::Strict, {}), r);
}

testing::FormShape fixture_shape() {
  testing::FormShape shape;
  shape.names = {sec("UsernameToken"), sec("NoPassword"), sec("HashPassword"),
                 sec("WssUsernameToken10"), acme("UserToken"), acme("HashedPwd"),
                 acme("UsernameToken10")};
  shape.maxInstances = 3;
  return shape;
}

TEST(IntersectProperty, AgreesWithBruteForceOracle) {
  Vocabulary vocab = testing::fixture_vocabulary();
  auto concepts = testing::concept_table(vocab);
  testing::Rng rng(99);
  for (int n = 0; n < 400; ++n) {
    NormalForm p = testing::random_normal_form(rng, fixture_shape());
    NormalForm r = testing::random_normal_form(rng, fixture_shape());
    for (MatchMode mode : {MatchMode::Strict, MatchMode::Semantic}) {
      auto expected = testing::intersect_oracle(testing::to_oracle_form(p),
                                                testing::to_oracle_form(r), mode, concepts);
      ASSERT_EQ(testing::to_oracle_form(intersect(p, r, mode, vocab)), expected)
          << testing::describe(p) << " x " << testing::describe(r) << " " << to_string(mode);
    }
  }
}

TEST(IntersectProperty, CommutativeAndSound) {
  Vocabulary vocab = testing::fixture_vocabulary();
  testing::Rng rng(1234);
  for (int n = 0; n < 400; ++n) {
    NormalForm p = testing::random_normal_form(rng, fixture_shape());
    NormalForm r = testing::random_normal_form(rng, fixture_shape());
    for (MatchMode mode : {MatchMode::Strict, MatchMode::Semantic}) {
      NormalForm pr = intersect(p, r, mode, vocab);
      EXPECT_TRUE(normal_forms_equal(pr, intersect(r, p, mode, vocab)));
      for (const auto& alt : pr.alternatives) {
        bool fromP = false;
        bool fromR = false;
        for (const auto& x : p.alternatives) fromP = fromP || testing::covers(alt, x);
        for (const auto& y : r.alternatives) fromR = fromR || testing::covers(alt, y);
        EXPECT_TRUE(fromP && fromR) << testing::describe(pr);
      }
    }
  }
}

TEST(IntersectProperty, StrictImpliesSemantic) {
  Vocabulary vocab = testing::fixture_vocabulary();
  testing::Rng rng(4321);
  for (int n = 0; n < 400; ++n) {
    NormalForm p = testing::random_normal_form(rng, fixture_shape());
    NormalForm r = testing::random_normal_form(rng, fixture_shape());
    IntersectionReport strict = intersect_explained(p, r, MatchMode::Strict, vocab);
    IntersectionReport semantic = intersect_explained(p, r, MatchMode::Semantic, vocab);
    for (const auto& m : strict.matches) {
      bool found = false;
      for (const auto& s : semantic.matches) found = found || (s.left == m.left && s.right == m.right);
      EXPECT_TRUE(found);
    }
  }
}

}  // namespace
}  // namespace sempol
