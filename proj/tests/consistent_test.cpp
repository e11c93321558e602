// Copyright 2026 The consmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <gtest/gtest.h>

#include "consmap/consistent/consistent_map.hpp"
#include "consmap/numberfields/default_registry.hpp"

namespace consmap {
namespace {

class ConsistentTest : public ::testing::Test {
 protected:
  void SetUp() override { d = PopulateDefaultRegistry(reg); }
  static PlaceKey Q(std::uint64_t p) { return {FieldRegistry::kRationals, PlaceKind::kFinite, p, 0}; }
  static PlaceKey At(FieldId k, std::uint64_t p, int i) { return {k, PlaceKind::kFinite, p, i}; }

  FieldRegistry reg;
  DefaultFields d;
  PlaceSet all = PlaceSet::All();
};

TEST_F(ConsistentTest, EvaluateExamples) {
  EXPECT_EQ(ConsistentMap::Lambda(all).Evaluate(reg, At(d.gaussian, 5, 0)), ExactScalar(MakeRational(1, 2)));
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(2), At(d.gaussian, 2, 0)}, ExactScalar(1));
  EXPECT_EQ(dirac.Evaluate(reg, Q(2)), ExactScalar(1));
  EXPECT_EQ(dirac.Evaluate(reg, Q(3)), ExactScalar(0));
  ConsistentMap density = ConsistentMap::Density(Indicator(reg, all, Q(5)));
  EXPECT_EQ(density.Evaluate(reg, At(d.gaussian, 5, 1)), ExactScalar(MakeRational(1, 2)));
  EXPECT_EQ(density.Evaluate(reg, At(d.gaussian, 2, 0)), ExactScalar(0));
}

TEST_F(ConsistentTest, DiracBelowAndBeyondTheChain) {
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 1)}, ExactScalar(3));
  EXPECT_EQ(dirac.Evaluate(reg, At(d.gaussian, 5, 1)), ExactScalar(3));
  EXPECT_EQ(dirac.Evaluate(reg, At(d.gaussian, 5, 0)), ExactScalar(0));
  // Over each field the values above 5 must add up to the weight (branch law against Q).
  for (FieldId k : {d.sqrt2, d.sqrt5, d.cbrt2, d.zeta8, d.sqrt2_sqrt3}) {
    ExactScalar sum;
    for (const auto& w : reg.PlacesAbove(k, 5)) sum += dirac.Evaluate(reg, w.key);
    EXPECT_EQ(sum, ExactScalar(3)) << k;
  }
  // 5 is ramified in Q(sqrt5): the single place carries everything.
  EXPECT_EQ(dirac.Evaluate(reg, At(d.sqrt5, 5, 0)), ExactScalar(3));
  EXPECT_THROW(ConsistentMap::Dirac(reg, all, {Q(3), At(d.gaussian, 5, 0)}, ExactScalar(1)), Error);
}

TEST_F(ConsistentTest, VerifyConsistencyOfConstructors) {
  std::vector<ConsistentMap> maps = {
      ConsistentMap::Lambda(all),
      ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 0)}, ExactScalar(1)),
      ConsistentMap::Dirac(reg, all, {Q(2), At(d.sqrt2, 2, 0), At(d.zeta8, 2, 0)}, ExactScalar(MakeRational(2, 3))),
      ConsistentMap::Density(Indicator(reg, all, At(d.sqrt2, 7, 0), ExactScalar(4))),
  };
  maps.push_back(ConsistentMap::Combo({{Rational(2), maps[0]}, {Rational(-1), maps[1]}, {MakeRational(1, 3), maps[3]}}));
  for (const auto& c : maps) {
    ConsistencyReport r = VerifyConsistency(c, reg);
    EXPECT_TRUE(r.ok()) << c.Describe() << " " << r.violations.size();
    EXPECT_FALSE(r.checks.empty());
  }
}

TEST_F(ConsistentTest, ConstantOneIsNotConsistent) {
  ConsistencyReport r = VerifyConsistency(ConsistentMap::Constant(all, ExactScalar(1)), reg);
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    if (v.source == d.q && v.target == d.gaussian && v.place == Q(5)) {
      found = true;
      EXPECT_EQ(v.below, ExactScalar(1));
      EXPECT_EQ(v.above, ExactScalar(2));
    }
  EXPECT_TRUE(found);
}

TEST_F(ConsistentTest, BoundsAndSpan) {
  EXPECT_DOUBLE_EQ(IsBounded(ConsistentMap::Lambda(all), reg).bound, 1.0);
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 0)}, ExactScalar(1));
  EXPECT_DOUBLE_EQ(IsBounded(dirac, reg).bound, 2.0);
  LCFunction g(all, d.gaussian);
  g.Set(At(d.gaussian, 5, 0), ExactScalar(-3));
  g.Set(At(d.gaussian, 2, 0), ExactScalar(MakeRational(1, 2)));
  EXPECT_DOUBLE_EQ(IsBounded(ConsistentMap::Density(g), reg).bound, 3.0);

  SpanReport three = IsInSpanLambda(Rational(3) * ConsistentMap::Lambda(all), reg);
  EXPECT_TRUE(three.in_span);
  EXPECT_EQ(three.ratio, ExactScalar(3));
  EXPECT_FALSE(IsInSpanLambda(dirac, reg).in_span);
  // Constant 2 supported on the place over 5 only.
  PlaceSet only5 = PlaceSet::Finite({5});
  LCFunction two = Indicator(reg, all, Q(5), ExactScalar(2));
  EXPECT_FALSE(IsInSpanLambda(ConsistentMap::Density(two), reg).in_span);
  EXPECT_TRUE(IsInSpanLambda(ConsistentMap::Density(Indicator(reg, only5, Q(5), ExactScalar(2))), reg).in_span);
}

TEST_F(ConsistentTest, RestrictAndExtend) {
  PlaceSet s5 = PlaceSet::Finite({5});
  ConsistentMap lam = ConsistentMap::Lambda(s5);
  ConsistentMap r = RestrictMap(reg, lam, d.gaussian);
  EXPECT_EQ(r.Evaluate(reg, At(d.gaussian, 5, 0)), ExactScalar(MakeRational(1, 2)));
  EXPECT_EQ(r.Evaluate(reg, At(d.gaussian, 5, 1)), ExactScalar(MakeRational(1, 2)));
  EXPECT_THROW(r.Evaluate(reg, Q(5)), Error);
  EXPECT_THROW(r.Evaluate(reg, At(d.sqrt5, 5, 0)), Error);
  ConsistentMap back = ExtendMap(r, s5);
  for (const auto& v : RegisteredPlaces(reg, s5)) EXPECT_EQ(back.Evaluate(reg, v), lam.Evaluate(reg, v)) << v.Id();

  // A Dirac indexed over Q(i): the extension puts the full weight on (Q, 5).
  ConsistentMap over_i = RestrictMap(reg, ConsistentMap::Dirac(reg, s5, {At(d.gaussian, 5, 0)}, ExactScalar(1)), d.gaussian);
  ConsistentMap ext = ExtendMap(over_i, s5);
  EXPECT_EQ(ext.Evaluate(reg, Q(5)), ExactScalar(1));
  EXPECT_EQ(ext.Evaluate(reg, At(d.sqrt5, 5, 0)), ExactScalar(1));
  EXPECT_TRUE(VerifyConsistency(ext, reg).ok());

  ConsistentMap zero = ConsistentMap::Constant(s5, ExactScalar(0));
  EXPECT_EQ(RestrictMap(reg, zero, d.gaussian).Evaluate(reg, At(d.zeta8, 5, 1)), ExactScalar(0));
  EXPECT_EQ(ExtendMap(lam, s5).Evaluate(reg, Q(5)), ExactScalar(1));

  // Restriction to a subset of the places of F cannot be extended.
  ConsistentMap part = RestrictMap(reg, lam, d.gaussian, std::set<PlaceKey>{At(d.gaussian, 5, 0)});
  EXPECT_THROW(part.Evaluate(reg, At(d.gaussian, 5, 1)), Error);
  EXPECT_THROW(ExtendMap(part, s5), Error);
}

TEST_F(ConsistentTest, LinearityAndLambdaLevels) {
  ConsistentMap a = ConsistentMap::Lambda(all);
  ConsistentMap b = ConsistentMap::Dirac(reg, all, {Q(3), At(d.sqrt2_sqrt3, 3, 0)}, ExactScalar(5));
  ConsistentMap c = ConsistentMap::Combo({{MakeRational(2, 7), a}, {Rational(-3), b}});
  for (const auto& v : RegisteredPlaces(reg, all)) {
    EXPECT_EQ(c.Evaluate(reg, v), a.Evaluate(reg, v).Scaled(MakeRational(2, 7)) + b.Evaluate(reg, v).Scaled(-3));
  }
  for (FieldId k : reg.FieldIds())
    for (std::uint64_t p : DefaultPrimeWindow()) {
      ExactScalar sum;
      for (const auto& v : reg.PlacesAbove(k, p)) sum += a.Evaluate(reg, v.key);
      EXPECT_EQ(sum, ExactScalar(1));
    }
}

}  // namespace
}  // namespace consmap
