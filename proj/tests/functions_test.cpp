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

#include <random>

#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/default_registry.hpp"

namespace consmap {
namespace {

class FunctionsTest : public ::testing::Test {
 protected:
  void SetUp() override { d = PopulateDefaultRegistry(reg); }
  PlaceKey Q(std::uint64_t p) const { return {FieldRegistry::kRationals, PlaceKind::kFinite, p, 0}; }
  PlaceKey At(FieldId k, std::uint64_t p, int i) const { return {k, PlaceKind::kFinite, p, i}; }

  FieldRegistry reg;
  DefaultFields d;
  PlaceSet all = PlaceSet::All();
};

TEST_F(FunctionsTest, RefineIndicatorToGaussian) {
  LCFunction f = Indicator(reg, all, Q(5));
  LCFunction g = RefineTo(reg, f, d.gaussian);
  EXPECT_EQ(g.base_field(), d.gaussian);
  ASSERT_EQ(g.values().size(), 2u);
  EXPECT_EQ(g.Value(At(d.gaussian, 5, 0)), ExactScalar(1));
  EXPECT_EQ(g.Value(At(d.gaussian, 5, 1)), ExactScalar(1));
  EXPECT_TRUE(RefineTo(reg, LCFunction(all, d.q), d.zeta8).IsZero());
  LCFunction h = Indicator(reg, all, At(d.gaussian, 5, 1), ExactScalar(7));
  EXPECT_EQ(Refine(reg, h, reg.Identity(d.gaussian)), h);
}

TEST_F(FunctionsTest, AddMergesOnTheCompositum) {
  LCFunction f = Indicator(reg, all, Q(5));
  EXPECT_EQ(Add(reg, f, LCFunction(all, d.q)), f);
  EXPECT_TRUE(Add(reg, f, f.Scaled(ExactScalar(-1))).IsZero());
  LCFunction g = Indicator(reg, all, At(d.gaussian, 5, 0));
  LCFunction s = Add(reg, Indicator(reg, all, Q(2)), g);
  // Oracle: refine by hand, then merge.
  LCFunction expect(all, d.gaussian);
  for (const auto& w : reg.PlacesAbove(d.gaussian, 2)) expect.Set(w.key, ExactScalar(1));
  expect.Set(At(d.gaussian, 5, 0), ExactScalar(1));
  EXPECT_EQ(s, expect);
  EXPECT_EQ(s.values().size(), 2u);
}

TEST_F(FunctionsTest, IntegralExamples) {
  for (std::uint64_t p : {2, 3, 5, 7}) EXPECT_EQ(Integral(reg, Indicator(reg, all, Q(p))), ExactScalar(1));
  EXPECT_EQ(Integral(reg, Indicator(reg, all, At(d.gaussian, 5, 0))), ExactScalar(MakeRational(1, 2)));
  // h = n/[K_u:Q_p] above u and -n/[K_v:Q_q] above v.
  for (FieldId k : {d.gaussian, d.cbrt2, d.sqrt2_sqrt3}) {
    const auto& above2 = reg.PlacesAbove(k, 2);
    const auto& above3 = reg.PlacesAbove(k, 3);
    int n = reg.Field(k).degree();
    LCFunction h(all, k);
    h.Set(above2[0].key, ExactScalar(MakeRational(n, above2[0].local_degree())));
    h.Set(above3.back().key, ExactScalar(Rational(-MakeRational(n, above3.back().local_degree()))));
    EXPECT_TRUE(Integral(reg, h).IsZero()) << k;
  }
}

TEST_F(FunctionsTest, L1NormExamples) {
  EXPECT_EQ(L1Norm(reg, Indicator(reg, all, Q(2))), ExactScalar(1));
  EXPECT_EQ(L1Norm(reg, RefineTo(reg, Indicator(reg, all, Q(2)), d.gaussian)), ExactScalar(1));
  LCFunction f(all, d.gaussian);
  f.Set(At(d.gaussian, 5, 0), ExactScalar(1));
  f.Set(At(d.gaussian, 5, 1), ExactScalar(-1));
  EXPECT_EQ(L1Norm(reg, f), ExactScalar(1));
  LCFunction g(all, d.q);
  g.Set(Q(2), ExactScalar::Log(2, 1) - ExactScalar::Log(3, MakeRational(1, 2)));  // log 2 - log sqrt 3 > 0
  EXPECT_EQ(L1Norm(reg, g), g.Value(Q(2)));
  g.Set(Q(2), ExactScalar::Log(2, 1) + ExactScalar::Residual(-std::log(2.0)));
  EXPECT_THROW(L1Norm(reg, g), Error);
}

TEST_F(FunctionsTest, L0Membership) {
  LCFunction diff = Subtract(reg, Indicator(reg, all, Q(2)), Indicator(reg, all, Q(3)));
  EXPECT_TRUE(IsInL0(reg, diff));
  EXPECT_FALSE(IsInL0(reg, Indicator(reg, all, Q(2))));
  LCFunction f2(all, d.q);
  f2.Set(Q(2), ExactScalar::Log(2, -1));
  f2.Set({d.q, PlaceKind::kReal, 0, 0}, ExactScalar::Log(2, 1));
  EXPECT_TRUE(IsInL0(reg, f2));
}

TEST_F(FunctionsTest, ProjectionExamples) {
  EXPECT_TRUE(ProjectToL0(reg, Indicator(reg, all, Q(2)), 2).IsZero());
  LCFunction g = Indicator(reg, all, Q(3));
  LCFunction h = ProjectToL0(reg, g, 2);
  EXPECT_EQ(h.Value(Q(3)), ExactScalar(1));
  EXPECT_EQ(h.Value(Q(2)), ExactScalar(-1));
  EXPECT_EQ(L1Norm(reg, h), L1Norm(reg, g).Scaled(2));
  LCFunction diff = Subtract(reg, Indicator(reg, all, Q(2)), Indicator(reg, all, Q(3)));
  EXPECT_EQ(ProjectToL0(reg, diff, 5), diff);
  EXPECT_THROW(ProjectToL0(reg, Indicator(reg, PlaceSet::Finite({3}), Q(3)), 2), Error);
}

// Random functions with small rational values on the places over {2,3,5,7} plus infinity.
LCFunction RandomFunction(FieldRegistry& reg, std::mt19937_64& rng, const PlaceSet& s, FieldId k) {
  LCFunction f(s, k);
  for (const auto& v : reg.PlacesOverSet(k, s, {2, 3, 5, 7})) {
    if (rng() % 3 == 0) continue;
    long num = static_cast<long>(rng() % 11) - 5;
    long den = static_cast<long>(rng() % 4) + 1;
    f.Set(v, ExactScalar(MakeRational(num, den)));
  }
  return f;
}

TEST_F(FunctionsTest, RefinementInvarianceAndDirectSum) {
  std::mt19937_64 rng(7);
  for (const auto& emb : reg.AllEmbeddings()) {
    for (int t = 0; t < 5; ++t) {
      LCFunction f = RandomFunction(reg, rng, all, emb.source);
      LCFunction g = Refine(reg, f, emb);
      EXPECT_EQ(Integral(reg, g), Integral(reg, f));
      EXPECT_EQ(L1Norm(reg, g), L1Norm(reg, f));
      for (std::uint64_t p : {2, 5}) {
        LCFunction h = ProjectToL0(reg, f, p);
        EXPECT_TRUE(Integral(reg, h).IsZero());
        EXPECT_LE(L1Norm(reg, h).rational(), L1Norm(reg, f).rational() * 2);
        LCFunction back = Add(reg, h, Indicator(reg, all, Q(p), Integral(reg, f)));
        EXPECT_TRUE(Subtract(reg, back, f).IsZero());
      }
    }
  }
}

TEST_F(FunctionsTest, AddCommutesUpToRefinement) {
  std::mt19937_64 rng(11);
  std::vector<FieldId> ks = {d.q, d.gaussian, d.sqrt2, d.zeta8};
  for (int t = 0; t < 10; ++t) {
    LCFunction a = RandomFunction(reg, rng, all, ks[rng() % ks.size()]);
    LCFunction b = RandomFunction(reg, rng, all, ks[rng() % ks.size()]);
    LCFunction c = RandomFunction(reg, rng, all, ks[rng() % ks.size()]);
    EXPECT_TRUE(Subtract(reg, Add(reg, a, b), Add(reg, b, a)).IsZero());
    EXPECT_TRUE(Subtract(reg, Add(reg, Add(reg, a, b), c), Add(reg, a, Add(reg, b, c))).IsZero());
  }
}

}  // namespace
}  // namespace consmap
