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

#include "consmap/dual/dual.hpp"
#include "consmap/numberfields/default_registry.hpp"

namespace consmap {
namespace {

class DualTest : public ::testing::Test {
 protected:
  void SetUp() override { d = PopulateDefaultRegistry(reg); }
  static PlaceKey Q(std::uint64_t p) { return {FieldRegistry::kRationals, PlaceKind::kFinite, p, 0}; }
  static PlaceKey At(FieldId k, std::uint64_t p, int i) { return {k, PlaceKind::kFinite, p, i}; }

  LCFunction Random(std::mt19937_64& rng, const PlaceSet& s, FieldId k) {
    LCFunction f(s, k);
    for (const auto& v : reg.PlacesOverSet(k, s, {2, 3, 5, 7})) {
      if (rng() % 2) continue;
      f.Set(v, ExactScalar(MakeRational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1)));
    }
    return f;
  }

  FieldRegistry reg;
  DefaultFields d;
  PlaceSet all = PlaceSet::All();
};

TEST_F(DualTest, PhiExamples) {
  std::mt19937_64 rng(3);
  ConsistentMap lam = ConsistentMap::Lambda(all);
  for (FieldId k : reg.FieldIds()) {
    LCFunction f = Random(rng, all, k);
    EXPECT_EQ(Phi(reg, lam, f), Integral(reg, f));
  }
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 1)}, ExactScalar(1));
  EXPECT_EQ(Phi(reg, dirac, Indicator(reg, all, Q(5))), ExactScalar(1));
  for (const auto& v : RegisteredPlaces(reg, all)) EXPECT_EQ(Phi(reg, dirac, Indicator(reg, all, v)), dirac.Evaluate(reg, v));
  EXPECT_THROW(Phi(reg, lam, Indicator(reg, PlaceSet::Finite({5}), Q(5))), Error);
}

TEST_F(DualTest, PhiIndependence) {
  std::mt19937_64 rng(5);
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(2), At(d.sqrt2, 2, 0)}, ExactScalar(1));
  ConsistentMap zero = ConsistentMap::Constant(all, ExactScalar(0));
  for (const auto& emb : reg.AllEmbeddings()) {
    LCFunction f = Random(rng, all, emb.source);
    EXPECT_TRUE(PhiIndependence(reg, dirac, f, emb));
    EXPECT_TRUE(PhiIndependence(reg, zero, f, emb));
  }
  ConsistentMap one = ConsistentMap::Constant(all, ExactScalar(1));
  EXPECT_FALSE(PhiIndependence(reg, one, Indicator(reg, all, Q(5)), reg.RequireEmbedding(d.q, d.gaussian)));
}

TEST_F(DualTest, FunctionalToMapRoundTrips) {
  Reconstruction r = FunctionalToMap(reg, IntegrationFunctional(), all);
  EXPECT_TRUE(r.report.ok());
  for (const auto& v : RegisteredPlaces(reg, all)) EXPECT_EQ(r.map.Evaluate(reg, v), ExactScalar(reg.Lambda(v)));

  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 0), At(d.zeta8, 5, 0)}, ExactScalar(2));
  std::vector<PlaceKey> places = RegisteredPlaces(reg, all);
  Reconstruction rd = FunctionalToMap(reg, PhiFunctional(dirac), all);
  EXPECT_TRUE(rd.report.ok());
  for (const auto& v : places) EXPECT_EQ(rd.map.Evaluate(reg, v), dirac.Evaluate(reg, v));

  // Point evaluation at a place of Q(zeta8) above 17 would be outside the window; use 7.
  Reconstruction rp = FunctionalToMap(reg, PointEvaluation(At(d.zeta8, 7, 0)), all);
  ASSERT_FALSE(rp.report.ok());
  bool below_split = false;
  for (const auto& v : rp.report.violations)
    if (v.target == d.zeta8 && v.source == d.sqrt2) below_split = true;
  EXPECT_TRUE(below_split);
}

TEST_F(DualTest, PsiExamples) {
  ConsistentMap lam = ConsistentMap::Lambda(all);
  std::vector<LCFunction> family = L0SpanningFamily(reg, all);
  ASSERT_FALSE(family.empty());
  for (const auto& f : family) EXPECT_TRUE(Psi(reg, lam, f).IsZero());

  ConsistentMap d2 = ConsistentMap::Dirac(reg, all, {Q(2)}, ExactScalar(1));
  ConsistentMap d3 = ConsistentMap::Dirac(reg, all, {Q(3)}, ExactScalar(1));
  LCFunction diff = Subtract(reg, Indicator(reg, all, Q(2)), Indicator(reg, all, Q(3)));
  EXPECT_EQ(Psi(reg, ConsistentMap::Combo({{Rational(1), d2}, {Rational(-1), d3}}), diff), ExactScalar(2));
  for (const auto& f : {diff, family[3], family.back()}) {
    ConsistentMap shifted = ConsistentMap::Combo({{Rational(1), d2}, {MakeRational(-5, 3), lam}});
    EXPECT_EQ(Psi(reg, shifted, f), Psi(reg, d2, f));
  }
  EXPECT_THROW(Psi(reg, lam, Indicator(reg, all, Q(2))), Error);
}

TEST_F(DualTest, ContinuityExamples) {
  std::mt19937_64 rng(9);
  std::vector<LCFunction> samples;
  for (int i = 0; i < 40; ++i) samples.push_back(Random(rng, all, reg.FieldIds()[rng() % reg.size()]));
  ContinuityReport lam = ContinuityCheck(ConsistentMap::Lambda(all), reg, samples);
  EXPECT_TRUE(lam.ok());
  EXPECT_DOUBLE_EQ(lam.bound, 1.0);
  ConsistentMap dirac = ConsistentMap::Dirac(reg, all, {Q(5), At(d.gaussian, 5, 0)}, ExactScalar(1));
  LCFunction witness = Indicator(reg, all, At(d.gaussian, 5, 0));
  ContinuityReport dr = ContinuityCheck(dirac, reg, {witness});
  EXPECT_TRUE(dr.ok());
  EXPECT_DOUBLE_EQ(dr.bound, 2.0);
  EXPECT_DOUBLE_EQ(dr.worst_ratio, 2.0);
  ContinuityReport zr = ContinuityCheck(ConsistentMap::Constant(all, ExactScalar(0)), reg, samples);
  EXPECT_TRUE(zr.ok());
  EXPECT_EQ(zr.bound, 0.0);
}

TEST_F(DualTest, RationalityExamples) {
  PlaceSet fin = PlaceSet::NonArchimedean();
  EXPECT_FALSE(RationalityCriterion(ConsistentMap::Lambda(fin), reg).ok());
  EXPECT_TRUE(RationalityCriterion(ConsistentMap::LambdaOverLog(fin), reg).ok());
  EXPECT_TRUE(RationalityCriterion(ConsistentMap::Constant(fin, ExactScalar(0)), reg).ok());
  EXPECT_THROW(RationalityCriterion(ConsistentMap::Lambda(all), reg), Error);
}

TEST_F(DualTest, FunctionalsAreLinearOnSamples) {
  std::mt19937_64 rng(13);
  Functional fn = PhiFunctional(ConsistentMap::Dirac(reg, all, {Q(7), At(d.sqrt2, 7, 1)}, ExactScalar(1)));
  for (int i = 0; i < 10; ++i) {
    LCFunction f = Random(rng, all, d.sqrt2);
    LCFunction g = Random(rng, all, d.gaussian);
    EXPECT_TRUE(LinearOn(reg, fn, f, g, MakeRational(3, 2), Rational(-2)));
    EXPECT_TRUE(LinearOn(reg, IntegrationFunctional(), f, g, Rational(5), MakeRational(1, 7)));
  }
}

}  // namespace
}  // namespace consmap
