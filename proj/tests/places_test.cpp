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

#include <algorithm>
#include <map>
#include <random>

#include "consmap/numberfields/default_registry.hpp"
#include "consmap/places/places.hpp"
#include "oracles.hpp"

namespace consmap {
namespace {

using oracle::BruteForceFactorDegrees;

using EF = std::pair<int, int>;

std::vector<EF> Multiset(const std::vector<Place>& places) {
  std::vector<EF> out;
  for (const auto& pl : places) out.emplace_back(pl.e, pl.f);
  std::sort(out.begin(), out.end());
  return out;
}

class DefaultRegistryTest : public ::testing::Test {
 protected:
  void SetUp() override { d = PopulateDefaultRegistry(reg); }
  FieldRegistry reg;
  DefaultFields d;
};

TEST_F(DefaultRegistryTest, GaussianExamples) {
  auto five = PlacesAbove(reg, d.gaussian, 5);
  ASSERT_EQ(five.size(), 2u);
  for (const auto& pl : five) {
    EXPECT_EQ(pl.e, 1);
    EXPECT_EQ(pl.f, 1);
    EXPECT_EQ(pl.local_degree(), 1);
    EXPECT_EQ(LambdaValue(pl), Rational(1, 2));
  }
  auto two = PlacesAbove(reg, d.gaussian, 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(EF(two[0].e, two[0].f), EF(2, 1));
  EXPECT_EQ(LambdaValue(two[0]), 1);
  auto three = PlacesAbove(reg, d.gaussian, 3);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(EF(three[0].e, three[0].f), EF(1, 2));
  EXPECT_EQ(LambdaValue(PlacesAbove(reg, d.q, 7)[0]), 1);
}

TEST_F(DefaultRegistryTest, SplittingAgainstOracles) {
  // Hand-verified table for primes dividing the polynomial discriminant.
  std::map<std::pair<FieldId, long>, std::vector<EF>> ramified{
      {{d.gaussian, 2}, {{2, 1}}},  {{d.sqrt2, 2}, {{2, 1}}},      {{d.sqrt5, 5}, {{2, 1}}},
      {{d.sqrt5, 2}, {{1, 2}}},     {{d.cbrt2, 2}, {{3, 1}}},      {{d.cbrt2, 3}, {{3, 1}}},
      {{d.sqrt2_sqrt3, 2}, {{4, 1}}}, {{d.sqrt2_sqrt3, 3}, {{2, 2}}}, {{d.zeta8, 2}, {{4, 1}}},
  };
  for (FieldId k : reg.FieldIds()) {
    const NumberField& f = reg.Field(k);
    Rational disc = f.Discriminant();
    for (long p : {2, 3, 5, 7, 11, 13}) {
      const auto& places = PlacesAbove(reg, k, static_cast<std::uint64_t>(p));
      EXPECT_EQ(LocalDegreeSum(reg, k, static_cast<std::uint64_t>(p)), f.degree());
      std::vector<EF> expected;
      if (disc != 0 && Valuation(disc, BigInt(p)) > 0) {
        auto it = ramified.find({k, p});
        ASSERT_NE(it, ramified.end()) << f.Name() << " p=" << p;
        expected = it->second;
      } else {
        for (int deg : BruteForceFactorDegrees(f.min_poly(), p)) expected.emplace_back(1, deg);
        std::sort(expected.begin(), expected.end());
      }
      EXPECT_EQ(Multiset(places), expected) << f.Name() << " p=" << p;
    }
  }
  // The non-monogenic prime takes the order-enlargement path.
  EXPECT_FALSE(reg.UsedDedekindPath(d.sqrt5, 2));
  EXPECT_TRUE(reg.UsedDedekindPath(d.gaussian, 2));
}

// ord_w(a) from the resultant of the local factor with a, independent of the ideal machinery.
Rational ResultantOrd(const NumberField& k, const Place& w, const QPoly& a) {
  // a in powers of theta_int = s * theta.
  std::vector<Rational> c;
  BigInt sp = 1;
  for (int i = 0; i <= a.degree(); ++i) {
    c.push_back(a.coeff(i) / Rational(sp));
    sp *= k.scale();
  }
  QPoly ai(c);
  BigInt den = ai.DenominatorLcm();
  QPoly fw = zpoly::ToQ(w.handle.coefficients);
  Rational res = Resultant(fw, ai.Scaled(Rational(den)));
  BigInt p = FromU64(w.prime());
  long v = Valuation(res, p);
  EXPECT_LT(v, static_cast<long>(w.handle.precision));
  return MakeRational(v, fw.degree()) - Valuation(den, p);
}

TEST_F(DefaultRegistryTest, HandlesAndValuations) {
  std::mt19937_64 rng(11);
  FieldId extra = reg.AddField(QPoly::Parse("x^4 - 2*x^2 + 9"));  // sqrt(2) + i... biquadratic, index at 2 and 3
  for (FieldId k : reg.FieldIds()) {
    const NumberField& f = reg.Field(k);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      const auto& places = PlacesAbove(reg, k, p);
      BigInt pn = Pow(FromU64(p), places[0].handle.precision);
      ZPoly prod{1};
      for (const auto& w : places) {
        EXPECT_TRUE(w.handle.certified);
        EXPECT_EQ(static_cast<int>(w.handle.coefficients.size()) - 1, w.local_degree());
        prod = zpoly::MulMod(prod, w.handle.coefficients, pn);
      }
      ZPoly fz;
      for (const auto& c : f.integral_poly().coeffs()) fz.push_back(BigInt(c));
      EXPECT_EQ(prod, zpoly::Reduce(fz, pn));
      for (int t = 0; t < 8; ++t) {
        std::vector<Rational> c;
        for (int i = 0; i < f.degree(); ++i) c.push_back(MakeRational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 4) + 1));
        QPoly a(c);
        if (f.Reduce(a).IsZero()) continue;
        for (const auto& w : places) EXPECT_EQ(reg.Ord(w.key, a), ResultantOrd(f, w, a)) << f.Name() << " p=" << p << " a=" << a.ToString();
      }
      // v_P(p) = e for every prime above p.
      for (const auto& w : places) EXPECT_EQ(reg.Ord(w.key, QPoly::Constant(FromU64(p))), 1);
    }
  }
  (void)extra;
}

TEST_F(DefaultRegistryTest, ValuationExamples) {
  auto two = PlacesAbove(reg, d.gaussian, 2);
  EXPECT_EQ(reg.Ord(two[0].key, QPoly::Parse("x + 1")), Rational(1, 2));
  // phi = (1 + sqrt5)/2 is a unit.
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (const auto& w : PlacesAbove(reg, d.sqrt5, p)) EXPECT_EQ(reg.Ord(w.key, QPoly::Parse("1/2*x + 1/2")), 0);
}

TEST_F(DefaultRegistryTest, ArchimedeanExamples) {
  auto r2 = ArchimedeanPlaces(reg, d.sqrt2);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(r2[0].key.kind, PlaceKind::kReal);
  EXPECT_NEAR(r2[1].root.real(), std::sqrt(2.0), 1e-15);
  auto gi = ArchimedeanPlaces(reg, d.gaussian);
  ASSERT_EQ(gi.size(), 1u);
  EXPECT_EQ(gi[0].key.kind, PlaceKind::kComplex);
  EXPECT_EQ(gi[0].local_degree(), 2);
  auto c3 = ArchimedeanPlaces(reg, d.cbrt2);
  ASSERT_EQ(c3.size(), 2u);
  EXPECT_EQ(c3[0].key.kind, PlaceKind::kReal);
  EXPECT_EQ(c3[1].key.kind, PlaceKind::kComplex);
  for (FieldId k : reg.FieldIds()) {
    int sum = 0;
    for (const auto& pl : ArchimedeanPlaces(reg, k)) sum += pl.local_degree();
    EXPECT_EQ(sum, reg.Field(k).degree());
  }
}

TEST_F(DefaultRegistryTest, PlacesOverExamples) {
  PlaceKey q5 = PlacesAbove(reg, d.q, 5)[0].key;
  auto over = PlacesOver(reg, *reg.FindEmbedding(d.q, d.gaussian), q5);
  EXPECT_EQ(over.size(), 2u);
  PlaceKey g5 = PlacesAbove(reg, d.gaussian, 5)[0].key;
  auto self = PlacesOver(reg, reg.Identity(d.gaussian), g5);
  ASSERT_EQ(self.size(), 1u);
  EXPECT_EQ(self[0], g5);
  // Sign-pattern oracle: the real roots of x^4 - 10x^2 + 1 are s2*sqrt2 + s3*sqrt3 and the embedding sends
  // theta to s2*sqrt2, so the places over +sqrt2 are exactly the roots with s2 = +1.
  PlaceKey plus = ArchimedeanPlaces(reg, d.sqrt2)[1].key;
  std::vector<PlaceKey> expected;
  const auto& big = ArchimedeanPlaces(reg, d.sqrt2_sqrt3);
  for (const auto& w : big) {
    double x = w.root.real();
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1})
        if (std::abs(x - (s2 * std::sqrt(2.0) + s3 * std::sqrt(3.0))) < 1e-9 && s2 == 1) expected.push_back(w.key);
  }
  EXPECT_EQ(expected.size(), 2u);
  EXPECT_EQ(PlacesOver(reg, *reg.FindEmbedding(d.sqrt2, d.sqrt2_sqrt3), plus), expected);
}

TEST_F(DefaultRegistryTest, TowerTransitivityAndBranchLaw) {
  reg.Compositum(d.cbrt2, d.gaussian);
  reg.Compositum(d.sqrt5, d.zeta8);
  auto embs = reg.AllEmbeddings();
  std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
  for (const auto& e : embs) {
    int dk = reg.Field(e.source).degree(), dl = reg.Field(e.target).degree();
    std::vector<PlaceKey> vs = reg.PlacesOverSet(e.source, PlaceSet::All(), primes);
    for (const auto& v : vs) {
      auto ws = reg.PlacesOver(e.target, v);
      ASSERT_FALSE(ws.empty());
      int local = 0;
      Rational lam = 0;
      for (const auto& w : ws) {
        local += reg.GetPlace(w).local_degree();
        lam += reg.Lambda(w);
      }
      EXPECT_EQ(local, (dl / dk) * reg.GetPlace(v).local_degree()) << v.Id() << " in " << e.target;
      EXPECT_EQ(lam, reg.Lambda(v));
    }
  }
  // K -> L -> M transitivity.
  for (const auto& e1 : embs)
    for (const auto& e2 : embs) {
      if (e1.target != e2.source) continue;
      for (const auto& v : reg.PlacesOverSet(e1.source, PlaceSet::All(), {2, 3, 5})) {
        std::vector<PlaceKey> two_step;
        for (const auto& w : reg.PlacesOver(e1.target, v))
          for (const auto& u : reg.PlacesOver(e2.target, w)) two_step.push_back(u);
        std::sort(two_step.begin(), two_step.end());
        EXPECT_EQ(two_step, reg.PlacesOver(e2.target, v));
      }
    }
}

TEST(PlaceKey, RoundTrip) {
  for (const char* id : {"3/p5/1", "0/real/0", "7/complex/2"}) EXPECT_EQ(PlaceKey::Parse(id).Id(), id);
  EXPECT_THROW(PlaceKey::Parse("3/q5/1"), Error);
  EXPECT_THROW(PlaceKey::Parse("x/p5/1"), Error);
}

}  // namespace
}  // namespace consmap
