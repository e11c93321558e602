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

#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/matrix.hpp"
#include "consmap/exactnum/roots.hpp"

namespace consmap {
namespace {

TEST(ExactScalar, AddExamples) {
  EXPECT_EQ(ExactScalar(Rational(1, 2)) + ExactScalar(Rational(1, 2)), ExactScalar(1));
  EXPECT_TRUE((ExactScalar::Log(2) + ExactScalar::Log(2, -1)).IsZero());
  EXPECT_EQ(ExactScalar::Log(5, Rational(3, 2)) + ExactScalar::Log(5, Rational(1, 2)), ExactScalar::Log(5, 2));
}

TEST(ExactScalar, MulLog) {
  EXPECT_EQ(ExactScalar::InvLog(2).MulLog(2), ExactScalar(1));
  EXPECT_EQ(ExactScalar(3).MulLog(5), ExactScalar::Log(5, 3));
  try {
    ExactScalar::InvLog(3).MulLog(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedProduct);
  }
}

TEST(ExactScalar, InvLogPredicate) {
  EXPECT_TRUE(ExactScalar::InvLog(7, Rational(5, 2)).IsRationalMultipleOfInvLog(7));
  EXPECT_FALSE(ExactScalar(Rational(1, 2)).IsRationalMultipleOfInvLog(7));
  EXPECT_TRUE(ExactScalar(0).IsRationalMultipleOfInvLog(7));
}

ExactScalar RandomScalar(std::mt19937_64& rng) {
  const std::uint64_t primes[] = {2, 3, 5, 7, 11};
  auto rat = [&] { return MakeRational(BigInt(static_cast<long>(rng() % 2001) - 1000), BigInt(static_cast<long>(rng() % 97 + 1))); };
  ExactScalar x(rat());
  for (int k = 0; k < 3; ++k) {
    x += ExactScalar::Log(primes[rng() % 5], rat());
    x += ExactScalar::InvLog(primes[rng() % 5], rat());
  }
  if (rng() % 2) x += ExactScalar::Residual(static_cast<double>(rng() % 1000) / 7.0);
  return x;
}

TEST(ExactScalar, AlgebraicLaws) {
  std::mt19937_64 rng(0);
  for (int i = 0; i < 300; ++i) {
    ExactScalar a = RandomScalar(rng), b = RandomScalar(rng), c = RandomScalar(rng);
    EXPECT_TRUE(((a + b) + c).SymbolicEquals(a + (b + c)));
    EXPECT_TRUE((a + b).SymbolicEquals(b + a));
    EXPECT_NEAR((a + b).ToDouble(), a.ToDouble() + b.ToDouble(), 1e-12 * (1 + std::abs(a.ToDouble()) + std::abs(b.ToDouble())));
    ExactScalar round = ExactScalar::Parse(a.ToString());
    EXPECT_TRUE(round.SymbolicEquals(a)) << a.ToString();
    EXPECT_EQ(round.residual(), a.residual()) << a.ToString();
    EXPECT_EQ(ExactScalar::Parse(round.ToString()).ToString(), round.ToString());
  }
}

TEST(ExactScalar, ParseRejectsGarbage) {
  EXPECT_THROW(ExactScalar::Parse("1 + 2*log(4)"), Error);
  EXPECT_THROW(ExactScalar::Parse("abc"), Error);
  EXPECT_EQ(ExactScalar::Parse("3/4 + 2*log(5) + 1/2/log(7)").ToString(), "3/4 + 2*log(5) + 1/2/log(7)");
}

// Sylvester determinant as an independent resultant oracle.
Rational SylvesterResultant(const QPoly& a, const QPoly& b) {
  int m = a.degree(), n = b.degree();
  std::size_t size = static_cast<std::size_t>(m + n);
  QMatrix s(size, QVector(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b.coeff(n - j);
  Rational det = 1;
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t p = c;
    while (p < size && s[p][c] == 0) ++p;
    if (p == size) return 0;
    if (p != c) {
      std::swap(s[p], s[c]);
      det = -det;
    }
    det *= s[c][c];
    for (std::size_t r = c + 1; r < size; ++r) {
      Rational t = s[r][c] / s[c][c];
      for (std::size_t k = c; k < size; ++k) s[r][k] -= t * s[c][k];
    }
  }
  return det;
}

QPoly RandomPoly(std::mt19937_64& rng, int degree) {
  std::vector<Rational> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(static_cast<long>(rng() % 21) - 10);
  if (c.back() == 0) c.back() = 1;
  return QPoly(c);
}

TEST(QPoly, ResultantMatchesSylvester) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 60; ++i) {
    QPoly a = RandomPoly(rng, 1 + static_cast<int>(rng() % 5)), b = RandomPoly(rng, 1 + static_cast<int>(rng() % 5));
    EXPECT_EQ(Resultant(a, b), SylvesterResultant(a, b)) << a.ToString() << " | " << b.ToString();
  }
}

TEST(QPoly, ParseAndPrint) {
  QPoly f = QPoly::Parse("x^4 - 10*x^2 + 1");
  EXPECT_EQ(f, QPoly({1, 0, -10, 0, 1}));
  EXPECT_EQ(f.ToString(), "x^4 - 10*x^2 + 1");
  EXPECT_EQ(QPoly::Parse("-3/2*t + 5", "t").ToString("t"), "-3/2*t + 5");
  EXPECT_THROW(QPoly::Parse("x^^2"), Error);
}

TEST(QPoly, InterpolationRecovers) {
  std::mt19937_64 rng(2);
  QPoly f = RandomPoly(rng, 7);
  std::vector<Rational> xs, ys;
  for (int i = 0; i <= 7; ++i) {
    xs.emplace_back(i * 3 - 5);
    ys.push_back(f.Eval(xs.back()));
  }
  EXPECT_EQ(Interpolate(xs, ys), f);
}

TEST(FpPoly, FactorMatchesRootCount) {
  // Number of distinct linear factors equals the number of roots in F_p.
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL, 101ULL}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<std::uint64_t> c(7);
      for (auto& v : c) v = rng() % p;
      c.back() = 1;
      FpPoly f(p, c);
      auto fac = Factor(f);
      FpPoly prod = FpPoly::Constant(p, 1);
      int linear = 0;
      for (const auto& [g, m] : fac) {
        for (int k = 0; k < m; ++k) prod = prod * g;
        if (g.degree() == 1) ++linear;
      }
      EXPECT_EQ(prod, f);
      int roots = 0;
      for (std::uint64_t x = 0; x < p; ++x)
        if (f.Eval(x) == 0) ++roots;
      EXPECT_EQ(linear, roots);
    }
  }
}

TEST(Factor, KnownFactorizations) {
  QPoly f = QPoly({1, 0, -10, 0, 1});
  EXPECT_TRUE(IsIrreducible(f));
  auto fac = Factor(QPoly({-1, 0, 1}) * QPoly({-2, 0, 1}) * QPoly({-2, 0, 1}));
  ASSERT_EQ(fac.size(), 3u);
  EXPECT_EQ(fac[0].first, QPoly({-1, 1}));
  EXPECT_EQ(fac[1].first, QPoly({1, 1}));
  EXPECT_EQ(fac[2].first, QPoly({-2, 0, 1}));
  EXPECT_EQ(fac[2].second, 2);
}

TEST(Factor, ProductsRecovered) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    QPoly a = RandomPoly(rng, 1 + static_cast<int>(rng() % 4)), b = RandomPoly(rng, 2 + static_cast<int>(rng() % 4));
    QPoly f = a * b * b;
    auto fac = Factor(f);
    QPoly prod = QPoly::Constant(f.lead());
    for (const auto& [g, m] : fac) {
      for (int k = 0; k < m; ++k) prod = prod * g;
      EXPECT_TRUE(IsIrreducible(g));
    }
    EXPECT_EQ(prod, f);
  }
  // Swinnerton-Dyer style polynomial with many modular factors.
  QPoly s = QPoly::Parse("x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576");
  EXPECT_TRUE(IsIrreducible(s));
}

TEST(Roots, SturmCounts) {
  EXPECT_EQ(RealRootCount(QPoly({1, 0, 1})), 0);
  EXPECT_EQ(RealRootCount(QPoly({-2, 0, 1})), 2);
  EXPECT_EQ(RealRootCount(QPoly({-2, 0, 0, 1})), 1);
  EXPECT_THROW(RealRootCount(QPoly({1, 2, 1})), Error);
  // Oracle: sign changes on a fine grid for polynomials with well separated real roots.
  QPoly w = QPoly({-1, 1}) * QPoly({2, 1}) * QPoly({-5, 1}) * QPoly({1, 0, 1});
  EXPECT_EQ(RealRootCount(w), 3);
  auto r = RealRoots(w);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -2, 1e-14);
  EXPECT_NEAR(r[1], 1, 1e-14);
  EXPECT_NEAR(r[2], 5, 1e-14);
}

TEST(Roots, AberthCubeRootTwo) {
  auto z = ComplexRoots(QPoly({-2, 0, 0, 1}));
  ASSERT_EQ(z.size(), 3u);
  for (auto r : z) EXPECT_NEAR(std::abs(r), std::cbrt(2.0), 1e-13);
}

TEST(Matrix, CharPolyAgainstNewtonIdentities) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 2 + rng() % 5;
    QMatrix a(n, QVector(n));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<long>(rng() % 11) - 5;
    QPoly cp = CharPoly(a);
    // Power sums s_k = tr(A^k); coefficients e_k from Newton's identities.
    std::vector<Rational> s(n + 1), e(n + 1);
    QMatrix pw = a;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) s[k] += pw[i][i];
      pw = Multiply(pw, a);
    }
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      Rational acc = 0;
      for (std::size_t i = 1; i <= k; ++i) acc += ((i % 2) ? 1 : -1) * e[k - i] * s[i];
      e[k] = acc / static_cast<long>(k);
    }
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(cp.coeff(static_cast<int>(n - k)), ((k % 2) ? -1 : 1) * e[k]);
    ZMatrix za(n, ZVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) za[i][j] = BigInt(a[i][j]);
    BigInt m = 1000003;
    ZPoly cm = CharPolyMod(za, m);
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(cm[k], Mod(BigInt(cp.coeff(static_cast<int>(k))), m));
  }
}

TEST(Matrix, HnfIsCanonical) {
  ZMatrix a{{4, 6, 0}, {0, 3, 9}, {2, 0, 1}};
  // Same lattice under a unimodular change of basis.
  ZMatrix b{{2, 0, 1}, {6, 6, 1}, {6, 9, 10}};
  EXPECT_EQ(Hnf(a), Hnf(b));
  ZMatrix h = Hnf(a);
  BigInt det = 1;
  for (std::size_t i = 0; i < h.size(); ++i) det *= h[i][i];
  EXPECT_EQ(det, 120);
  BigInt mod = 120;
  EXPECT_EQ(Hnf(a, &mod), h);
}

}  // namespace
}  // namespace consmap
