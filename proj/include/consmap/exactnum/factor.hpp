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

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/fp_poly.hpp"
#include "consmap/exactnum/qpoly.hpp"
#include "consmap/exactnum/rational.hpp"

namespace consmap {

// Integer polynomial, ascending coefficients; used for work modulo p^k.
using ZPoly = std::vector<BigInt>;

namespace zpoly {

inline void Trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly Mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  Trim(c);
  return c;
}

inline ZPoly Sub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (i < a.size() ? a[i] : BigInt(0)) - (i < b.size() ? b[i] : BigInt(0));
  Trim(c);
  return c;
}

inline ZPoly Reduce(ZPoly a, const BigInt& m) {
  for (auto& v : a) v = Mod(v, m);
  Trim(a);
  return a;
}

inline ZPoly ReduceSymmetric(ZPoly a, const BigInt& m) {
  for (auto& v : a) v = SymmetricMod(v, m);
  Trim(a);
  return a;
}

inline ZPoly MulMod(const ZPoly& a, const ZPoly& b, const BigInt& m) { return Reduce(Mul(a, b), m); }

inline ZPoly FromFp(const FpPoly& f) {
  ZPoly out;
  for (auto c : f.coeffs()) out.push_back(FromU64(c));
  return out;
}

inline FpPoly ToFp(const ZPoly& f, std::uint64_t p) { return FpPoly::FromIntegers(p, f); }

inline QPoly ToQ(const ZPoly& f) { return QPoly::FromIntegers(f); }

// Makes f monic modulo m (leading coefficient must be a unit).
inline ZPoly MakeMonic(ZPoly f, const BigInt& m) {
  f = Reduce(std::move(f), m);
  if (f.empty()) Fail(ErrorKind::kInvalidInput, "zero polynomial mod m");
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), m.get_mpz_t()) == 0)
    Fail(ErrorKind::kInvalidInput, "leading coefficient not a unit");
  for (auto& v : f) v = Mod(v * inv, m);
  return f;
}

// Exact quotient of a by b over Z, if it exists.
inline bool DividesExactly(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
  auto [q, r] = ToQ(a).DivMod(ToQ(b));
  if (!r.IsZero() || !q.IsIntegral()) return false;
  if (quotient) {
    quotient->clear();
    for (const auto& c : q.coeffs()) quotient->push_back(BigInt(c));
  }
  return true;
}

}  // namespace zpoly

// Lifts f = g*h mod p (g monic, coprime) to f = G*H mod p^k with G monic.
inline std::pair<ZPoly, ZPoly> HenselLift(const ZPoly& f, const FpPoly& g, const FpPoly& h, std::uint64_t p, unsigned k) {
  FpPoly gg, s, t;
  ExtendedGcd(g, h, gg, s, t);
  if (gg.degree() != 0) Fail(ErrorKind::kInvalidInput, "Hensel factors not coprime mod p");
  ZPoly G = zpoly::FromFp(g), H = zpoly::FromFp(h);
  BigInt P = FromU64(p), pj = P;
  for (unsigned j = 1; j < k; ++j) {
    BigInt pj1 = pj * P;
    ZPoly err = zpoly::Reduce(zpoly::Sub(f, zpoly::Mul(G, H)), pj1);
    for (auto& v : err) v /= pj;
    FpPoly e = zpoly::ToFp(err, p);
    FpPoly a = (t * e) % g;
    FpPoly b = (e - a * h) / g;
    ZPoly A = zpoly::FromFp(a), B = zpoly::FromFp(b);
    G.resize(std::max(G.size(), A.size()));
    for (std::size_t i = 0; i < A.size(); ++i) G[i] += pj * A[i];
    H.resize(std::max(H.size(), B.size()));
    for (std::size_t i = 0; i < B.size(); ++i) H[i] += pj * B[i];
    zpoly::Trim(G);
    zpoly::Trim(H);
    pj = pj1;
  }
  BigInt pk = Pow(P, k);
  return {zpoly::Reduce(G, pk), zpoly::Reduce(H, pk)};
}

// Lifts f = lc * prod(factors) mod p to monic lifts modulo p^k.
inline std::vector<ZPoly> MultiHenselLift(const ZPoly& f, const std::vector<FpPoly>& factors, std::uint64_t p, unsigned k) {
  BigInt pk = Pow(FromU64(p), k);
  if (factors.size() == 1) return {zpoly::MakeMonic(f, pk)};
  std::size_t half = factors.size() / 2;
  std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<FpPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  FpPoly a = FpPoly::Constant(p, 1);
  for (const auto& u : left) a = a * u;
  FpPoly b = zpoly::ToFp(f, p) / a;
  auto [G, H] = HenselLift(f, a, b, p, k);
  auto out = MultiHenselLift(G, left, p, k);
  auto rest = MultiHenselLift(H, right, p, k);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace detail {

inline ZPoly PrimitiveZ(const ZPoly& f) {
  BigInt g = 0;
  for (const auto& v : f) g = Gcd(g, v);
  if (g == 0) return f;
  if (f.back() < 0) g = -g;
  ZPoly out;
  for (const auto& v : f) out.push_back(v / g);
  return out;
}

// Zassenhaus on a primitive squarefree integer polynomial with positive leading coefficient.
inline std::vector<ZPoly> FactorSquarefreeZ(const ZPoly& f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};
  const BigInt& lc = f.back();
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 5; p += 2) {
    if (!IsPrime(p) || Mod(lc, FromU64(p)) == 0) continue;
    FpPoly fp = zpoly::ToFp(f, p);
    if (!IsSquarefree(fp)) continue;
    ++good;
    auto fac = Factor(fp);
    if (fac.size() == 1) return {f};
    if (best.empty() || fac.size() < best.size()) {
      best.clear();
      for (auto& [u, m] : fac) best.push_back(u);
      best_p = p;
    }
  }
  // Coefficient bound for factors of lc*f.
  BigInt norm2 = 0, maxc = 0;
  for (const auto& v : f) {
    norm2 += v * v;
    if (Abs(v) > maxc) maxc = Abs(v);
  }
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  BigInt bound = 2 * Abs(lc) * Pow(BigInt(2), static_cast<unsigned long>(n)) * (root + 1);
  BigInt P = FromU64(best_p), pk = P;
  unsigned k = 1;
  while (pk <= bound) {
    pk *= P;
    ++k;
  }
  std::vector<ZPoly> lifted = MultiHenselLift(f, best, best_p, k);

  std::vector<ZPoly> out;
  ZPoly F = f;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly g{F.back()};
      for (auto i : idx) g = zpoly::MulMod(g, lifted[alive[i]], pk);
      g = zpoly::ReduceSymmetric(g, pk);
      bool ok = !g.empty();
      if (ok && F[0] != 0 && g[0] != 0) ok = mpz_divisible_p(BigInt(F.back() * F[0]).get_mpz_t(), g[0].get_mpz_t()) != 0;
      ZPoly q = ok ? PrimitiveZ(g) : ZPoly{};
      ZPoly quotient;
      if (ok && zpoly::DividesExactly(F, q, &quotient)) {
        out.push_back(q);
        F = quotient;
        std::vector<std::size_t> next;
        for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
          if (j < s && idx[j] == i) {
            ++j;
            continue;
          }
          next.push_back(alive[i]);
        }
        alive = std::move(next);
        found = true;
        break;
      }
      // Next combination of size s from alive.size().
      std::size_t m = alive.size();
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - s + static_cast<std::size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++s;
  }
  if (F.size() > 1) out.push_back(PrimitiveZ(F));
  return out;
}

}  // namespace detail

// Squarefree decomposition over Q (Yun): monic parts with multiplicities.
inline std::vector<std::pair<QPoly, int>> SquarefreeDecomposition(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.degree() <= 0) return out;
  QPoly a = f.Monic();
  QPoly da = a.Derivative();
  QPoly b = Gcd(a, da);
  QPoly c = a / b;
  QPoly d = da / b - c.Derivative();
  for (int i = 1; c.degree() > 0; ++i) {
    QPoly y = Gcd(c, d);
    if (y.degree() > 0) out.emplace_back(y, i);
    c = c / y;
    d = d / y - c.Derivative();
  }
  return out;
}

inline QPoly SquarefreePart(const QPoly& f) {
  if (f.degree() <= 0) return QPoly::Constant(1);
  return f.Monic() / Gcd(f, f.Derivative());
}

// Monic irreducible factors over Q with multiplicities, sorted canonically.
inline std::vector<std::pair<QPoly, int>> Factor(const QPoly& f) {
  if (f.IsZero()) Fail(ErrorKind::kZeroElement, "factoring the zero polynomial");
  std::vector<std::pair<QPoly, int>> out;
  for (const auto& [part, mult] : SquarefreeDecomposition(f)) {
    for (const auto& z : detail::FactorSquarefreeZ(part.PrimitiveIntegerCoeffs())) out.emplace_back(zpoly::ToQ(z).Monic(), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return CanonicalLess(a.first, b.first);
    return a.second < b.second;
  });
  return out;
}

inline bool IsIrreducible(const QPoly& f) {
  if (f.degree() <= 0) return false;
  if (!IsSquarefree(f)) return false;
  return detail::FactorSquarefreeZ(f.PrimitiveIntegerCoeffs()).size() == 1;
}

}  // namespace consmap
