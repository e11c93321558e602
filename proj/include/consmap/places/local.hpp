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
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/fp_poly.hpp"
#include "consmap/exactnum/matrix.hpp"
#include "consmap/numberfields/number_field.hpp"
#include "consmap/places/place.hpp"

namespace consmap {
namespace local {

inline constexpr unsigned kMaxPrecision = 1u << 16;

// The finite algebra O/pO in order coordinates.
struct ResidueAlgebra {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::vector<std::vector<FpVector>> c;  // c[i][j] = coordinates of w_i * w_j mod p
  FpVector one;

  FpVector Mul(const FpVector& a, const FpVector& b) const {
    FpVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[j]) continue;
        std::uint64_t ab = MulMod(a[i], b[j], p);
        const FpVector& cij = c[i][j];
        for (std::size_t k = 0; k < n; ++k)
          if (cij[k]) out[k] = (out[k] + MulMod(ab, cij[k], p)) % p;
      }
    }
    return out;
  }
  FpVector Pow(FpVector a, const BigInt& e) const {
    FpVector r = one;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = Mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = Mul(r, a);
    }
    return r;
  }
  FpVector Scale(const FpVector& a, std::uint64_t s) const {
    FpVector out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = MulMod(a[k], s % p, p);
    return out;
  }
  FpVector Sub(const FpVector& a, const FpVector& b) const {
    FpVector out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] >= b[k] ? a[k] - b[k] : a[k] + (p - b[k]);
    return out;
  }
  FpVector Basis(std::size_t i) const {
    FpVector v(n);
    v[i] = 1;
    return v;
  }
};

inline QVector ToOrderCoords(const LocalOrder& o, const QVector& theta_coords) { return RowTimes(theta_coords, o.basis_inv); }

inline QVector FromOrderCoords(const LocalOrder& o, const ZVector& c) {
  QVector q(c.begin(), c.end());
  return RowTimes(q, o.basis);
}

inline LocalOrder MakeOrder(const NumberField& k, std::uint64_t p, QMatrix basis) {
  LocalOrder o;
  o.prime = p;
  o.basis = std::move(basis);
  auto inv = Inverse(o.basis);
  if (!inv) Fail(ErrorKind::kInvalidInput, "singular order basis");
  o.basis_inv = *inv;
  std::size_t n = o.basis.size();
  o.structure.assign(n, ZMatrix(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      QPoly prod = k.Mul(k.FromCoords(o.basis[i]), k.FromCoords(o.basis[j]));
      QVector c = ToOrderCoords(o, k.Coords(prod));
      ZVector z;
      for (const auto& v : c) {
        if (v.get_den() != 1) Fail(ErrorKind::kInvalidInput, "lattice is not closed under multiplication");
        z.push_back(BigInt(v));
      }
      o.structure[i][j] = z;
      o.structure[j][i] = z;
    }
  }
  return o;
}

inline ResidueAlgebra MakeAlgebra(const NumberField& k, const LocalOrder& o) {
  ResidueAlgebra a;
  a.p = o.prime;
  a.n = o.basis.size();
  BigInt P = FromU64(a.p);
  a.c.assign(a.n, std::vector<FpVector>(a.n));
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) {
      FpVector v;
      for (const auto& x : o.structure[i][j]) v.push_back(ToU64(Mod(x, P)));
      a.c[i][j] = v;
    }
  QVector one = ToOrderCoords(o, k.Coords(QPoly::Constant(1)));
  for (const auto& v : one) a.one.push_back(ToU64(Mod(BigInt(v), P)));
  return a;
}

inline ZMatrix LatticeModP(const std::vector<FpVector>& gens, std::size_t n, std::uint64_t p) {
  ZMatrix rows;
  for (const auto& g : gens) {
    ZVector z;
    for (auto v : g) z.push_back(FromU64(v));
    rows.push_back(z);
  }
  if (rows.empty()) rows.push_back(ZVector(n));
  BigInt P = FromU64(p);
  return Hnf(rows, &P);
}

inline BigInt FrobeniusExponent(std::uint64_t p, std::size_t n) {
  BigInt q = FromU64(p);
  while (q < static_cast<long>(n)) q *= FromU64(p);
  return q;
}

// Ring of multipliers iteration until the order is p-maximal.
inline LocalOrder PMaximalOrder(const NumberField& k, std::uint64_t p, const QMatrix& start) {
  QMatrix basis = start;
  std::size_t n = basis.size();
  BigInt q = FrobeniusExponent(p, n);
  for (int step = 0;; ++step) {
    LocalOrder o = MakeOrder(k, p, basis);
    o.round2_steps = step;
    o.equation_order = (step == 0);
    ResidueAlgebra a = MakeAlgebra(k, o);
    FpMatrix frob;
    for (std::size_t i = 0; i < n; ++i) frob.push_back(a.Pow(a.Basis(i), q));
    auto rad = LeftKernelModP(frob, p);
    if (rad.empty()) return o;
    ZMatrix h = LatticeModP(rad, n, p);
    QMatrix hq;
    for (const auto& row : h) hq.emplace_back(row.begin(), row.end());
    QMatrix hinv = *Inverse(hq);
    // x -> (gamma_k -> x * gamma_k mod p I_p)
    FpMatrix mult(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t kk = 0; kk < n; ++kk) {
        ZVector prod(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (h[kk][j] == 0) continue;
          for (std::size_t t = 0; t < n; ++t) prod[t] += h[kk][j] * o.structure[i][j][t];
        }
        QVector in_ideal = RowTimes(QVector(prod.begin(), prod.end()), hinv);
        for (const auto& v : in_ideal) mult[i].push_back(ToU64(Mod(BigInt(v), FromU64(p))));
      }
    }
    auto u = LeftKernelModP(mult, p);
    if (u.empty()) return o;
    ZMatrix h2 = LatticeModP(u, n, p);
    QMatrix next;
    for (const auto& row : h2) {
      QVector r = FromOrderCoords(o, row);
      for (auto& v : r) v /= FromU64(p);
      next.push_back(r);
    }
    basis = RationalHnf(next);
    if (step > 64) Fail(ErrorKind::kUnsupportedRamification, "order enlargement did not terminate");
  }
}

// Minimal polynomial of y in the algebra with unit e, as a monic F_p polynomial.
inline FpPoly MinPolyIn(const ResidueAlgebra& a, const FpVector& y, const FpVector& e) {
  std::vector<FpVector> powers{e};
  while (true) {
    powers.push_back(a.Mul(powers.back(), y));
    auto ker = LeftKernelModP(powers, a.p);
    if (!ker.empty()) {
      FpVector rel = ker.front();
      std::uint64_t lead = rel.back();
      return FpPoly(a.p, rel).Scaled(InvMod(lead, a.p));
    }
  }
}

struct IdealData {
  std::shared_ptr<PrimeIdeal> ideal;
  FpVector idempotent;  // empty on the Dedekind path
  int factor_index = -1;
};

inline ZMatrix BetaMultiplication(const LocalOrder& o, const ZMatrix& gens) {
  std::uint64_t p = o.prime;
  std::size_t n = o.basis.size();
  BigInt P = FromU64(p);
  FpMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& g : gens) {
      ZVector prod(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (g[j] == 0) continue;
        for (std::size_t t = 0; t < n; ++t) prod[t] += g[j] * o.structure[i][j][t];
      }
      for (const auto& v : prod) m[i].push_back(ToU64(Mod(v, P)));
    }
  auto ker = LeftKernelModP(m, p);
  if (ker.empty()) Fail(ErrorKind::kUnsupportedRamification, "no valuation element found");
  ZVector beta;
  for (auto v : ker.front()) beta.push_back(FromU64(v));
  ZMatrix out(n, ZVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (beta[j] == 0) continue;
      for (std::size_t t = 0; t < n; ++t) out[i][t] += beta[j] * o.structure[i][j][t];
    }
  return out;
}

inline QMatrix ThetaHnf(const LocalOrder& o, const ZMatrix& gens) {
  QMatrix rows;
  for (const auto& g : gens) rows.push_back(FromOrderCoords(o, g));
  return RationalHnf(rows);
}

inline bool HnfLess(const QMatrix& a, const QMatrix& b) { return a < b; }

// v_P(x) for x in theta coordinates.
inline long IdealValuation(const PrimeIdeal& ideal, const QVector& x) {
  const LocalOrder& o = *ideal.order;
  QVector c = ToOrderCoords(o, x);
  BigInt d = 1;
  for (const auto& v : c) d = Lcm(d, BigInt(v.get_den()));
  ZVector y;
  bool zero = true;
  for (const auto& v : c) {
    y.push_back(BigInt(v * d));
    if (y.back() != 0) zero = false;
  }
  if (zero) Fail(ErrorKind::kZeroElement, "valuation of zero");
  BigInt P = FromU64(o.prime);
  std::size_t n = y.size();
  long k = 0;
  while (true) {
    ZVector z(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (y[i] == 0) continue;
      for (std::size_t t = 0; t < n; ++t) z[t] += y[i] * ideal.beta_mul[i][t];
    }
    bool divisible = true;
    for (const auto& v : z)
      if (!mpz_divisible_p(v.get_mpz_t(), P.get_mpz_t())) {
        divisible = false;
        break;
      }
    if (!divisible) break;
    for (auto& v : z) v /= P;
    y = std::move(z);
    ++k;
  }
  return k - static_cast<long>(ideal.e) * Valuation(d, P);
}

inline ZPoly IntegralPolyZ(const NumberField& k) {
  ZPoly f;
  for (const auto& c : k.integral_poly().coeffs()) f.push_back(BigInt(c));
  return f;
}

// Local factor F_w modulo p^N from a lifted idempotent.
inline ZPoly LocalFactorFromIdempotent(const NumberField& k, const LocalOrder& o, const FpVector& eps, int local_degree,
                                       unsigned precision) {
  std::size_t n = o.basis.size();
  BigInt pn = Pow(FromU64(o.prime), precision);
  auto mul = [&](const ZVector& a, const ZVector& b) {
    ZVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        BigInt ab = a[i] * b[j];
        for (std::size_t t = 0; t < n; ++t) out[t] += ab * o.structure[i][j][t];
      }
    }
    for (auto& v : out) v = Mod(v, pn);
    return out;
  };
  ZVector e;
  for (auto v : eps) e.push_back(FromU64(v));
  for (int it = 0; it < 64; ++it) {
    ZVector e2 = mul(e, e);
    if (e2 == e) break;
    ZVector e3 = mul(e2, e);
    for (std::size_t t = 0; t < n; ++t) e[t] = Mod(3 * e2[t] - 2 * e3[t], pn);
  }
  QVector th = ToOrderCoords(o, k.Coords(QPoly::X().Scaled(Rational(k.scale()))));
  ZVector theta;
  for (const auto& v : th) theta.push_back(Mod(BigInt(v), pn));
  ZVector z = mul(theta, e);
  ZMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    ZVector wi(n);
    wi[i] = 1;
    m[i] = mul(wi, z);
  }
  // Transposition does not change the characteristic polynomial.
  ZPoly cp = CharPolyMod(m, pn);
  cp.resize(n + 1);
  std::size_t shift = n - static_cast<std::size_t>(local_degree);
  ZPoly fw(cp.begin() + static_cast<long>(shift), cp.end());
  zpoly::Trim(fw);
  return fw;
}

struct PrimeDecomposition {
  std::shared_ptr<const LocalOrder> order;
  std::vector<std::shared_ptr<const PrimeIdeal>> ideals;
  std::vector<PAdicFactorHandle> handles;
  bool dedekind = false;
};

// Dedekind criterion for Z[theta_int] at p; fills the factorization of F mod p.
inline bool DedekindPasses(const NumberField& k, std::uint64_t p, std::vector<std::pair<FpPoly, int>>& fac) {
  ZPoly f = IntegralPolyZ(k);
  FpPoly fp = zpoly::ToFp(f, p);
  fac = Factor(fp);
  FpPoly g = FpPoly::Constant(p, 1), h = FpPoly::Constant(p, 1);
  for (const auto& [phi, m] : fac) {
    g = g * phi;
    for (int i = 1; i < m; ++i) h = h * phi;
  }
  ZPoly gh = zpoly::Mul(zpoly::FromFp(g), zpoly::FromFp(h));
  ZPoly diff = zpoly::Sub(gh, f);
  BigInt P = FromU64(p);
  for (auto& v : diff) v /= P;
  FpPoly big_g = zpoly::ToFp(diff, p);
  FpPoly t = Gcd(Gcd(g, h), big_g);
  return t.degree() == 0;
}

inline std::vector<PAdicFactorHandle> CertifyHandles(const NumberField& k, std::uint64_t p,
                                                     const std::function<std::vector<ZPoly>(unsigned)>& compute) {
  ZPoly f = IntegralPolyZ(k);
  for (unsigned precision = 8u * static_cast<unsigned>(k.degree()); precision <= kMaxPrecision; precision *= 2) {
    std::vector<ZPoly> factors = compute(precision);
    BigInt pn = Pow(FromU64(p), precision);
    ZPoly prod{1};
    for (const auto& g : factors) prod = zpoly::MulMod(prod, g, pn);
    if (prod == zpoly::Reduce(f, pn)) {
      std::vector<PAdicFactorHandle> out;
      for (auto& g : factors) out.push_back({p, precision, g, true});
      return out;
    }
  }
  Fail(ErrorKind::kPrecisionExhausted, "local factors not certified below p^" + std::to_string(kMaxPrecision));
}

inline PrimeDecomposition Decompose(const NumberField& k, std::uint64_t p) {
  if (!IsPrime(p)) Fail(ErrorKind::kInvalidInput, std::to_string(p) + " is not prime");
  std::size_t n = static_cast<std::size_t>(k.degree());
  QMatrix start(n, QVector(n));
  BigInt sp = 1;
  for (std::size_t i = 0; i < n; ++i) {
    start[i][i] = sp;
    sp *= k.scale();
  }
  PrimeDecomposition out;
  std::vector<std::pair<FpPoly, int>> fac;
  std::vector<IdealData> data;
  std::shared_ptr<LocalOrder> order;
  if (DedekindPasses(k, p, fac)) {
    out.dedekind = true;
    order = std::make_shared<LocalOrder>(MakeOrder(k, p, start));
    // Order coordinates coincide with powers of theta_int.
    for (std::size_t i = 0; i < fac.size(); ++i) {
      std::vector<FpVector> gens;
      FpPoly cur = fac[i].first;
      FpPoly fp = zpoly::ToFp(IntegralPolyZ(k), p);
      for (std::size_t j = 0; j < n; ++j) {
        FpPoly r = cur % fp;
        FpVector v(n);
        for (int t = 0; t <= r.degree(); ++t) v[static_cast<std::size_t>(t)] = r.coeff(t);
        gens.push_back(v);
        cur = cur * FpPoly::X(p);
      }
      auto ideal = std::make_shared<PrimeIdeal>();
      ideal->order = order;
      ideal->e = fac[i].second;
      ideal->f = fac[i].first.degree();
      ideal->gens = LatticeModP(gens, n, p);
      data.push_back({ideal, {}, static_cast<int>(i)});
    }
  } else {
    order = std::make_shared<LocalOrder>(PMaximalOrder(k, p, start));
    ResidueAlgebra a = MakeAlgebra(k, *order);
    BigInt q = FrobeniusExponent(p, n);
    FpMatrix frob, berlekamp;
    for (std::size_t i = 0; i < n; ++i) {
      frob.push_back(a.Pow(a.Basis(i), q));
      berlekamp.push_back(a.Sub(a.Pow(a.Basis(i), FromU64(p)), a.Basis(i)));
    }
    auto semisimple = SpanModP(frob, p);
    auto split_basis = LeftKernelModP(berlekamp, p);
    std::vector<FpVector> idem{a.one};
    for (const auto& b : split_basis) {
      std::vector<FpVector> next;
      for (const auto& e : idem) {
        FpVector y = a.Mul(b, e);
        FpPoly mp = MinPolyIn(a, y, e);
        std::vector<std::uint64_t> roots;
        for (const auto& [lin, m] : Factor(mp)) {
          if (lin.degree() != 1 || m != 1) Fail(ErrorKind::kUnsupportedRamification, "split element is not semisimple");
          roots.push_back((p - lin.coeff(0)) % p);
        }
        if (roots.size() == 1) {
          next.push_back(e);
          continue;
        }
        for (auto r : roots) {
          FpVector er = e;
          for (auto r2 : roots) {
            if (r2 == r) continue;
            FpVector factor = a.Sub(y, a.Scale(e, r2));
            er = a.Scale(a.Mul(er, factor), InvMod((r + p - r2) % p, p));
          }
          next.push_back(er);
        }
      }
      idem = std::move(next);
    }
    for (const auto& eps : idem) {
      std::vector<FpVector> es, ea, kernel_rows;
      for (const auto& s : semisimple) es.push_back(a.Mul(eps, s));
      for (std::size_t i = 0; i < n; ++i) {
        ea.push_back(a.Mul(eps, a.Basis(i)));
        kernel_rows.push_back(a.Mul(eps, frob[i]));
      }
      int f = static_cast<int>(SpanModP(es, p).size());
      int dim = static_cast<int>(SpanModP(ea, p).size());
      auto ideal = std::make_shared<PrimeIdeal>();
      ideal->order = order;
      ideal->f = f;
      ideal->e = dim / f;
      ideal->gens = LatticeModP(LeftKernelModP(kernel_rows, p), n, p);
      data.push_back({ideal, eps, -1});
    }
  }
  for (auto& d : data) {
    d.ideal->hnf = ThetaHnf(*order, d.ideal->gens);
    d.ideal->beta_mul = BetaMultiplication(*order, d.ideal->gens);
  }
  std::vector<std::size_t> perm(data.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return HnfLess(data[x].ideal->hnf, data[y].ideal->hnf); });

  int total = 0;
  for (const auto& d : data) total += d.ideal->e * d.ideal->f;
  if (total != static_cast<int>(n)) Fail(ErrorKind::kUnsupportedRamification, "fundamental identity failed at p=" + std::to_string(p));

  std::function<std::vector<ZPoly>(unsigned)> compute;
  if (out.dedekind) {
    compute = [&](unsigned precision) {
      std::vector<FpPoly> powers;
      for (const auto& [phi, m] : fac) {
        FpPoly pw = FpPoly::Constant(p, 1);
        for (int i = 0; i < m; ++i) pw = pw * phi;
        powers.push_back(pw);
      }
      auto lifted = MultiHenselLift(IntegralPolyZ(k), powers, p, precision);
      std::vector<ZPoly> ordered;
      for (auto i : perm) ordered.push_back(lifted[static_cast<std::size_t>(data[i].factor_index)]);
      return ordered;
    };
  } else {
    compute = [&](unsigned precision) {
      std::vector<ZPoly> ordered;
      for (auto i : perm)
        ordered.push_back(LocalFactorFromIdempotent(k, *order, data[i].idempotent, data[i].ideal->e * data[i].ideal->f, precision));
      return ordered;
    };
  }
  out.handles = CertifyHandles(k, p, compute);
  out.order = order;
  for (auto i : perm) out.ideals.push_back(data[i].ideal);
  return out;
}

}  // namespace local
}  // namespace consmap
