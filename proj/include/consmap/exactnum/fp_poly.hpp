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
#include <random>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/rational.hpp"

namespace consmap {

inline std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t PowMod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = MulMod(r, a, p);
    a = MulMod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t InvMod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) Fail(ErrorKind::kInvalidInput, "inverse of zero mod p");
  return PowMod(a, p - 2, p);
}

// Polynomial over F_p, ascending coefficients in [0, p), trimmed.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& a : c_) a %= p_;
    Trim();
  }
  static FpPoly Constant(std::uint64_t p, std::uint64_t a) { return FpPoly(p, {a}); }
  static FpPoly X(std::uint64_t p) { return FpPoly(p, {0, 1}); }
  // Reduction of a rational polynomial whose denominators are prime to p.
  static FpPoly FromRational(std::uint64_t p, const std::vector<Rational>& c) {
    std::vector<std::uint64_t> out;
    BigInt P = FromU64(p);
    for (const auto& q : c) {
      BigInt den = Mod(BigInt(q.get_den()), P);
      if (den == 0) Fail(ErrorKind::kInvalidInput, "denominator divisible by p");
      BigInt num = Mod(BigInt(q.get_num()), P);
      out.push_back(MulMod(ToU64(num), InvMod(ToU64(den), p), p));
    }
    return FpPoly(p, std::move(out));
  }
  static FpPoly FromIntegers(std::uint64_t p, const std::vector<BigInt>& c) {
    std::vector<std::uint64_t> out;
    BigInt P = FromU64(p);
    for (const auto& a : c) out.push_back(ToU64(Mod(a, P)));
    return FpPoly(p, std::move(out));
  }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool IsZero() const { return c_.empty(); }
  bool IsOne() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : 0; }
  std::uint64_t lead() const { return c_.back(); }

  FpPoly Monic() const {
    if (IsZero()) return *this;
    std::uint64_t inv = InvMod(lead(), p_);
    FpPoly r(*this);
    for (auto& a : r.c_) a = MulMod(a, inv, p_);
    return r;
  }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
      c[i] = x + y >= p ? x + y - p : x + y;
    }
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::uint64_t x = i < a.c_.size() ? a.c_[i] : 0, y = i < b.c_.size() ? b.c_[i] : 0;
      c[i] = x >= y ? x - y : x + (p - y);
    }
    return FpPoly(p, std::move(c));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.p_ ? a.p_ : b.p_;
    if (a.IsZero() || b.IsZero()) return FpPoly(p, {});
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + MulMod(a.c_[i], b.c_[j], p)) % p;
    }
    return FpPoly(p, std::move(c));
  }
  FpPoly Scaled(std::uint64_t k) const {
    FpPoly r(*this);
    for (auto& a : r.c_) a = MulMod(a, k % p_, p_);
    r.Trim();
    return r;
  }
  bool operator==(const FpPoly& o) const { return c_ == o.c_; }
  bool operator!=(const FpPoly& o) const { return c_ != o.c_; }

  std::pair<FpPoly, FpPoly> DivMod(const FpPoly& d) const {
    if (d.IsZero()) Fail(ErrorKind::kInvalidInput, "F_p division by zero");
    if (degree() < d.degree()) return {FpPoly(p_, {}), *this};
    std::vector<std::uint64_t> r = c_;
    std::vector<std::uint64_t> q(c_.size() - d.c_.size() + 1);
    std::uint64_t inv = InvMod(d.lead(), p_);
    for (int k = degree() - d.degree(); k >= 0; --k) {
      std::uint64_t t = MulMod(r[static_cast<std::size_t>(k + d.degree())], inv, p_);
      q[static_cast<std::size_t>(k)] = t;
      if (!t) continue;
      for (int j = 0; j <= d.degree(); ++j) {
        auto& slot = r[static_cast<std::size_t>(k + j)];
        std::uint64_t s = MulMod(t, d.c_[static_cast<std::size_t>(j)], p_);
        slot = slot >= s ? slot - s : slot + (p_ - s);
      }
    }
    return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
  }
  FpPoly operator%(const FpPoly& d) const { return DivMod(d).second; }
  FpPoly operator/(const FpPoly& d) const { return DivMod(d).first; }

  FpPoly Derivative() const {
    std::vector<std::uint64_t> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(MulMod(c_[i], i % p_, p_));
    return FpPoly(p_, std::move(c));
  }

  std::uint64_t Eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (MulMod(acc, x, p_) + *it) % p_;
    return acc;
  }

 private:
  void Trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> c_;
};

inline FpPoly Gcd(FpPoly a, FpPoly b) {
  while (!b.IsZero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.Monic();
}

// s*a + t*b = gcd (monic).
inline void ExtendedGcd(const FpPoly& a, const FpPoly& b, FpPoly& g, FpPoly& s, FpPoly& t) {
  std::uint64_t p = a.prime() ? a.prime() : b.prime();
  FpPoly r0 = a, r1 = b, s0 = FpPoly::Constant(p, 1), s1(p, {}), t0(p, {}), t1 = FpPoly::Constant(p, 1);
  while (!r1.IsZero()) {
    auto [q, r] = r0.DivMod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = InvMod(r0.lead(), p);
  g = r0.Scaled(inv);
  s = s0.Scaled(inv);
  t = t0.Scaled(inv);
}

inline FpPoly PowMod(FpPoly base, const BigInt& exponent, const FpPoly& m) {
  FpPoly r = FpPoly::Constant(m.prime(), 1) % m;
  base = base % m;
  std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) r = (r * base) % m;
  }
  return r;
}

namespace detail {

inline FpPoly PthRoot(const FpPoly& f) {
  std::uint64_t p = f.prime();
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return FpPoly(p, std::move(c));
}

inline void SquarefreeInto(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  std::uint64_t p = f.prime();
  if (f.degree() <= 0) return;
  FpPoly d = f.Derivative();
  if (d.IsZero()) {
    SquarefreeInto(PthRoot(f), mult * static_cast<int>(p), out);
    return;
  }
  FpPoly c = Gcd(f, d);
  FpPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = Gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.Monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) SquarefreeInto(PthRoot(c), mult * static_cast<int>(p), out);
}

// Splits a squarefree monic f whose irreducible factors all have degree d.
inline void EqualDegreeInto(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  std::uint64_t p = f.prime();
  BigInt half = (Pow(FromU64(p), static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(f.degree()));
    for (auto& a : c) a = rng() % p;
    FpPoly a(p, c);
    if (a.degree() <= 0) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(md-1)), with md = d.
      FpPoly acc = a % f, term = a % f;
      for (int k = 1; k < d; ++k) {
        term = (term * term) % f;
        acc = acc + term;
      }
      b = acc;
    } else {
      b = PowMod(a, half, f) - FpPoly::Constant(p, 1);
    }
    FpPoly g = Gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      EqualDegreeInto(g, d, rng, out);
      EqualDegreeInto(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

inline bool FpLess(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs() < b.coeffs();
}

// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
inline std::vector<std::pair<FpPoly, int>> Factor(const FpPoly& f) {
  if (f.IsZero()) Fail(ErrorKind::kZeroElement, "factoring the zero polynomial");
  std::uint64_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> sqf, out;
  detail::SquarefreeInto(f.Monic(), 1, sqf);
  std::mt19937_64 rng(0x5eed0000ULL + p);
  for (const auto& [part, mult] : sqf) {
    FpPoly rest = part;
    FpPoly h = FpPoly::X(p) % rest;
    const FpPoly x = FpPoly::X(p);
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      h = PowMod(h, FromU64(p), rest);
      FpPoly g = Gcd(rest, h - x);
      if (g.degree() > 0) {
        std::vector<FpPoly> pieces;
        detail::EqualDegreeInto(g, d, rng, pieces);
        for (auto& q : pieces) out.emplace_back(std::move(q), mult);
        rest = rest / g;
        h = h % rest;
      }
    }
    if (rest.degree() > 0) out.emplace_back(rest, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return FpLess(a.first, b.first);
    return a.second < b.second;
  });
  return out;
}

inline bool IsSquarefree(const FpPoly& f) { return f.degree() <= 0 || Gcd(f, f.Derivative()).degree() == 0; }

}  // namespace consmap
