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

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "consmap/error.hpp"

namespace consmap {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational MakeRational(const BigInt& num, const BigInt& den) {
  if (den == 0) Fail(ErrorKind::kInvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string ToString(const Rational& q) { return q.get_str(); }

inline Rational ParseRational(const std::string& text) {
  Rational q;
  std::string trimmed;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') trimmed.push_back(ch);
  if (trimmed.empty() || q.set_str(trimmed, 10) != 0) Fail(ErrorKind::kParseError, "bad rational '" + text + "'");
  if (q.get_den() == 0) Fail(ErrorKind::kParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline BigInt Abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline Rational Abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline BigInt Gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt Lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline BigInt Pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline Rational Pow(const Rational& base, long exponent) {
  Rational r(1);
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  unsigned long e = static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Floor-style modulus with result in [0, m).
inline BigInt Mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Representative in (-m/2, m/2].
inline BigInt SymmetricMod(const BigInt& a, const BigInt& m) {
  BigInt r = Mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  BigInt b(std::to_string(n));
  return mpz_probab_prime_p(b.get_mpz_t(), 30) > 0;
}

inline bool IsPrime(const BigInt& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

inline std::uint64_t ToU64(const BigInt& a) {
  if (a < 0 || mpz_sizeinbase(a.get_mpz_t(), 2) > 64) Fail(ErrorKind::kInvalidInput, "integer does not fit 64 bits");
  std::uint64_t lo = mpz_get_ui(a.get_mpz_t());
  if constexpr (sizeof(unsigned long) < 8) Fail(ErrorKind::kInvalidInput, "platform long too small");
  return lo;
}

inline BigInt FromU64(std::uint64_t v) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
  return r;
}

// p-adic valuation of a nonzero integer.
inline long Valuation(const BigInt& a, const BigInt& p) {
  if (a == 0) Fail(ErrorKind::kZeroElement, "valuation of zero");
  BigInt rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

inline long Valuation(const Rational& a, const BigInt& p) {
  return Valuation(BigInt(a.get_num()), p) - Valuation(BigInt(a.get_den()), p);
}

namespace detail {

inline BigInt PollardBrent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = seed % 97 + 2, c = seed % 89 + 1, g = 1, q = 1, x, ys;
  unsigned long m = 64, r = 1;
  auto f = [&](const BigInt& v) { return Mod(v * v + c, n); };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = Mod(q * Abs(BigInt(x - y)), n);
      }
      g = Gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = Gcd(Abs(BigInt(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

inline void FactorInto(const BigInt& n, std::map<BigInt, int>& out) {
  if (n == 1) return;
  if (IsPrime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    BigInt d = PollardBrent(n, seed);
    if (d != n && d != 1) {
      FactorInto(d, out);
      FactorInto(BigInt(n / d), out);
      return;
    }
  }
}

}  // namespace detail

// Prime factorization of |n| (n != 0).
inline std::map<BigInt, int> FactorInteger(BigInt n) {
  if (n == 0) Fail(ErrorKind::kZeroElement, "factorization of zero");
  n = Abs(n);
  std::map<BigInt, int> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[BigInt(p)];
      n /= p;
    }
  }
  detail::FactorInto(n, out);
  return out;
}

inline std::vector<std::uint64_t> PrimeDivisors(const BigInt& n) {
  std::vector<std::uint64_t> primes;
  if (n == 0) return primes;
  for (const auto& [p, k] : FactorInteger(n)) primes.push_back(ToU64(p));
  return primes;
}

inline double Log(const Rational& q) {
  // log of a positive rational without overflow.
  long ne = 0, de = 0;
  double nm = mpz_get_d_2exp(&ne, q.get_num_mpz_t());
  double dm = mpz_get_d_2exp(&de, q.get_den_mpz_t());
  return std::log(nm) - std::log(dm) + static_cast<double>(ne - de) * std::log(2.0);
}

}  // namespace consmap
