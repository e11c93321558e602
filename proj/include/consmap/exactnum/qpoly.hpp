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
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/rational.hpp"

namespace consmap {

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { Trim(); }
  QPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    Trim();
  }
  static QPoly Constant(const Rational& a) { return QPoly(std::vector<Rational>{a}); }
  static QPoly X() { return QPoly(std::vector<Rational>{0, 1}); }
  static QPoly Monomial(const Rational& a, int degree) {
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    c.back() = a;
    return QPoly(std::move(c));
  }
  static QPoly FromIntegers(const std::vector<BigInt>& coeffs) {
    std::vector<Rational> c;
    for (const auto& v : coeffs) c.emplace_back(v);
    return QPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool IsZero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : Rational(0); }
  const Rational& lead() const { return c_.back(); }
  bool IsMonic() const { return !c_.empty() && c_.back() == 1; }

  QPoly Monic() const {
    if (IsZero()) return *this;
    QPoly r(*this);
    Rational l = lead();
    for (auto& a : r.c_) a /= l;
    return r;
  }

  QPoly& operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    Trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    Trim();
    return *this;
  }
  QPoly operator-() const {
    QPoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.IsZero() || b.IsZero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(c));
  }
  QPoly Scaled(const Rational& q) const {
    if (q == 0) return {};
    QPoly r(*this);
    for (auto& a : r.c_) a *= q;
    return r;
  }
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return c_ != o.c_; }

  // Quotient and remainder over Q.
  std::pair<QPoly, QPoly> DivMod(const QPoly& d) const {
    if (d.IsZero()) Fail(ErrorKind::kInvalidInput, "polynomial division by zero");
    if (degree() < d.degree()) return {QPoly(), *this};
    std::vector<Rational> r = c_;
    std::vector<Rational> q(c_.size() - d.c_.size() + 1);
    const Rational inv = Rational(1) / d.lead();
    for (int k = degree() - d.degree(); k >= 0; --k) {
      Rational t = r[static_cast<std::size_t>(k + d.degree())] * inv;
      q[static_cast<std::size_t>(k)] = t;
      if (t == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= t * d.c_[static_cast<std::size_t>(j)];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
  }
  QPoly operator%(const QPoly& d) const { return DivMod(d).second; }
  QPoly operator/(const QPoly& d) const { return DivMod(d).first; }

  QPoly Derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(c));
  }

  Rational Eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  template <typename T>
  std::complex<T> EvalComplex(std::complex<T> z) const {
    std::complex<T> acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + std::complex<T>(static_cast<T>(it->get_d()));
    return acc;
  }

  // this(g(x))
  QPoly Compose(const QPoly& g) const {
    QPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Constant(*it);
    return acc;
  }
  // this(g(x)) mod m, reducing as it goes.
  QPoly ComposeMod(const QPoly& g, const QPoly& m) const {
    QPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * g + Constant(*it)) % m;
    return acc;
  }

  // lcm of coefficient denominators.
  BigInt DenominatorLcm() const {
    BigInt d = 1;
    for (const auto& a : c_) d = Lcm(d, BigInt(a.get_den()));
    return d;
  }
  bool IsIntegral() const { return DenominatorLcm() == 1; }

  // Primitive integer polynomial with positive leading coefficient, proportional to this.
  std::vector<BigInt> PrimitiveIntegerCoeffs() const {
    std::vector<BigInt> out;
    if (IsZero()) return out;
    BigInt d = DenominatorLcm();
    BigInt g = 0;
    for (const auto& a : c_) {
      BigInt v = BigInt(a * d);
      out.push_back(v);
      g = Gcd(g, v);
    }
    if (out.back() < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
  }
  QPoly PrimitivePart() const { return FromIntegers(PrimitiveIntegerCoeffs()); }

  std::string ToString(const std::string& var = "x") const {
    if (IsZero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rational& a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      bool neg = a < 0;
      Rational m = neg ? Rational(-a) : a;
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      bool unit = (m == 1);
      if (!unit || i == 0) s += m.get_str();
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

  // Accepts sums of terms like "3/2*x^2", "-x", "5" in the given variable.
  static QPoly Parse(const std::string& text, const std::string& var = "x") {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) Fail(ErrorKind::kParseError, "empty polynomial");
    QPoly out;
    std::size_t i = 0;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      }
      std::size_t j = i;
      while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
      std::string term = s.substr(i, j - i);
      if (term.empty()) Fail(ErrorKind::kParseError, "dangling sign in '" + text + "'");
      Rational coeff = 1;
      int deg = 0;
      std::size_t vpos = term.find(var);
      if (vpos == std::string::npos) {
        coeff = ParseRational(term);
      } else {
        std::string head = term.substr(0, vpos);
        if (!head.empty()) {
          if (head.back() != '*') Fail(ErrorKind::kParseError, "expected '*' before variable in '" + term + "'");
          head.pop_back();
          coeff = ParseRational(head);
        }
        std::string tail = term.substr(vpos + var.size());
        deg = 1;
        if (!tail.empty()) {
          if (tail[0] != '^') Fail(ErrorKind::kParseError, "bad exponent in '" + term + "'");
          try {
            std::size_t used = 0;
            deg = std::stoi(tail.substr(1), &used);
            if (used + 1 != tail.size() || deg < 0) throw std::invalid_argument("exp");
          } catch (const std::exception&) {
            Fail(ErrorKind::kParseError, "bad exponent in '" + term + "'");
          }
        }
      }
      out += Monomial(coeff * sign, deg);
      i = j;
    }
    return out;
  }

 private:
  void Trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Monic gcd (zero if both are zero).
inline QPoly Gcd(QPoly a, QPoly b) {
  while (!b.IsZero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.Monic();
}

struct XgcdResult {
  QPoly g, s, t;  // s*a + t*b = g, g monic
};

inline XgcdResult ExtendedGcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b, s0 = QPoly::Constant(1), s1, t0, t1 = QPoly::Constant(1);
  while (!r1.IsZero()) {
    auto [q, r] = r0.DivMod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.IsZero()) return {r0, s0, t0};
  Rational inv = Rational(1) / r0.lead();
  return {r0.Scaled(inv), s0.Scaled(inv), t0.Scaled(inv)};
}

// Res(a, b) over Q through the Euclidean remainder sequence.
inline Rational Resultant(QPoly a, QPoly b) {
  if (a.IsZero() || b.IsZero()) return 0;
  Rational sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() * b.degree()) % 2 == 1) sign = -sign;
  }
  Rational acc = 1;
  while (true) {
    if (b.degree() == 0) return sign * acc * Pow(b.lead(), a.degree());
    QPoly r = a % b;
    if (r.IsZero()) return 0;
    if ((a.degree() * b.degree()) % 2 == 1) sign = -sign;
    acc *= Pow(b.lead(), a.degree() - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
}

inline QPoly PowMod(QPoly base, unsigned long exponent, const QPoly& m) {
  QPoly r = QPoly::Constant(1) % m;
  base = base % m;
  while (exponent) {
    if (exponent & 1) r = (r * base) % m;
    base = (base * base) % m;
    exponent >>= 1;
  }
  return r;
}

inline bool IsSquarefree(const QPoly& f) { return f.degree() <= 0 || Gcd(f, f.Derivative()).degree() == 0; }

// Newton interpolation through (x_i, y_i) with distinct rational nodes.
inline QPoly Interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  QPoly out = QPoly::Constant(dd[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) out = out * QPoly(std::vector<Rational>{-xs[k], 1}) + QPoly::Constant(dd[k]);
  return out;
}

// Lexicographic order by degree first, then coefficients from the constant term up.
inline bool CanonicalLess(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

}  // namespace consmap
