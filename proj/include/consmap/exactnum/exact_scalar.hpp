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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/rational.hpp"

namespace consmap {

// An element of Q + sum_p Q*log(p) + sum_p Q/log(p), plus a double residual
// carrying Archimedean magnitudes. Symbolic parts are exact and canonical
// (no zero coefficients); the residual is compared only through ApproxEq.
class ExactScalar {
 public:
  using Terms = std::map<std::uint64_t, Rational>;

  ExactScalar() = default;
  ExactScalar(long v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& q) : rat_(q) {}  // NOLINT(google-explicit-constructor)

  static ExactScalar Log(std::uint64_t p, const Rational& coeff = 1) {
    ExactScalar s;
    s.AddTerm(s.log_, p, coeff);
    return s;
  }
  static ExactScalar InvLog(std::uint64_t p, const Rational& coeff = 1) {
    ExactScalar s;
    s.AddTerm(s.inv_log_, p, coeff);
    return s;
  }
  static ExactScalar Residual(double r) {
    ExactScalar s;
    s.residual_ = r;
    return s;
  }

  const Rational& rational() const { return rat_; }
  const Terms& log_terms() const { return log_; }
  const Terms& inv_log_terms() const { return inv_log_; }
  double residual() const { return residual_; }

  bool IsSymbolicZero() const { return rat_ == 0 && log_.empty() && inv_log_.empty(); }
  bool IsZero() const { return IsSymbolicZero() && residual_ == 0.0; }
  // Pure rational: no log parts and an exactly zero residual.
  bool IsRational() const { return log_.empty() && inv_log_.empty() && residual_ == 0.0; }

  // log p evaluated in double precision, ascending prime order, fixed summation order.
  double ToDouble() const {
    double total = rat_.get_d();
    for (const auto& [p, a] : log_) total += a.get_d() * std::log(static_cast<double>(p));
    for (const auto& [p, b] : inv_log_) total += b.get_d() / std::log(static_cast<double>(p));
    return total + residual_;
  }

  bool ApproxEq(const ExactScalar& other, double tolerance = 1e-9) const {
    return SymbolicEquals(other) && std::fabs(residual_ - other.residual_) <= tolerance;
  }
  bool SymbolicEquals(const ExactScalar& other) const {
    return rat_ == other.rat_ && log_ == other.log_ && inv_log_ == other.inv_log_;
  }
  bool operator==(const ExactScalar& other) const {
    return SymbolicEquals(other) && residual_ == other.residual_;
  }
  bool operator!=(const ExactScalar& other) const { return !(*this == other); }

  ExactScalar& operator+=(const ExactScalar& o) {
    rat_ += o.rat_;
    for (const auto& [p, a] : o.log_) AddTerm(log_, p, a);
    for (const auto& [p, b] : o.inv_log_) AddTerm(inv_log_, p, b);
    residual_ += o.residual_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
  ExactScalar operator-() const {
    ExactScalar s(*this);
    s.rat_ = -s.rat_;
    for (auto& [p, a] : s.log_) a = -a;
    for (auto& [p, b] : s.inv_log_) b = -b;
    s.residual_ = -s.residual_;
    return s;
  }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

  ExactScalar Scaled(const Rational& q) const {
    if (q == 0) return ExactScalar();
    ExactScalar s(*this);
    s.rat_ *= q;
    for (auto& [p, a] : s.log_) a *= q;
    for (auto& [p, b] : s.inv_log_) b *= q;
    s.residual_ *= q.get_d();
    return s;
  }

  // Multiplication by log p. Only rational and 1/log parts are allowed.
  ExactScalar MulLog(std::uint64_t p) const {
    if (!log_.empty()) Fail(ErrorKind::kUnsupportedProduct, "log term times log(" + std::to_string(p) + ")");
    if (residual_ != 0.0) Fail(ErrorKind::kUnsupportedProduct, "residual times log(" + std::to_string(p) + ")");
    ExactScalar s;
    for (const auto& [q, b] : inv_log_) {
      if (q != p) Fail(ErrorKind::kUnsupportedProduct, "1/log(" + std::to_string(q) + ") times log(" + std::to_string(p) + ")");
      s.rat_ += b;
    }
    s.AddTerm(s.log_, p, rat_);
    return s;
  }

  // Full product; raises UnsupportedProduct when the result leaves the domain.
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.IsPureRationalPart()) return b.Scaled(a.rat_);
    if (b.IsPureRationalPart()) return a.Scaled(b.rat_);
    ExactScalar out;
    out.rat_ = a.rat_ * b.rat_;
    out.residual_ = a.residual_ * b.residual_ + a.residual_ * b.rat_.get_d() + b.residual_ * a.rat_.get_d();
    for (const auto& [p, x] : a.log_) out.AddTerm(out.log_, p, x * b.rat_);
    for (const auto& [p, x] : b.log_) out.AddTerm(out.log_, p, x * a.rat_);
    for (const auto& [p, x] : a.inv_log_) out.AddTerm(out.inv_log_, p, x * b.rat_);
    for (const auto& [p, x] : b.inv_log_) out.AddTerm(out.inv_log_, p, x * a.rat_);
    auto reject = [](const std::string& why) { Fail(ErrorKind::kUnsupportedProduct, why); };
    if (!a.log_.empty() && !b.log_.empty()) reject("log times log");
    if (!a.inv_log_.empty() && !b.inv_log_.empty()) reject("1/log times 1/log");
    if ((a.residual_ != 0.0 && (!b.log_.empty() || !b.inv_log_.empty())) ||
        (b.residual_ != 0.0 && (!a.log_.empty() || !a.inv_log_.empty())))
      reject("residual times symbolic logarithm");
    auto cross = [&](const Terms& logs, const Terms& invs) {
      for (const auto& [p, x] : logs)
        for (const auto& [q, y] : invs) {
          if (p != q) reject("log(" + std::to_string(p) + ") / log(" + std::to_string(q) + ")");
          out.rat_ += x * y;
        }
    };
    cross(a.log_, b.inv_log_);
    cross(b.log_, a.inv_log_);
    return out;
  }

  // True iff the value is b/log p for a rational b (zero included).
  bool IsRationalMultipleOfInvLog(std::uint64_t p) const {
    if (rat_ != 0 || !log_.empty() || residual_ != 0.0) return false;
    if (inv_log_.empty()) return true;
    return inv_log_.size() == 1 && inv_log_.begin()->first == p;
  }

  // "q0 + a*log(p) + b/log(q) + ~r"
  std::string ToString() const {
    std::string s = rat_.get_str();
    for (const auto& [p, a] : log_) s += " + " + a.get_str() + "*log(" + std::to_string(p) + ")";
    for (const auto& [p, b] : inv_log_) s += " + " + b.get_str() + "/log(" + std::to_string(p) + ")";
    if (residual_ != 0.0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", residual_);
      s += " + ~";
      s += buf;
    }
    return s;
  }

  static ExactScalar Parse(const std::string& text) {
    ExactScalar out;
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = text.find(" + ", start);
      parts.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
      if (pos == std::string::npos) break;
      start = pos + 3;
    }
    for (std::string part : parts) {
      while (!part.empty() && part.front() == ' ') part.erase(part.begin());
      while (!part.empty() && part.back() == ' ') part.pop_back();
      if (part.empty()) Fail(ErrorKind::kParseError, "empty term in '" + text + "'");
      if (part[0] == '~') {
        try {
          std::size_t used = 0;
          out.residual_ += std::stod(part.substr(1), &used);
          if (used + 1 != part.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          Fail(ErrorKind::kParseError, "bad residual '" + part + "'");
        }
        continue;
      }
      auto prime_in = [&](std::size_t open) -> std::uint64_t {
        std::size_t close = part.find(')', open);
        if (close == std::string::npos || close + 1 != part.size()) Fail(ErrorKind::kParseError, "bad term '" + part + "'");
        std::string digits = part.substr(open + 1, close - open - 1);
        std::uint64_t p = 0;
        try {
          std::size_t used = 0;
          p = std::stoull(digits, &used);
          if (used != digits.size()) throw std::invalid_argument("digits");
        } catch (const std::exception&) {
          Fail(ErrorKind::kParseError, "bad prime in '" + part + "'");
        }
        if (!IsPrime(p)) Fail(ErrorKind::kParseError, "log of non-prime in '" + part + "'");
        return p;
      };
      if (std::size_t at = part.find("*log("); at != std::string::npos) {
        out.AddTerm(out.log_, prime_in(at + 4), ParseRational(part.substr(0, at)));
      } else if (std::size_t at2 = part.find("/log("); at2 != std::string::npos) {
        out.AddTerm(out.inv_log_, prime_in(at2 + 4), ParseRational(part.substr(0, at2)));
      } else {
        out.rat_ += ParseRational(part);
      }
    }
    return out;
  }

 private:
  bool IsPureRationalPart() const { return log_.empty() && inv_log_.empty() && residual_ == 0.0; }

  static void AddTerm(Terms& terms, std::uint64_t p, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms.emplace(p, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  Rational rat_;
  Terms log_;
  Terms inv_log_;
  double residual_ = 0.0;
};

// Sign decided through ToDouble; SignUndetermined when a value with a nonzero
// symbolic part sits inside the tolerance band.
inline ExactScalar AbsoluteValue(const ExactScalar& x, double tolerance = 1e-9) {
  if (x.IsZero()) return x;
  if (x.IsRational()) return x.rational() < 0 ? -x : x;
  if (x.IsSymbolicZero()) return x.residual() < 0 ? -x : x;
  double v = x.ToDouble();
  if (std::fabs(v) < tolerance) Fail(ErrorKind::kSignUndetermined, "cannot decide the sign of " + x.ToString());
  return v < 0 ? -x : x;
}

}  // namespace consmap
