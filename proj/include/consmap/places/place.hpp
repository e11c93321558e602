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
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/matrix.hpp"
#include "consmap/exactnum/rational.hpp"
#include "consmap/exactnum/roots.hpp"
#include "consmap/numberfields/number_field.hpp"

namespace consmap {

// A set of places of Q: finitely many primes or all primes but finitely many,
// optionally with the Archimedean place.
class PlaceSet {
 public:
  static PlaceSet Finite(std::set<std::uint64_t> primes, bool archimedean = false) {
    PlaceSet s;
    s.primes_ = std::move(primes);
    s.cofinite_ = false;
    s.arch_ = archimedean;
    s.Validate();
    return s;
  }
  static PlaceSet AllBut(std::set<std::uint64_t> excluded, bool archimedean) {
    PlaceSet s;
    s.primes_ = std::move(excluded);
    s.cofinite_ = true;
    s.arch_ = archimedean;
    s.Validate();
    return s;
  }
  static PlaceSet All() { return AllBut({}, true); }
  static PlaceSet NonArchimedean() { return AllBut({}, false); }

  bool cofinite() const { return cofinite_; }
  bool archimedean() const { return arch_; }
  // Listed primes (members if finite, exclusions if cofinite).
  const std::set<std::uint64_t>& listed() const { return primes_; }

  bool Contains(std::uint64_t p) const { return cofinite_ ? !primes_.count(p) : primes_.count(p) > 0; }
  bool IsFinite() const { return !cofinite_; }

  // Primes of S inside the window (all of S when S is finite).
  std::vector<std::uint64_t> PrimesIn(const std::vector<std::uint64_t>& window) const {
    std::vector<std::uint64_t> out;
    if (!cofinite_) {
      out.assign(primes_.begin(), primes_.end());
    } else {
      for (auto p : window)
        if (Contains(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::uint64_t SmallestPrime() const {
    if (!cofinite_) {
      if (primes_.empty()) Fail(ErrorKind::kInvalidInput, "place set has no primes");
      return *primes_.begin();
    }
    for (std::uint64_t p = 2;; ++p)
      if (IsPrime(p) && Contains(p)) return p;
  }
  bool HasPrimes() const { return cofinite_ || !primes_.empty(); }

  bool operator==(const PlaceSet& o) const { return primes_ == o.primes_ && cofinite_ == o.cofinite_ && arch_ == o.arch_; }
  bool operator!=(const PlaceSet& o) const { return !(*this == o); }

  std::string ToString() const {
    std::string s;
    if (cofinite_) {
      s = "all primes";
      if (!primes_.empty()) {
        s += " except {";
        bool first = true;
        for (auto p : primes_) {
          s += (first ? "" : ",") + std::to_string(p);
          first = false;
        }
        s += "}";
      }
    } else {
      s = "{";
      bool first = true;
      for (auto p : primes_) {
        s += (first ? "" : ",") + std::to_string(p);
        first = false;
      }
      s += "}";
    }
    if (arch_) s += " + inf";
    return s;
  }

 private:
  void Validate() const {
    for (auto p : primes_)
      if (!IsPrime(p)) Fail(ErrorKind::kInvalidInput, std::to_string(p) + " is not prime");
    if (!cofinite_ && primes_.empty() && !arch_) Fail(ErrorKind::kInvalidInput, "empty place set");
  }
  std::set<std::uint64_t> primes_;
  bool cofinite_ = false;
  bool arch_ = false;
};

enum class PlaceKind { kFinite = 0, kReal = 1, kComplex = 2 };

// Identity of a place: field, kind, prime (finite only), canonical index.
struct PlaceKey {
  FieldId field = 0;
  PlaceKind kind = PlaceKind::kFinite;
  std::uint64_t prime = 0;
  int index = 0;

  bool archimedean() const { return kind != PlaceKind::kFinite; }
  auto Tie() const { return std::make_tuple(field, static_cast<int>(kind), prime, index); }
  bool operator<(const PlaceKey& o) const { return Tie() < o.Tie(); }
  bool operator==(const PlaceKey& o) const { return Tie() == o.Tie(); }
  bool operator!=(const PlaceKey& o) const { return !(*this == o); }

  std::string Id() const {
    std::string f = std::to_string(field) + "/";
    switch (kind) {
      case PlaceKind::kFinite: return f + "p" + std::to_string(prime) + "/" + std::to_string(index);
      case PlaceKind::kReal: return f + "real/" + std::to_string(index);
      case PlaceKind::kComplex: return f + "complex/" + std::to_string(index);
    }
    return f;
  }

  static PlaceKey Parse(const std::string& id) {
    auto bad = [&] { Fail(ErrorKind::kParseError, "bad place id '" + id + "'"); };
    auto s1 = id.find('/');
    if (s1 == std::string::npos) bad();
    auto s2 = id.find('/', s1 + 1);
    if (s2 == std::string::npos) bad();
    PlaceKey k;
    try {
      std::size_t used = 0;
      k.field = std::stoi(id.substr(0, s1), &used);
      if (used != s1) bad();
      std::string mid = id.substr(s1 + 1, s2 - s1 - 1);
      std::string tail = id.substr(s2 + 1);
      k.index = std::stoi(tail, &used);
      if (used != tail.size() || k.index < 0) bad();
      if (mid == "real") {
        k.kind = PlaceKind::kReal;
      } else if (mid == "complex") {
        k.kind = PlaceKind::kComplex;
      } else if (mid.size() > 1 && mid[0] == 'p') {
        k.kind = PlaceKind::kFinite;
        k.prime = std::stoull(mid.substr(1), &used);
        if (used + 1 != mid.size()) bad();
      } else {
        bad();
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      bad();
    }
    return k;
  }
};

// Working precision data for the completion K_v: a monic factor of the integral
// minimal polynomial over Z/p^N.
struct PAdicFactorHandle {
  std::uint64_t prime = 0;
  unsigned precision = 0;
  ZPoly coefficients;
  bool certified = false;
};

// p-maximal order data shared by the places of a field above p.
struct LocalOrder {
  std::uint64_t prime = 0;
  QMatrix basis;      // rows in theta coordinates
  QMatrix basis_inv;  // theta coordinates -> order coordinates
  std::vector<ZMatrix> structure;  // structure[i][j] = order coordinates of w_i * w_j
  bool equation_order = true;      // Z[theta_int] was already p-maximal
  int round2_steps = 0;
};

struct PrimeIdeal {
  std::shared_ptr<const LocalOrder> order;
  int e = 1;
  int f = 1;
  QMatrix hnf;        // canonical basis in theta coordinates
  ZMatrix gens;       // basis in order coordinates
  ZMatrix beta_mul;   // row i = order coordinates of w_i * beta
};

struct Place {
  PlaceKey key;
  int field_degree = 1;
  int e = 1;
  int f = 1;
  std::shared_ptr<const PrimeIdeal> ideal;
  PAdicFactorHandle handle;
  Complex root;  // Archimedean places: the embedding image of theta

  bool archimedean() const { return key.archimedean(); }
  std::uint64_t prime() const { return key.prime; }
  int local_degree() const {
    switch (key.kind) {
      case PlaceKind::kFinite: return e * f;
      case PlaceKind::kReal: return 1;
      case PlaceKind::kComplex: return 2;
    }
    return 0;
  }
  Rational lambda() const { return MakeRational(local_degree(), field_degree); }
  std::string Id() const { return key.Id(); }
};

}  // namespace consmap
