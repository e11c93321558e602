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
#include <atomic>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/matrix.hpp"
#include "consmap/numberfields/number_field.hpp"
#include "consmap/places/archimedean.hpp"
#include "consmap/places/local.hpp"
#include "consmap/places/place.hpp"

namespace consmap {

struct CompositumResult {
  FieldId field = 0;
  Embedding from_first;
  Embedding from_second;
};

// Append-only lattice of number fields with at most one embedding per ordered pair.
// All public members are safe to call concurrently.
class FieldRegistry {
 public:
  static constexpr FieldId kRationals = 0;
  static constexpr int kDefaultDegreeCap = 24;

  explicit FieldRegistry(int degree_cap = kDefaultDegreeCap) : degree_cap_(degree_cap), serial_(NextSerial()) {
    fields_.emplace_back(kRationals, QPoly::X());
  }
  FieldRegistry(const FieldRegistry&) = delete;
  FieldRegistry& operator=(const FieldRegistry&) = delete;

  int degree_cap() const { return degree_cap_; }
  // Distinct for every registry created in the process; keys caches held outside the registry.
  std::uint64_t serial() const { return serial_; }

  std::size_t size() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return fields_.size();
  }
  const NumberField& Field(FieldId id) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (id < 0 || static_cast<std::size_t>(id) >= fields_.size()) Fail(ErrorKind::kInvalidInput, "unknown field id " + std::to_string(id));
    return fields_[static_cast<std::size_t>(id)];
  }
  std::vector<FieldId> FieldIds() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::vector<FieldId> ids;
    for (const auto& f : fields_) ids.push_back(f.id());
    return ids;
  }
  std::optional<FieldId> FindField(const QPoly& min_poly) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    QPoly m = min_poly.Monic();
    for (const auto& f : fields_)
      if (f.min_poly() == m) return f.id();
    return std::nullopt;
  }

  FieldId AddField(const QPoly& min_poly) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (min_poly.degree() < 1) Fail(ErrorKind::kInvalidInput, "constant minimal polynomial");
    if (!min_poly.IsMonic()) Fail(ErrorKind::kInvalidInput, "minimal polynomial must be monic: " + min_poly.ToString());
    if (min_poly.degree() == 1) return kRationals;
    if (min_poly.degree() > degree_cap_)
      Fail(ErrorKind::kDegreeCapExceeded, "degree " + std::to_string(min_poly.degree()) + " > " + std::to_string(degree_cap_));
    if (auto id = FindField(min_poly)) return *id;
    if (!IsIrreducible(min_poly)) Fail(ErrorKind::kReduciblePolynomial, min_poly.ToString());
    FieldId id = static_cast<FieldId>(fields_.size());
    fields_.emplace_back(id, min_poly);
    return id;
  }

  Embedding Identity(FieldId k) const { return {k, k, QPoly::X() % Field(k).min_poly()}; }

  std::optional<Embedding> FindEmbedding(FieldId src, FieldId tgt) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Field(src);
    Field(tgt);
    if (src == tgt) return Identity(src);
    if (src == kRationals) return Embedding{src, tgt, QPoly()};
    auto it = closure_.find({src, tgt});
    if (it == closure_.end()) return std::nullopt;
    return Embedding{src, tgt, it->second};
  }
  bool Embeds(FieldId src, FieldId tgt) const { return FindEmbedding(src, tgt).has_value(); }
  Embedding RequireEmbedding(FieldId src, FieldId tgt) const {
    auto e = FindEmbedding(src, tgt);
    if (!e) Fail(ErrorKind::kIndexOutOfRange, Field(src).Name() + " is not embedded in " + Field(tgt).Name());
    return *e;
  }

  // Declared embeddings, excluding identities and maps out of Q.
  std::vector<Embedding> DeclaredEmbeddings() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::vector<Embedding> out;
    for (const auto& [key, img] : declared_) out.push_back({key.first, key.second, img});
    return out;
  }
  // Every proper embedding in the closure, including those out of Q.
  std::vector<Embedding> AllEmbeddings() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::vector<Embedding> out;
    for (const auto& f : fields_)
      if (f.id() != kRationals) out.push_back({kRationals, f.id(), QPoly()});
    for (const auto& [key, img] : closure_) out.push_back({key.first, key.second, img});
    std::sort(out.begin(), out.end(), [](const Embedding& a, const Embedding& b) {
      return std::make_pair(a.source, a.target) < std::make_pair(b.source, b.target);
    });
    return out;
  }

  Embedding DeclareEmbedding(FieldId src, FieldId tgt, const QPoly& image) {
    DeclareEmbeddings({{src, tgt, image}});
    return *FindEmbedding(src, tgt);
  }

  // Declares all embeddings or none.
  void DeclareEmbeddings(const std::vector<Embedding>& embs) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto saved_declared = declared_;
    auto saved_closure = closure_;
    try {
      for (const auto& e : embs) {
        const NumberField& s = Field(e.source);
        const NumberField& t = Field(e.target);
        QPoly img = t.Reduce(e.image);
        if (t.degree() % s.degree() != 0 || !IsRootImage(s, t, img))
          Fail(ErrorKind::kNotAnEmbedding, s.Name() + " -> " + t.Name() + " via " + img.ToString());
        if (e.source == e.target) {
          if (img != QPoly::X() % t.min_poly())
            Fail(ErrorKind::kConflictingEmbedding, "non-identity self map of " + s.Name());
          continue;
        }
        if (e.source == kRationals) continue;
        auto it = declared_.find({e.source, e.target});
        if (it != declared_.end() && it->second != img)
          Fail(ErrorKind::kConflictingEmbedding, s.Name() + " -> " + t.Name() + " already registered");
        declared_[{e.source, e.target}] = img;
      }
      RebuildClosure();
    } catch (...) {
      declared_ = std::move(saved_declared);
      closure_ = std::move(saved_closure);
      throw;
    }
  }

  CompositumResult Compositum(FieldId k, FieldId l);

  // Places.
  const std::vector<Place>& PlacesAbove(FieldId k, std::uint64_t p) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(k, p);
    auto it = finite_.find(key);
    if (it != finite_.end()) return it->second;
    const NumberField& field = Field(k);
    local::PrimeDecomposition dec = local::Decompose(field, p);
    std::vector<Place> places;
    for (std::size_t i = 0; i < dec.ideals.size(); ++i) {
      Place pl;
      pl.key = {k, PlaceKind::kFinite, p, static_cast<int>(i)};
      pl.field_degree = field.degree();
      pl.e = dec.ideals[i]->e;
      pl.f = dec.ideals[i]->f;
      pl.ideal = dec.ideals[i];
      pl.handle = dec.handles[i];
      places.push_back(pl);
    }
    decompositions_[key] = dec.dedekind;
    return finite_.emplace(key, std::move(places)).first->second;
  }
  bool UsedDedekindPath(FieldId k, std::uint64_t p) {
    PlacesAbove(k, p);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return decompositions_.at({k, p});
  }

  const ArchimedeanRoots& Roots(FieldId k) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = roots_.find(k);
    if (it != roots_.end()) return it->second;
    return roots_.emplace(k, ComputeArchimedeanRoots(Field(k))).first->second;
  }

  const std::vector<Place>& ArchimedeanPlaces(FieldId k) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = arch_.find(k);
    if (it != arch_.end()) return it->second;
    const ArchimedeanRoots& r = Roots(k);
    std::vector<Place> places;
    int deg = Field(k).degree();
    for (std::size_t i = 0; i < r.real.size(); ++i) {
      Place pl;
      pl.key = {k, PlaceKind::kReal, 0, static_cast<int>(i)};
      pl.field_degree = deg;
      pl.root = Complex(r.real[i], 0.0);
      places.push_back(pl);
    }
    for (std::size_t i = 0; i < r.complex.size(); ++i) {
      Place pl;
      pl.key = {k, PlaceKind::kComplex, 0, static_cast<int>(i)};
      pl.field_degree = deg;
      pl.root = r.complex[i];
      places.push_back(pl);
    }
    return arch_.emplace(k, std::move(places)).first->second;
  }

  const Place& GetPlace(const PlaceKey& key) {
    const std::vector<Place>& list = key.archimedean() ? ArchimedeanPlaces(key.field) : PlacesAbove(key.field, key.prime);
    for (const auto& pl : list)
      if (pl.key == key) return pl;
    Fail(ErrorKind::kIndexOutOfRange, "no place " + key.Id());
  }

  // The place of k lying below the place w of a field containing k.
  PlaceKey Restrict(const PlaceKey& w, FieldId k) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (w.field == k) return w;
    auto ck = std::make_tuple(w, k);
    auto it = restrict_.find(ck);
    if (it != restrict_.end()) return it->second;
    Embedding emb = RequireEmbedding(k, w.field);
    const NumberField& big = Field(w.field);
    const NumberField& small = Field(k);
    PlaceKey found;
    bool have = false;
    if (!w.archimedean()) {
      const Place& pw = GetPlace(w);
      for (const auto& v : PlacesAbove(k, w.prime)) {
        bool divides = true;
        for (const auto& g : v.ideal->hnf) {
          QVector img = big.Coords(ApplyEmbedding(emb, big, small.FromCoords(g)));
          bool zero = std::all_of(img.begin(), img.end(), [](const Rational& q) { return q == 0; });
          if (zero) continue;
          if (local::IdealValuation(*pw.ideal, img) <= 0) {
            divides = false;
            break;
          }
        }
        if (divides) {
          if (have) Fail(ErrorKind::kPrecisionExhausted, "ambiguous restriction of " + w.Id());
          found = v.key;
          have = true;
        }
      }
    } else {
      const Place& pw = GetPlace(w);
      const ArchimedeanRoots& roots = Roots(k);
      std::complex<long double> z(pw.root.real(), pw.root.imag()), acc(0);
      const auto& c = emb.image.coeffs();
      for (auto i = c.rbegin(); i != c.rend(); ++i) acc = acc * z + std::complex<long double>(static_cast<long double>(i->get_d()));
      Complex image(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < roots.real.size(); ++i) {
        double d = std::abs(image - Complex(roots.real[i], 0));
        if (d < best) {
          best = d;
          found = {k, PlaceKind::kReal, 0, static_cast<int>(i)};
        }
      }
      for (std::size_t i = 0; i < roots.complex.size(); ++i) {
        double d = std::min(std::abs(image - roots.complex[i]), std::abs(image - std::conj(roots.complex[i])));
        if (d < best) {
          best = d;
          found = {k, PlaceKind::kComplex, 0, static_cast<int>(i)};
        }
      }
      double limit = roots.min_separation / 2;
      if (!(best < limit) && small.degree() > 1)
        Fail(ErrorKind::kRootFindingFailure, "cannot match " + w.Id() + " below in " + small.Name());
      have = true;
    }
    if (!have) Fail(ErrorKind::kPrecisionExhausted, "no place below " + w.Id() + " in " + small.Name());
    restrict_.emplace(ck, found);
    return found;
  }

  // Places of l above the place v of k (k embedded in l).
  std::vector<PlaceKey> PlacesOver(FieldId l, const PlaceKey& v) {
    std::vector<PlaceKey> out;
    const std::vector<Place>& candidates = v.archimedean() ? ArchimedeanPlaces(l) : PlacesAbove(l, v.prime);
    for (const auto& w : candidates)
      if (Restrict(w.key, v.field) == v) out.push_back(w.key);
    return out;
  }

  // Places of k over S, with infinite prime sets cut down to the window.
  std::vector<PlaceKey> PlacesOverSet(FieldId k, const PlaceSet& s, const std::vector<std::uint64_t>& window) {
    std::vector<PlaceKey> out;
    for (auto p : s.PrimesIn(window))
      for (const auto& pl : PlacesAbove(k, p)) out.push_back(pl.key);
    if (s.archimedean())
      for (const auto& pl : ArchimedeanPlaces(k)) out.push_back(pl.key);
    return out;
  }

  Rational Lambda(const PlaceKey& v) { return GetPlace(v).lambda(); }

  // ord_v(a) normalized by ord_v(p) = 1.
  Rational Ord(const PlaceKey& v, const QPoly& a) {
    const Place& pl = GetPlace(v);
    if (pl.archimedean()) Fail(ErrorKind::kInvalidInput, "ord at an Archimedean place");
    const NumberField& k = Field(v.field);
    long val = local::IdealValuation(*pl.ideal, k.Coords(a));
    return MakeRational(val, pl.e);
  }

  // |sigma_v(a)| for an Archimedean place.
  double AbsoluteValueAt(const PlaceKey& v, const QPoly& a) {
    const Place& pl = GetPlace(v);
    std::complex<long double> z(pl.root.real(), pl.root.imag()), acc(0);
    QPoly r = Field(v.field).Reduce(a);
    const auto& c = r.coeffs();
    for (auto i = c.rbegin(); i != c.rend(); ++i) acc = acc * z + std::complex<long double>(static_cast<long double>(i->get_d()));
    return static_cast<double>(std::abs(acc));
  }

 private:
  static std::uint64_t NextSerial() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  void RebuildClosure() {
    closure_ = declared_;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::tuple<FieldId, FieldId, QPoly>> additions;
      for (const auto& [ab, img_ab] : closure_) {
        for (const auto& [cd, img_cd] : closure_) {
          if (ab.second != cd.first) continue;
          FieldId a = ab.first, d = cd.second;
          QPoly img = img_ab.ComposeMod(img_cd, Field(d).min_poly());
          if (a == d) {
            if (img != QPoly::X() % Field(a).min_poly())
              Fail(ErrorKind::kConflictingEmbedding, "round trip through " + Field(ab.second).Name() + " is not the identity");
            continue;
          }
          auto it = closure_.find({a, d});
          if (it != closure_.end()) {
            if (it->second != img)
              Fail(ErrorKind::kConflictingEmbedding, "paths " + Field(a).Name() + " -> " + Field(d).Name() + " disagree");
            continue;
          }
          additions.emplace_back(a, d, img);
        }
      }
      for (auto& [a, d, img] : additions) {
        auto it = closure_.find({a, d});
        if (it != closure_.end()) {
          if (it->second != img) Fail(ErrorKind::kConflictingEmbedding, "paths " + Field(a).Name() + " -> " + Field(d).Name() + " disagree");
          continue;
        }
        closure_[{a, d}] = img;
        changed = true;
      }
    }
  }

  mutable std::recursive_mutex mu_;
  int degree_cap_;
  std::uint64_t serial_;
  std::deque<NumberField> fields_;
  std::map<std::pair<FieldId, FieldId>, QPoly> declared_;
  std::map<std::pair<FieldId, FieldId>, QPoly> closure_;
  std::map<std::pair<FieldId, FieldId>, CompositumResult> composita_;
  std::map<std::pair<FieldId, std::uint64_t>, std::vector<Place>> finite_;
  std::map<std::pair<FieldId, std::uint64_t>, bool> decompositions_;
  std::map<FieldId, ArchimedeanRoots> roots_;
  std::map<FieldId, std::vector<Place>> arch_;
  std::map<std::tuple<PlaceKey, FieldId>, PlaceKey> restrict_;
};

namespace detail {

// Polynomials in y over a field M = Q[x]/(m), coefficients ascending.
using MPoly = std::vector<QPoly>;

inline void TrimM(MPoly& a) {
  while (!a.empty() && a.back().IsZero()) a.pop_back();
}

inline MPoly RemM(MPoly a, const MPoly& b, const NumberField& m) {
  TrimM(a);
  QPoly inv = m.Inverse(b.back());
  while (a.size() >= b.size()) {
    QPoly t = m.Mul(a.back(), inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = m.Reduce(a[shift + i] - m.Mul(t, b[i]));
    a.back() = QPoly();
    TrimM(a);
  }
  return a;
}

inline MPoly GcdM(MPoly a, MPoly b, const NumberField& m) {
  TrimM(a);
  TrimM(b);
  while (!b.empty()) {
    MPoly r = RemM(a, b, m);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  QPoly inv = m.Inverse(a.back());
  for (auto& c : a) c = m.Mul(c, inv);
  return a;
}

// Writes target as a polynomial in gen inside the field, if possible.
inline std::optional<QPoly> ExpressInPowers(const NumberField& field, const QPoly& gen, const QPoly& target, int count) {
  QMatrix rows;
  QPoly cur = QPoly::Constant(1);
  for (int i = 0; i < count; ++i) {
    rows.push_back(field.Coords(cur));
    cur = field.Mul(cur, gen);
  }
  auto sol = SolveLeft(rows, field.Coords(target));
  if (!sol) return std::nullopt;
  return QPoly(*sol);
}

}  // namespace detail

inline CompositumResult FieldRegistry::Compositum(FieldId k, FieldId l) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (k == l) return {k, Identity(k), Identity(k)};
  if (auto e = FindEmbedding(k, l)) return {l, *e, Identity(l)};
  if (auto e = FindEmbedding(l, k)) return {k, Identity(k), *e};
  auto ck = std::make_pair(std::min(k, l), std::max(k, l));
  if (auto it = composita_.find(ck); it != composita_.end()) {
    const CompositumResult& r = it->second;
    return {r.field, RequireEmbedding(k, r.field), RequireEmbedding(l, r.field)};
  }
  const NumberField& fk = Field(k);
  const NumberField& fl = Field(l);
  auto finish = [&](FieldId m) {
    CompositumResult r{m, RequireEmbedding(k, m), RequireEmbedding(l, m)};
    composita_[ck] = {m, RequireEmbedding(ck.first, m), RequireEmbedding(ck.second, m)};
    return r;
  };

  // A registered common overfield contains the compositum as the field generated by both.
  std::vector<FieldId> over;
  for (const auto& f : fields_)
    if (f.id() != k && f.id() != l && Embeds(k, f.id()) && Embeds(l, f.id())) over.push_back(f.id());
  std::sort(over.begin(), over.end(), [&](FieldId a, FieldId b) {
    return std::make_pair(Field(a).degree(), a) < std::make_pair(Field(b).degree(), b);
  });
  for (FieldId n : over) {
    const NumberField& fn = Field(n);
    QPoly ik = RequireEmbedding(k, n).image, il = RequireEmbedding(l, n).image;
    for (long t = 1; t <= 64; ++t) {
      QPoly z = fn.Reduce(il + ik.Scaled(t));
      QPoly mz = fn.MinPolyOf(z);
      auto h = detail::ExpressInPowers(fn, z, ik, mz.degree());
      if (!h) continue;
      if (mz.degree() == fn.degree()) return finish(n);
      try {
        FieldId m = AddField(mz);
        DeclareEmbeddings({{k, m, *h}, {l, m, QPoly::X() - h->Scaled(t)}, {m, n, z}});
        return finish(m);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kConflictingEmbedding) throw;
      }
      break;
    }
  }

  // Resultant construction Res_y(f_k(y), f_l(x - t y)).
  int dk = fk.degree(), dl = fl.degree();
  int total = dk * dl;
  QPoly r;
  long t = 1;
  for (;; ++t) {
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= total; ++i) {
      Rational x0 = i;
      QPoly shifted = fl.min_poly().Compose(QPoly(std::vector<Rational>{x0, Rational(-t)}));
      xs.push_back(x0);
      ys.push_back(Resultant(fk.min_poly(), shifted));
    }
    r = Interpolate(xs, ys);
    if (IsSquarefree(r)) break;
    if (t > 200) Fail(ErrorKind::kNotSquarefree, "no separating shift found");
  }
  auto factors = Factor(r);
  for (const auto& [g, mult] : factors) {
    if (g.degree() > degree_cap_)
      Fail(ErrorKind::kDegreeCapExceeded, "compositum degree " + std::to_string(g.degree()) + " > " + std::to_string(degree_cap_));
    NumberField m(-1, g);
    // theta_k is the common root of f_k(y) and f_l(z - t y) over M.
    detail::MPoly a, b;
    for (const auto& c : fk.min_poly().coeffs()) a.push_back(QPoly::Constant(c));
    detail::MPoly lin{QPoly::X() % g, QPoly::Constant(Rational(-t))};
    for (auto it = fl.min_poly().coeffs().rbegin(); it != fl.min_poly().coeffs().rend(); ++it) {
      detail::MPoly next(b.size() + 1);
      for (std::size_t i = 0; i < b.size(); ++i) {
        next[i] = m.Reduce(next[i] + m.Mul(b[i], lin[0]));
        next[i + 1] = m.Reduce(next[i + 1] + m.Mul(b[i], lin[1]));
      }
      if (next.empty()) next.resize(1);
      next[0] = m.Reduce(next[0] + QPoly::Constant(*it));
      b = std::move(next);
    }
    detail::MPoly gcd = detail::GcdM(a, b, m);
    if (gcd.size() != 2) continue;
    QPoly theta_k = m.Reduce(-gcd[0]);
    QPoly theta_l = m.Reduce(QPoly::X() - theta_k.Scaled(t));
    try {
      if (g.degree() == dk) {
        auto z = detail::ExpressInPowers(m, theta_k, QPoly::X(), dk);
        if (!z) continue;
        DeclareEmbeddings({{l, k, fk.Reduce(*z - QPoly::X().Scaled(t))}});
        return finish(k);
      }
      if (g.degree() == dl) {
        auto z = detail::ExpressInPowers(m, theta_l, QPoly::X(), dl);
        if (!z) continue;
        DeclareEmbeddings({{k, l, theta_k.ComposeMod(*z, fl.min_poly())}});
        return finish(l);
      }
      // Common subfields must land on the same element of M.
      bool compatible = true;
      for (const auto& e : fields_) {
        if (e.id() == kRationals || !Embeds(e.id(), k) || !Embeds(e.id(), l)) continue;
        QPoly via_k = RequireEmbedding(e.id(), k).image.ComposeMod(theta_k, g);
        QPoly via_l = RequireEmbedding(e.id(), l).image.ComposeMod(theta_l, g);
        if (via_k != via_l) {
          compatible = false;
          break;
        }
      }
      if (!compatible) continue;
      FieldId mid = AddField(g);
      DeclareEmbeddings({{k, mid, theta_k}, {l, mid, theta_l}});
      return finish(mid);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kConflictingEmbedding) throw;
    }
  }
  Fail(ErrorKind::kConflictingEmbedding, "no compositum of " + fk.Name() + " and " + fl.Name() + " is compatible with the registry");
}

}  // namespace consmap
