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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "consmap/consistent/consistent_map.hpp"
#include "consmap/error.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/registry.hpp"
#include "consmap/verify/suites.hpp"

namespace consmap::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline void CheckVersion(const Json& j, const std::string& what) {
  if (!j.is_object()) Fail(ErrorKind::kParseError, what + ": expected an object");
  if (!j.contains("formatVersion")) Fail(ErrorKind::kParseError, what + ": missing formatVersion");
  if (j.at("formatVersion") != kFormatVersion)
    Fail(ErrorKind::kParseError, what + ": unsupported formatVersion " + j.at("formatVersion").dump());
}

// Wraps json access errors into ParseError.
template <typename F>
auto Guard(const std::string& what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    Fail(ErrorKind::kParseError, what + ": " + e.what());
  }
}

inline Json ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kInvalidInput, "cannot open " + path);
  return Guard(path, [&] { return Json::parse(in); });
}

// Place sets: {"kind": "finite" | "cofinite", "primes": [...], "archimedean": bool}.
inline Json ToJson(const PlaceSet& s) {
  return Json{{"kind", s.cofinite() ? "cofinite" : "finite"},
              {"primes", std::vector<std::uint64_t>(s.listed().begin(), s.listed().end())},
              {"archimedean", s.archimedean()}};
}

inline PlaceSet PlaceSetFromJson(const Json& j) {
  return Guard("placeSet", [&] {
    if (j.is_string()) {
      std::string name = j.get<std::string>();
      for (const auto& ns : DefaultPlaceSets())
        if (ns.name == name) return ns.set;
      Fail(ErrorKind::kParseError, "unknown place set '" + name + "'");
    }
    std::string kind = j.at("kind").get<std::string>();
    auto primes = j.value("primes", std::vector<std::uint64_t>{});
    std::set<std::uint64_t> ps(primes.begin(), primes.end());
    bool arch = j.value("archimedean", false);
    if (kind == "finite") return PlaceSet::Finite(ps, arch);
    if (kind == "cofinite") return PlaceSet::AllBut(ps, arch);
    Fail(ErrorKind::kParseError, "place set kind '" + kind + "'");
  });
}

inline Json ToJson(const FieldRegistry& reg) {
  Json fields = Json::array();
  for (FieldId k : reg.FieldIds()) {
    if (k == FieldRegistry::kRationals) continue;
    fields.push_back({{"id", k}, {"minPoly", reg.Field(k).min_poly().ToString()}});
  }
  Json embs = Json::array();
  for (const auto& e : reg.DeclaredEmbeddings())
    embs.push_back({{"source", e.source}, {"target", e.target}, {"image", e.image.ToString()}});
  return Json{{"formatVersion", kFormatVersion}, {"fields", fields}, {"embeddings", embs}};
}

// Field ids must be 1, 2, ... in order; embeddings are validated as declared.
inline void LoadRegistry(const Json& j, FieldRegistry& reg) {
  CheckVersion(j, "registry");
  Guard("registry", [&] {
    for (const auto& f : j.at("fields")) {
      FieldId want = f.at("id").get<FieldId>();
      FieldId got = reg.AddField(QPoly::Parse(f.at("minPoly").get<std::string>()));
      if (got != want) Fail(ErrorKind::kInvalidInput, "field id " + std::to_string(want) + " registered as " + std::to_string(got));
    }
    std::vector<Embedding> embs;
    for (const auto& e : j.value("embeddings", Json::array()))
      embs.push_back({e.at("source").get<FieldId>(), e.at("target").get<FieldId>(), QPoly::Parse(e.at("image").get<std::string>())});
    reg.DeclareEmbeddings(embs);
    return 0;
  });
}

inline Json ToJson(const LCFunction& f) {
  Json entries = Json::array();
  for (const auto& [v, x] : f.values()) entries.push_back({{"placeId", v.Id()}, {"value", x.ToString()}});
  return Json{{"formatVersion", kFormatVersion}, {"placeSet", ToJson(f.place_set())}, {"baseFieldId", f.base_field()}, {"entries", entries}};
}

inline LCFunction FunctionFromJson(const Json& j, FieldRegistry& reg) {
  CheckVersion(j, "function");
  return Guard("function", [&] {
    LCFunction f(PlaceSetFromJson(j.at("placeSet")), j.at("baseFieldId").get<FieldId>());
    reg.Field(f.base_field());
    for (const auto& e : j.at("entries")) {
      PlaceKey v = PlaceKey::Parse(e.at("placeId").get<std::string>());
      reg.GetPlace(v);
      f.Set(v, ExactScalar::Parse(e.at("value").get<std::string>()));
    }
    return f;
  });
}

inline Json ToJson(const ConsistentMap& c) {
  Json j{{"formatVersion", kFormatVersion}, {"kind", KernelName(c.kind())}, {"placeSet", ToJson(c.place_set())}};
  switch (c.kind()) {
    case KernelKind::kDirac: {
      Json chain = Json::array();
      for (const auto& v : c.chain()) chain.push_back(v.Id());
      j["chain"] = chain;
      j["weight"] = c.weight().ToString();
      break;
    }
    case KernelKind::kDensity:
      j["function"] = ToJson(*c.density());
      break;
    case KernelKind::kCombo: {
      Json terms = Json::array();
      for (const auto& [q, m] : c.terms()) terms.push_back({{"coefficient", q.get_str()}, {"map", ToJson(m)}});
      j["terms"] = terms;
      break;
    }
    case KernelKind::kTable: {
      Json entries = Json::array();
      for (const auto& [v, x] : c.table()) entries.push_back({{"placeId", v.Id()}, {"value", x.ToString()}});
      j["label"] = c.label();
      j["entries"] = entries;
      break;
    }
    case KernelKind::kConstant:
      j["value"] = c.weight().ToString();
      break;
    case KernelKind::kExtended:
      j["inner"] = ToJson(c.inner());
      break;
    default:
      break;
  }
  if (c.index_base() != FieldRegistry::kRationals) j["indexBase"] = c.index_base();
  if (c.index_places()) {
    Json places = Json::array();
    for (const auto& v : *c.index_places()) places.push_back(v.Id());
    j["indexPlaces"] = places;
  }
  return j;
}

inline ConsistentMap MapFromJson(const Json& j, FieldRegistry& reg) {
  CheckVersion(j, "map");
  return Guard("map", [&] {
    PlaceSet s = PlaceSetFromJson(j.at("placeSet"));
    std::string kind = j.at("kind").get<std::string>();
    auto parse_place = [&](const Json& id) {
      PlaceKey v = PlaceKey::Parse(id.get<std::string>());
      reg.GetPlace(v);
      return v;
    };
    std::optional<ConsistentMap> c;
    if (kind == "lambda") {
      c = ConsistentMap::Lambda(s);
    } else if (kind == "lambda_over_log") {
      c = ConsistentMap::LambdaOverLog(s);
    } else if (kind == "dirac") {
      std::vector<PlaceKey> chain;
      for (const auto& id : j.at("chain")) chain.push_back(parse_place(id));
      c = ConsistentMap::Dirac(reg, s, chain, ExactScalar::Parse(j.value("weight", std::string("1"))));
    } else if (kind == "density") {
      LCFunction g = FunctionFromJson(j.at("function"), reg);
      if (g.place_set() != s) Fail(ErrorKind::kInvalidInput, "density function has a different place set");
      c = ConsistentMap::Density(g);
    } else if (kind == "combo") {
      std::vector<std::pair<Rational, ConsistentMap>> terms;
      for (const auto& t : j.at("terms"))
        terms.emplace_back(ParseRational(t.at("coefficient").get<std::string>()), MapFromJson(t.at("map"), reg));
      c = ConsistentMap::Combo(terms);
    } else if (kind == "table") {
      std::map<PlaceKey, ExactScalar> table;
      for (const auto& e : j.at("entries")) table[parse_place(e.at("placeId"))] = ExactScalar::Parse(e.at("value").get<std::string>());
      c = ConsistentMap::Table(s, table, j.value("label", std::string("table")));
    } else if (kind == "constant") {
      c = ConsistentMap::Constant(s, ExactScalar::Parse(j.at("value").get<std::string>()));
    } else if (kind == "extended") {
      c = ExtendMap(MapFromJson(j.at("inner"), reg), s);
    } else {
      Fail(ErrorKind::kParseError, "unknown map kind '" + kind + "'");
    }
    if (j.contains("indexBase") || j.contains("indexPlaces")) {
      FieldId base = j.value("indexBase", FieldRegistry::kRationals);
      std::optional<std::set<PlaceKey>> places;
      if (j.contains("indexPlaces")) {
        places.emplace();
        for (const auto& id : j.at("indexPlaces")) places->insert(parse_place(id));
      }
      c = RestrictMap(reg, *c, base, places);
    }
    return *c;
  });
}

// {"formatVersion": 1, "seed": 0, "tolerance": 1e-9, "samples": 500, "triples": 200,
//  "injectNonMap": false, "placeSets": {"name": placeSet, ...}}
inline SuiteConfig ConfigFromJson(const Json& j) {
  CheckVersion(j, "config");
  return Guard("config", [&] {
    SuiteConfig cfg;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.triples = j.value("triples", cfg.triples);
    cfg.inject_non_map = j.value("injectNonMap", cfg.inject_non_map);
    if (cfg.samples < 0 || cfg.triples < 1 || !(cfg.tolerance >= 0)) Fail(ErrorKind::kInvalidInput, "config values out of range");
    if (j.contains("placeSets")) {
      cfg.place_sets.clear();
      for (const auto& [name, s] : j.at("placeSets").items()) cfg.place_sets.push_back({name, PlaceSetFromJson(s)});
    }
    return cfg;
  });
}

inline Json ToJson(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"checkId", c.id}, {"anchor", c.anchor}, {"status", StatusName(c.status)}, {"detail", c.detail}});
  return Json{{"formatVersion", kFormatVersion}, {"suite", r.suite}, {"checks", checks}, {"exitCode", r.exit_code()}};
}

}  // namespace consmap::io
