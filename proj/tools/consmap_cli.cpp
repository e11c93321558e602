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

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "consmap/consmap.hpp"

using namespace consmap;
using io::Json;

namespace {

struct Options {
  std::string registry;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  bool json_only = false;

  std::string function_file;
  std::string map_file;
  std::string samples_dir;
  std::string oracle = "builtin:lambda";
  std::string place_set = "all";
  std::string place;
  std::string element;
  std::string suite;
  std::vector<std::string> index_places;
  FieldId field = FieldRegistry::kRationals;
  std::uint64_t prime = 0;
  bool arch = false;
};

// Rows written to stderr as an aligned table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void Row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void Print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out << std::left << std::setw(static_cast<int>(width[i] + 2)) << r[i];
      out << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string Fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

Json ScalarJson(const ExactScalar& x) { return Json{{"exact", x.ToString()}, {"approx", x.ToDouble()}}; }

class App {
 public:
  explicit App(Options o) : opt_(std::move(o)) {
    if (opt_.registry.empty()) {
      PopulateDefaultRegistry(reg_);
    } else {
      io::LoadRegistry(io::ReadFile(opt_.registry), reg_);
    }
    if (!opt_.config.empty()) cfg_ = io::ConfigFromJson(io::ReadFile(opt_.config));
    if (opt_.seed) cfg_.seed = *opt_.seed;
    if (opt_.tolerance) cfg_.tolerance = *opt_.tolerance;
  }

  int Places() {
    reg_.Field(opt_.field);
    std::vector<Place> list;
    if (opt_.arch) {
      list = reg_.ArchimedeanPlaces(opt_.field);
    } else {
      if (opt_.prime < 2 || !IsPrime(FromU64(opt_.prime))) Fail(ErrorKind::kInvalidInput, "--prime must be a prime");
      list = reg_.PlacesAbove(opt_.field, opt_.prime);
    }
    Table t({"place", "e", "f", "localDegree", "lambda"});
    Json rows = Json::array();
    for (const auto& v : list) {
      rows.push_back({{"placeId", v.Id()}, {"e", v.e}, {"f", v.f}, {"localDegree", v.local_degree()}, {"lambda", v.lambda().get_str()}});
      t.Row({v.Id(), std::to_string(v.e), std::to_string(v.f), std::to_string(v.local_degree()), v.lambda().get_str()});
    }
    return Emit({{"field", opt_.field}, {"places", rows}}, t, 0);
  }

  int Fn(const std::string& op) {
    LCFunction f = io::FunctionFromJson(io::ReadFile(Require(opt_.function_file, "--function")), reg_);
    Table t({"quantity", "value"});
    Json out{{"op", op}};
    if (op == "eval") {
      if (opt_.place.empty()) Fail(ErrorKind::kInvalidInput, "fn eval needs --place");
      PlaceKey v = PlaceKey::Parse(opt_.place);
      reg_.GetPlace(v);
      // f is constant on Y(v) iff it agrees on every place above v in a common field.
      FieldId m = reg_.Compositum(f.base_field(), v.field).field;
      LCFunction g = RefineTo(reg_, f, m);
      std::optional<ExactScalar> value;
      for (const auto& w : reg_.PlacesOver(m, v)) {
        ExactScalar x = g.Value(w);
        if (value && !(*value == x)) Fail(ErrorKind::kInvalidInput, "the function is not constant on the places above " + v.Id());
        value = x;
      }
      out["place"] = v.Id();
      out["value"] = ScalarJson(*value);
      t.Row({"f(" + v.Id() + ")", value->ToString()});
    } else if (op == "norm") {
      ExactScalar n = L1Norm(reg_, f, cfg_.tolerance);
      out["l1Norm"] = ScalarJson(n);
      t.Row({"l1Norm", n.ToString()});
    } else if (op == "integral") {
      ExactScalar n = Integral(reg_, f);
      out["integral"] = ScalarJson(n);
      t.Row({"integral", n.ToString()});
    } else {
      LCFunction g = opt_.prime ? ProjectToL0(reg_, f, opt_.prime) : ProjectToL0(reg_, f);
      out["projection"] = io::ToJson(g);
      out["integral"] = ScalarJson(Integral(reg_, g));
      t.Row({"integral", Integral(reg_, g).ToString()});
      t.Row({"l1Norm", L1Norm(reg_, g, cfg_.tolerance).ToString()});
    }
    return Emit(out, t, 0);
  }

  int Map(const std::string& op) {
    ConsistentMap c = LoadMap();
    Table t({"quantity", "value"});
    Json out{{"op", op}, {"map", c.Describe()}};
    int code = 0;
    if (op == "eval") {
      if (opt_.place.empty()) Fail(ErrorKind::kInvalidInput, "map eval needs --place");
      PlaceKey v = PlaceKey::Parse(opt_.place);
      ExactScalar x = c.Evaluate(reg_, v);
      out["place"] = v.Id();
      out["value"] = ScalarJson(x);
      t.Row({"c(" + v.Id() + ")", x.ToString()});
    } else if (op == "verify") {
      ConsistencyReport r = VerifyConsistency(c, reg_, reg_.FieldIds());
      Json viol = Json::array();
      for (const auto& b : r.violations) {
        viol.push_back({{"source", b.source}, {"target", b.target}, {"place", b.place.Id()}, {"below", b.below.ToString()}, {"above", b.above.ToString()}});
        t.Row({"violation", b.place.Id() + " in " + std::to_string(b.source) + "->" + std::to_string(b.target)});
      }
      out["consistent"] = r.ok();
      out["branchesChecked"] = r.checks.size();
      out["violations"] = viol;
      t.Row({"branches checked", std::to_string(r.checks.size())});
      t.Row({"consistent", r.ok() ? "yes" : "no"});
      code = r.ok() ? 0 : 1;
    } else if (op == "bounded") {
      BoundReport b = IsBounded(c, reg_, reg_.FieldIds());
      out["bounded"] = b.bounded;
      out["bound"] = b.bound;
      out["witness"] = b.witness.Id();
      out["placesChecked"] = b.places_checked;
      out["scope"] = b.scope;
      t.Row({"bound", Fmt(b.bound)});
      t.Row({"witness", b.witness.Id()});
      t.Row({"scope", b.scope});
    } else if (op == "span-lambda") {
      SpanReport s = IsInSpanLambda(c, reg_, reg_.FieldIds());
      out["inSpan"] = s.in_span;
      out["ratio"] = s.ratio.ToString();
      if (s.witness) out["witness"] = s.witness->Id();
      t.Row({"in span of lambda", s.in_span ? "yes" : "no"});
      t.Row({"ratio", s.ratio.ToString()});
    } else if (op == "restrict") {
      std::optional<std::set<PlaceKey>> places;
      if (!opt_.index_places.empty()) {
        places.emplace();
        for (const auto& id : opt_.index_places) places->insert(PlaceKey::Parse(id));
      }
      ConsistentMap r = RestrictMap(reg_, c, opt_.field, places);
      out["result"] = io::ToJson(r);
      t.Row({"restricted", r.Describe()});
    } else {
      ConsistentMap e = ExtendMap(c, c.place_set());
      out["result"] = io::ToJson(e);
      t.Row({"extended", e.Describe()});
    }
    return Emit(out, t, code);
  }

  int Dual(const std::string& op) {
    Table t({"quantity", "value"});
    Json out{{"op", op}};
    int code = 0;
    if (op == "phi" || op == "psi") {
      ConsistentMap c = LoadMap();
      LCFunction f = io::FunctionFromJson(io::ReadFile(Require(opt_.function_file, "--function")), reg_);
      ExactScalar x = op == "phi" ? Phi(reg_, c, f) : Psi(reg_, c, f);
      out["value"] = ScalarJson(x);
      t.Row({op, x.ToString()});
    } else if (op == "reconstruct") {
      PlaceSet s = io::PlaceSetFromJson(Json(opt_.place_set));
      std::optional<ConsistentMap> source;
      if (opt_.oracle == "builtin:lambda") {
        source = ConsistentMap::Lambda(s);
      } else {
        source = io::MapFromJson(io::ReadFile(opt_.oracle), reg_);
        s = source->place_set();
      }
      FieldScope scope = reg_.FieldIds();
      Reconstruction rec = FunctionalToMap(reg_, PhiFunctional(*source), s, scope);
      std::size_t mismatches = 0;
      for (const auto& [v, x] : rec.map.table())
        if (source->InIndex(reg_, v) && !(source->Evaluate(reg_, v) == x)) ++mismatches;
      out["map"] = io::ToJson(rec.map);
      out["consistent"] = rec.report.ok();
      out["mismatches"] = mismatches;
      t.Row({"places", std::to_string(rec.map.table().size())});
      t.Row({"consistent", rec.report.ok() ? "yes" : "no"});
      t.Row({"mismatches", std::to_string(mismatches)});
      code = rec.report.ok() && mismatches == 0 ? 0 : 1;
    } else if (op == "continuity") {
      ConsistentMap c = LoadMap();
      std::vector<LCFunction> samples = LoadSamples(c.place_set());
      ContinuityReport r = ContinuityCheck(c, reg_, samples, cfg_.tolerance, reg_.FieldIds());
      out["bound"] = r.bound;
      out["samples"] = r.samples;
      out["worstRatio"] = r.worst_ratio;
      out["sampleFailures"] = r.sample_failures;
      out["ok"] = r.ok();
      t.Row({"bound", Fmt(r.bound)});
      t.Row({"samples", std::to_string(r.samples)});
      t.Row({"worst ratio", Fmt(r.worst_ratio)});
      code = r.ok() ? 0 : 1;
    } else {
      ConsistentMap c = LoadMap();
      RationalityReport r = RationalityCriterion(c, reg_, reg_.FieldIds());
      Json entries = Json::array();
      for (const auto& e : r.entries) {
        entries.push_back({{"placeId", e.place.Id()}, {"value", e.value.ToString()}, {"ok", e.ok}});
        if (!e.ok) t.Row({"not rational * 1/log p", e.place.Id() + " = " + e.value.ToString()});
      }
      out["entries"] = entries;
      out["ok"] = r.ok();
      t.Row({"criterion", r.ok() ? "holds" : "fails"});
    }
    return Emit(out, t, code);
  }

  int Height() {
    if (opt_.element.empty()) Fail(ErrorKind::kInvalidInput, "height needs --element");
    AlgebraicNumber a = MakeAlgebraic(reg_, opt_.field, QPoly::Parse(opt_.element));
    LCFunction f = HeightFunction(reg_, a, PlaceSet::All());
    Table t({"place", "lambda", "log||a||_v"});
    Json local = Json::array();
    for (const auto& [v, x] : f.values()) {
      local.push_back({{"placeId", v.Id()}, {"lambda", reg_.Lambda(v).get_str()}, {"logAbs", ScalarJson(x)}});
      t.Row({v.Id(), reg_.Lambda(v).get_str(), x.ToString()});
    }
    ExactScalar g = GNorm(reg_, a);
    ExactScalar vn = VNorm(reg_, a);
    double mahler = WeilHeightViaMahler(reg_, a);
    ProductFormulaReport pf = ProductFormulaCheck(reg_, a, cfg_.tolerance);
    double weil = g.ToDouble() / 2;
    bool agree = std::fabs(weil - mahler) <= 1e-7 * std::max(1.0, std::fabs(mahler));
    Json out{{"element", a.label},
             {"local", local},
             {"gNorm", ScalarJson(g)},
             {"vNorm", ScalarJson(vn)},
             {"weilHeight", weil},
             {"mahlerHeight", mahler},
             {"mahlerAgrees", agree},
             {"productFormula", {{"sum", pf.sum.ToString()}, {"symbolicZero", pf.symbolic_zero}, {"ok", pf.ok}}}};
    t.Row({"gNorm", "", g.ToString()});
    t.Row({"vNorm", "", vn.ToString()});
    t.Row({"weil height", "", Fmt(weil)});
    t.Row({"mahler height", "", Fmt(mahler)});
    t.Row({"product formula", "", pf.ok ? "ok" : "FAILED"});
    return Emit(out, t, pf.ok && agree ? 0 : 1);
  }

  int Verify() {
    VerificationReport r = RunSuite(opt_.suite, reg_, cfg_);
    Table t({"check", "status", "detail"});
    for (const auto& c : r.checks) t.Row({c.id, StatusName(c.status), c.detail});
    return Emit(io::ToJson(r), t, r.exit_code());
  }

 private:
  static const std::string& Require(const std::string& s, const char* flag) {
    if (s.empty()) Fail(ErrorKind::kInvalidInput, std::string("missing ") + flag);
    return s;
  }

  ConsistentMap LoadMap() { return io::MapFromJson(io::ReadFile(Require(opt_.map_file, "--map")), reg_); }

  // Function documents from a directory, or seeded random functions if none is given.
  std::vector<LCFunction> LoadSamples(const PlaceSet& s) {
    std::vector<LCFunction> out;
    if (!opt_.samples_dir.empty()) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(opt_.samples_dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& p : files) out.push_back(io::FunctionFromJson(io::ReadFile(p.string()), reg_));
      return out;
    }
    std::mt19937_64 rng(cfg_.seed);
    std::vector<FieldId> ids = reg_.FieldIds();
    for (int i = 0; i < cfg_.samples; ++i) out.push_back(RandomFunction(reg_, rng, s, RandomField(ids, rng)));
    return out;
  }

  int Emit(const Json& out, const Table& t, int code) {
    std::cout << out.dump(2) << std::endl;
    if (!opt_.json_only) t.Print(std::cerr);
    return code;
  }

  Options opt_;
  FieldRegistry reg_;
  SuiteConfig cfg_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Consistent maps, LC functions and heights over number fields"};
  cli.require_subcommand(1);
  Options o;
  cli.add_option("--registry", o.registry, "Registry document (default: shipped registry)");
  cli.add_option("--config", o.config, "Suite configuration document");
  cli.add_option("--seed", o.seed, "Random seed");
  cli.add_option("--tolerance", o.tolerance, "Float comparison tolerance");
  cli.add_flag("--json-only", o.json_only, "Suppress the table on stderr");
  // Global flags are accepted after the subcommand as well.
  cli.fallthrough();

  auto* places = cli.add_subcommand("places", "Places of a field over a prime or at infinity");
  places->add_option("--field", o.field, "Field id")->required();
  places->add_option("--prime", o.prime, "Rational prime");
  places->add_flag("--arch", o.arch, "Archimedean places");

  auto* fn = cli.add_subcommand("fn", "Locally constant functions");
  fn->require_subcommand(1);
  for (const char* op : {"eval", "norm", "integral", "project"}) {
    auto* s = fn->add_subcommand(op);
    s->add_option("--function", o.function_file)->required();
    s->add_option("--place", o.place);
    s->add_option("--prime", o.prime, "Auxiliary prime of the projection");
  }

  auto* map = cli.add_subcommand("map", "Consistent maps");
  map->require_subcommand(1);
  for (const char* op : {"eval", "verify", "bounded", "span-lambda", "restrict", "extend"}) {
    auto* s = map->add_subcommand(op);
    s->add_option("--map", o.map_file)->required();
    s->add_option("--place", o.place);
    s->add_option("--field", o.field, "Index field of the restriction");
    s->add_option("--places", o.index_places, "Index places of the restriction");
  }

  auto* dual = cli.add_subcommand("dual", "Evaluation functionals");
  dual->require_subcommand(1);
  for (const char* op : {"phi", "psi", "reconstruct", "continuity", "rationality"}) {
    auto* s = dual->add_subcommand(op);
    s->add_option("--map", o.map_file);
    s->add_option("--function", o.function_file);
    s->add_option("--oracle", o.oracle, "builtin:lambda or a map document");
    s->add_option("--place-set", o.place_set, "Place set name: all, nonarch, s25, s5");
    s->add_option("--samples", o.samples_dir, "Directory of function documents");
  }

  auto* height = cli.add_subcommand("height", "Height function of an algebraic number");
  height->add_option("--field", o.field, "Field id");
  height->add_option("--element", o.element, "Polynomial in the field generator x")->required();

  auto* verify = cli.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.suite)->required()->check(CLI::IsMember(SuiteNames()));

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto chosen = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
  try {
    App app(o);
    if (places->parsed()) return app.Places();
    if (fn->parsed()) return app.Fn(chosen(fn));
    if (map->parsed()) return app.Map(chosen(map));
    if (dual->parsed()) return app.Dual(chosen(dual));
    if (height->parsed()) return app.Height();
    return app.Verify();
  } catch (const Error& e) {
    std::cout << Json{{"error", std::string(ErrorKindName(e.kind())) }, {"message", e.what()}}.dump(2) << std::endl;
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", "InvalidInput"}, {"message", e.what()}}.dump(2) << std::endl;
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
