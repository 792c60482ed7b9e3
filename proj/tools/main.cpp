#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfperm/analysis.hpp"
#include "gfperm/error.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/field_tower.hpp"
#include "gfperm/maps.hpp"
#include "gfperm/perm_factory.hpp"
#include "gfperm/rng.hpp"
#include "gfperm/table_io.hpp"
#include "gfperm/translators.hpp"
#include "gfperm/verify.hpp"

namespace {

using nlohmann::json;
using namespace gfperm;

struct GlobalOpts {
  std::string field;
  std::uint64_t seed = 1;
  std::uint64_t budget = FieldTower::kDefaultBudget;
  std::string out;
  std::string format = "json";
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
}

void emit_json(const GlobalOpts& g, const json& j) { emit(g, j.dump(2) + "\n"); }

FieldTower require_tower(const GlobalOpts& g) {
  if (g.field.empty()) fail(Errc::bad_spec, "--field is required for this command");
  return tower_from_spec(g.field, g.budget);
}

// tower for commands that read a table file: --field wins, else the file's own
FieldTower tower_for_input(const GlobalOpts& g, const std::string& text) {
  if (!g.field.empty()) return tower_from_spec(g.field, g.budget);
  return tower_from_spec(embedded_field_spec(text), g.budget);
}

json criterion_json(const Criterion& c) {
  json j;
  j["name"] = c.name;
  j["holds"] = c.holds;
  j["sufficient_only"] = c.sufficient_only;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

std::string csv_indexed(const std::vector<Elt>& table) {
  std::ostringstream os;
  os << "index,value\n";
  for (std::size_t i = 0; i < table.size(); ++i) os << i << ',' << table[i].v << '\n';
  return os.str();
}

std::string csv_members(const std::vector<Elt>& members) {
  std::ostringstream os;
  os << "member\n";
  for (const Elt e : members) os << e.v << '\n';
  return os.str();
}

// ------------------------------------------------------------- field

void cmd_field(const GlobalOpts& g) {
  const FieldTower t = require_tower(g);
  json j;
  j["spec"] = format_field_spec(t);
  j["p"] = t.p();
  j["m"] = t.m();
  j["n"] = t.n();
  j["q"] = t.q();
  j["order"] = t.order();
  j["ground_modulus"] = t.ground_modulus();
  json ext = json::array();
  for (const GroundElt c : t.ext_modulus()) ext.push_back(c.v);
  j["ext_modulus"] = std::move(ext);
  j["primitive_element"] = t.primitive_element().v;
  if (g.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    os << "p," << t.p() << "\nm," << t.m() << "\nn," << t.n() << "\nq," << t.q() << "\norder,"
       << t.order() << "\nprimitive_element," << t.primitive_element().v << '\n';
    emit(g, os.str());
  } else {
    emit_json(g, j);
  }
}

// ------------------------------------------------------- translators

void cmd_translators(const GlobalOpts& g, const std::string& fn_path) {
  const std::string text = read_text_file(fn_path);
  const FieldTower t = tower_for_input(g, text);
  const GroundFn f = ground_fn_from_json(t, text);
  const TranslatorSpace lam = lambda_space(t, f);
  json j;
  j["field"] = format_field_spec(t);
  j["origin"] = f.origin;
  j["dimension"] = lam.dimension();
  j["size"] = lam.size();
  json basis = json::array();
  for (std::size_t i = 0; i < lam.basis.size(); ++i)
    basis.push_back(json{{"alpha", lam.basis[i].v}, {"value", lam.basis_values[i].v}});
  j["basis"] = std::move(basis);
  if (lam.size() <= 1024) {
    json members = json::array();
    for (std::uint64_t i = 0; i < t.order(); ++i)
      if (lam.value_of[i] >= 0)
        members.push_back(json{{"alpha", i}, {"value", lam.value_of[i]}});
    j["members"] = std::move(members);
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "alpha,value\n";
    for (std::uint64_t i = 0; i < t.order(); ++i)
      if (lam.value_of[i] >= 0) os << i << ',' << lam.value_of[i] << '\n';
    emit(g, os.str());
  } else {
    emit_json(g, j);
  }
}

// ------------------------------------------------------------- build

Elt elt_param(const FieldTower& t, const json& pj, const std::string& key) {
  const auto& v = pj.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= t.order())
    fail(Errc::bad_spec, "parameter '" + key + "' must be an index below the field order");
  return Elt{v.get<std::uint32_t>()};
}

FieldMap map_param(const FieldTower& t, const json& pj, const std::string& key) {
  const auto& v = pj.at(key);
  if (!v.is_array() || v.size() != t.order())
    fail(Errc::bad_spec, "parameter '" + key + "' must be an array of length q^n");
  std::vector<Elt> table(t.order());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned() || v[i].get<std::uint64_t>() >= t.order())
      fail(Errc::bad_spec, "parameter '" + key + "' has an out-of-range entry");
    table[i] = Elt{v[i].get<std::uint32_t>()};
  }
  return FieldMap{std::move(table), key};
}

void cmd_build(const GlobalOpts& g, const std::string& family, const std::string& params) {
  const FieldTower t = require_tower(g);
  const json pj = json::parse(params, nullptr, false);
  if (pj.is_discarded() || !pj.is_object())
    fail(Errc::bad_spec, "--params must be a JSON object");
  for (const auto& item : pj.items()) {
    static const std::vector<std::string> known{"gamma", "beta",     "beta2",   "alpha",
                                                "t",     "h_table", "h2_table"};
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      fail(Errc::bad_spec, "unknown parameter '" + item.key() + "'");
  }
  FamilyParams ps;
  if (pj.contains("gamma")) ps.gamma = elt_param(t, pj, "gamma");
  if (pj.contains("beta")) ps.beta = elt_param(t, pj, "beta");
  if (pj.contains("beta2")) ps.beta2 = elt_param(t, pj, "beta2");
  if (pj.contains("alpha")) ps.alpha = elt_param(t, pj, "alpha");
  if (pj.contains("t")) {
    if (!pj["t"].is_number_unsigned()) fail(Errc::bad_spec, "parameter 't' must be unsigned");
    ps.t = pj["t"].get<std::uint64_t>();
  }
  if (pj.contains("h_table")) ps.h_map = map_param(t, pj, "h_table");
  if (pj.contains("h2_table")) ps.h2_map = map_param(t, pj, "h2_table");

  const FamilyResult res = build_named_family(t, family_from_name(family), ps);
  json j;
  j["field"] = format_field_spec(t);
  j["family"] = family_name(family_from_name(family));
  j["verdict"] = to_string(res.verdict);
  j["criterion"] = criterion_json(res.criterion);
  j["origin"] = res.map.origin;
  json table = json::array();
  for (const Elt e : res.map.table) table.push_back(e.v);
  j["table"] = std::move(table);
  if (res.fibers) j["fiber_size"] = res.fibers->fiber_size;
  if (g.format == "csv")
    emit(g, csv_indexed(res.map.table));
  else
    emit_json(g, j);
}

// ------------------------------------------------------------ analyze

void cmd_analyze(const GlobalOpts& g, const std::string& what, const std::string& input) {
  const std::string text = read_text_file(input);
  const FieldTower t = tower_for_input(g, text);
  const FieldMap hm = field_map_from_json(t, text);
  json j;
  j["field"] = format_field_spec(t);
  j["what"] = what;
  j["origin"] = hm.origin;
  if (what == "mob") {
    const MultiplierSet s = mob_set(t, hm);
    j["size"] = s.members.size();
    json members = json::array();
    for (const Elt e : s.members) members.push_back(e.v);
    j["members"] = std::move(members);
    if (g.format == "csv") return emit(g, csv_members(s.members));
  } else if (what == "directions") {
    const DirectionSet s = direction_set(t, hm);
    j["size"] = s.members.size();
    json members = json::array();
    for (const Elt e : s.members) members.push_back(e.v);
    j["members"] = std::move(members);
    if (g.format == "csv") return emit(g, csv_members(s.members));
  } else {  // cycles
    if (classify_table(hm.table, t.q()) != Verdict::permutation)
      fail(Errc::bad_spec, "cycle analysis needs a permutation table");
    const CycleDecomposition cd = cycle_structure_brute(perm_from_table(hm.table, hm.origin));
    json fixed = json::array();
    for (const Elt e : cd.fixed_points) fixed.push_back(e.v);
    j["fixed_points"] = std::move(fixed);
    json cycles = json::array();
    for (const auto& cyc : cd.cycles) {
      json one = json::array();
      for (const Elt e : cyc) one.push_back(e.v);
      cycles.push_back(std::move(one));
    }
    j["cycles"] = std::move(cycles);
    j["lengths"] = cd.length_multiset();
    if (g.format == "csv") {
      std::ostringstream os;
      os << "cycle,element\n";
      for (const Elt e : cd.fixed_points) os << "fixed," << e.v << '\n';
      for (std::size_t c = 0; c < cd.cycles.size(); ++c)
        for (const Elt e : cd.cycles[c]) os << c << ',' << e.v << '\n';
      return emit(g, os.str());
    }
  }
  emit_json(g, j);
}

// ------------------------------------------------------------- verify

int cmd_verify(const GlobalOpts& g, const std::string& suite, bool no_timing) {
  const FieldTower t = require_tower(g);
  const RunReport r = run_verify(t, suite_from_name(suite), g.seed);
  json j = json::parse(report_to_json(r, !no_timing));
  j["command"] = "verify --suite " + suite + " --field " + format_field_spec(t) + " --seed " +
                 std::to_string(g.seed);
  if (g.format == "csv") {
    std::ostringstream os;
    os << "check,cases,passed\n";
    for (const auto& c : r.checks)
      os << c.name << ',' << c.cases << ',' << (c.passed ? "true" : "false") << '\n';
    emit(g, os.str());
  } else {
    emit_json(g, j);
  }
  return r.pass() ? 0 : 1;
}

// ------------------------------------------------------------- export

void cmd_export(const GlobalOpts& g, const std::string& what) {
  const FieldTower t = require_tower(g);
  Rng rng(g.seed);
  std::string text;
  std::vector<Elt> csv_table;
  if (what == "trace") {
    const FieldMap m = trace_map(t);
    csv_table = m.table;
    text = field_map_to_json(t, m);
  } else if (what == "identity") {
    const FieldMap m = identity_map(t);
    csv_table = m.table;
    text = field_map_to_json(t, m);
  } else if (what == "zero") {
    const FieldMap m = zero_map(t);
    csv_table = m.table;
    text = field_map_to_json(t, m);
  } else if (what == "random-map") {
    const FieldMap m = random_field_map(t, rng);
    csv_table = m.table;
    text = field_map_to_json(t, m);
  } else {  // random-ground
    const GroundFn f = random_ground_fn(t, rng);
    text = ground_fn_to_json(t, f);
    if (g.format == "csv") {
      std::ostringstream os;
      os << "index,value\n";
      for (std::size_t i = 0; i < f.table.size(); ++i) os << i << ',' << f.table[i].v << '\n';
      emit(g, os.str());
      return;
    }
  }
  if (g.format == "csv" && !csv_table.empty())
    emit(g, csv_indexed(csv_table));
  else
    emit(g, text);
}

int run(int argc, char** argv) {
  CLI::App app{"permutations of finite fields built from functions with linear translators"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOpts g;
  app.add_option("--field", g.field, "field spec: p=<p>,m=<m>,n=<n>[,g=<csv>,h=<csv>]");
  app.add_option("--seed", g.seed, "seed for randomized inputs (echoed in reports)");
  app.add_option("--budget", g.budget, "largest field order this run may construct");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  app.add_subcommand("field", "describe the field tower")->callback([&] { cmd_field(g); });

  std::string fn_path;
  auto* tr = app.add_subcommand("translators", "find the translator space of a function table");
  tr->add_option("--fn", fn_path, "ground-function table file (JSON)")->required();
  tr->callback([&] { cmd_translators(g, fn_path); });

  std::string family, params = "{}";
  auto* bu = app.add_subcommand("build", "build a named permutation family");
  bu->add_option("--family", family,
                 "lai_shift | qplus_shift_a | qplus_shift_b | double_coord | monom_t | "
                 "artin_schreier_t")
      ->required();
  bu->add_option("--params", params, "JSON object: gamma, beta, beta2, alpha, t, h_table, h2_table");
  bu->callback([&] { cmd_build(g, family, params); });

  std::string what, input;
  auto* an = app.add_subcommand("analyze", "analyze a map table");
  an->add_option("what", what, "cycles | mob | directions")
      ->required()
      ->check(CLI::IsMember({"cycles", "mob", "directions"}));
  an->add_option("--input", input, "field-map table file (JSON)")->required();
  an->callback([&] { cmd_analyze(g, what, input); });

  std::string suite = "all";
  bool no_timing = false;
  int verify_exit = 0;
  auto* ve = app.add_subcommand("verify", "run the property-check suites");
  ve->add_option("--suite", suite, "core | translators | families | analysis | all")
      ->check(CLI::IsMember({"core", "translators", "families", "analysis", "all"}));
  ve->add_flag("--no-timing", no_timing, "omit elapsed_ms for byte-stable output");
  ve->callback([&] { verify_exit = cmd_verify(g, suite, no_timing); });

  std::string what_export;
  auto* ex = app.add_subcommand("export", "write a canonical table file");
  ex->add_option("--what", what_export, "trace | identity | zero | random-map | random-ground")
      ->required()
      ->check(CLI::IsMember({"trace", "identity", "zero", "random-map", "random-ground"}));
  ex->callback([&] { cmd_export(g, what_export); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return verify_exit;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gfperm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.internal() ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
