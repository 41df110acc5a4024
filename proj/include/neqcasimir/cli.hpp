#pragma once

// Scenario files, CSV output, zero crossings and the two back-of-envelope
// comparisons (weight, Ampere force).  Everything the command-line tool does
// apart from argument parsing lives here so it can be tested.
//
// Scenario JSON, every dimensional number carries its unit:
//
//   {"name": "...", "provider": "thin" | "full",
//    "cylinder1": {"radius": {"value": 100, "unit": "nm"}, "material": "SiC"},
//    "cylinder2": {...},
//    "temperatures": {"unit": "K", "cases": [{"T1": 300, "T2": 0, "T_env": 0}, ...]},
//    "separations": {"unit": "um", "values": [...]}
//                 | {"unit": "um", "start": 1, "stop": 100, "points": 40, "spacing": "log"},
//    "equilibrium": {"file": "f.csv"} | {"table": ...} | {"power_law": ...} | {"wire_log": ...},
//    "controls": {"rel_tol": 1e-4, ...}, "threads": 0, "output": "out.csv"}
//
// "material" is a built-in name, a path to a material file, or an inline
// material object.  Relative paths are taken from the scenario's directory.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "neqcasimir/engine.hpp"

namespace neqc::cli {

using nlohmann::json;

struct TemperatureCase {
  double t1 = 0.0, t2 = 0.0, t_env = 0.0;  // K
};

struct ScenarioFile {
  std::string name = "scenario";
  double radius1 = 0.0, radius2 = 0.0;  // m
  DielectricModel material1, material2;
  std::vector<TemperatureCase> cases;
  std::vector<double> grid;  // m
  QuadratureControls controls;
  unsigned threads = 0;
  EquilibriumCurve equilibrium;
  json equilibrium_json;  // canonical form, for the CSV header
  std::string output;

  Scenario scenario(const TemperatureCase& c) const {
    Scenario s{{radius1, material1, c.t1}, {radius2, material2, c.t2}, c.t_env, controls, equilibrium};
    return s;
  }
};

namespace detail {

inline std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw SchemaError(join(where, k) + ": unknown field");
  }
}

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(join(where, key) + ": missing");
  return j.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

inline std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

inline double length_factor(const std::string& unit, const std::string& where) {
  if (unit == "m") return 1.0;
  if (unit == "um") return 1e-6;
  if (unit == "nm") return 1e-9;
  if (unit == "mm") return 1e-3;
  throw SchemaError(where + ": unknown length unit '" + unit + "' (m, mm, um, nm)");
}

inline double force_factor(const std::string& unit, const std::string& where) {
  if (unit == "N/m") return 1.0;
  if (unit == "fN/um") return 1e-9;
  throw SchemaError(where + ": unknown force-per-length unit '" + unit + "' (N/m, fN/um)");
}

// {"value": x, "unit": u}
inline double quantity(const json& j, const std::string& where, double (*factor)(const std::string&, const std::string&)) {
  check_keys(j, {"value", "unit"}, where);
  const double v = number(field(j, "value", where), join(where, "value"));
  return v * factor(string(field(j, "unit", where), join(where, "unit")), join(where, "unit"));
}

inline double length(const json& j, const std::string& where) { return quantity(j, where, length_factor); }
inline double force(const json& j, const std::string& where) { return quantity(j, where, force_factor); }

inline std::string resolve(const std::string& base, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return p.string();
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

inline DielectricModel material(const json& j, const std::string& base, const std::string& where) {
  if (j.is_object()) return material_from_json(j, where);
  const std::string s = string(j, where);
  if (s == "SiC" || s == "sic") return silicon_carbide();
  if (s == "tungsten_2400K" || s == "W") return tungsten_2400K();
  if (s == "vacuum") return DielectricModel::vacuum();
  if (s.size() > 5 && s.ends_with(".json")) {
    try {
      return load_material(resolve(base, s));
    } catch (const SchemaError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  throw SchemaError(where + ": unknown material '" + s + "' (SiC, tungsten_2400K, vacuum, or a .json file)");
}

inline std::vector<double> separations(const json& j, const std::string& where) {
  check_keys(j, {"unit", "values", "start", "stop", "points", "spacing"}, where);
  const double f = length_factor(string(field(j, "unit", where), join(where, "unit")), join(where, "unit"));
  std::vector<double> g;
  if (j.contains("values")) {
    const auto& v = j.at("values");
    if (!v.is_array() || v.empty()) throw SchemaError(join(where, "values") + ": expected a non-empty array");
    for (std::size_t i = 0; i < v.size(); ++i) g.push_back(f * number(v[i], join(where, "values[" + std::to_string(i) + "]")));
  } else {
    const double a = f * number(field(j, "start", where), join(where, "start"));
    const double b = f * number(field(j, "stop", where), join(where, "stop"));
    const auto& np = field(j, "points", where);
    if (!np.is_number_integer() || np.get<int>() < 1) throw SchemaError(join(where, "points") + ": expected an integer >= 1");
    const int n = np.get<int>();
    const std::string spacing = j.contains("spacing") ? string(j.at("spacing"), join(where, "spacing")) : "log";
    if (spacing != "log" && spacing != "linear") throw SchemaError(join(where, "spacing") + ": expected 'log' or 'linear'");
    if (!(a > 0.0 && b >= a)) throw SchemaError(where + ": need 0 < start <= stop");
    for (int i = 0; i < n; ++i) {
      const double s = n == 1 ? 0.0 : double(i) / (n - 1);
      g.push_back(spacing == "log" ? a * std::pow(b / a, s) : a + s * (b - a));
    }
    g.back() = n == 1 ? a : b;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !std::isfinite(g[i])) throw SchemaError(where + ": separations must be positive");
    if (i > 0 && !(g[i] > g[i - 1])) throw SchemaError(where + ": separations must be strictly increasing");
  }
  return g;
}

inline std::vector<TemperatureCase> temperatures(const json& j, const std::string& where) {
  check_keys(j, {"unit", "cases"}, where);
  if (string(field(j, "unit", where), join(where, "unit")) != "K") throw SchemaError(join(where, "unit") + ": only 'K'");
  const auto& cs = field(j, "cases", where);
  if (!cs.is_array() || cs.empty()) throw SchemaError(join(where, "cases") + ": expected a non-empty array");
  std::vector<TemperatureCase> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string at = join(where, "cases[" + std::to_string(i) + "]");
    check_keys(cs[i], {"T1", "T2", "T_env"}, at);
    TemperatureCase c{number(field(cs[i], "T1", at), join(at, "T1")), number(field(cs[i], "T2", at), join(at, "T2")),
                      number(field(cs[i], "T_env", at), join(at, "T_env"))};
    for (double t : {c.t1, c.t2, c.t_env})
      if (!(t >= 0.0) || !std::isfinite(t)) throw SchemaError(at + ": temperatures must be >= 0");
    out.push_back(c);
  }
  return out;
}

inline json table_json(const EquilibriumCurve& c, const std::string& source) {
  json t = {{"d", {{"unit", "m"}, {"values", c.table_d()}}}, {"F", {{"unit", "N/m"}, {"values", c.table_f()}}}};
  if (!source.empty()) t["source"] = source;
  return t;
}

// Returns the curve and its canonical JSON (SI units, files inlined).
inline std::pair<EquilibriumCurve, json> equilibrium(const json& j, const std::string& base, const std::string& where) {
  if (j.is_null()) return {EquilibriumCurve(), nullptr};
  check_keys(j, {"file", "table", "power_law", "wire_log", "extrapolate"}, where);
  if (j.contains("extrapolate") && !j.at("extrapolate").is_boolean())
    throw SchemaError(join(where, "extrapolate") + ": expected a boolean");
  const bool extrapolate = j.contains("extrapolate") && j.at("extrapolate").get<bool>();
  EquilibriumCurve c;
  json canon;
  try {
    if (j.contains("file")) {
      const std::string path = resolve(base, string(j.at("file"), join(where, "file")));
      c = EquilibriumCurve::load_csv(path);
      canon = {{"table", table_json(c, path)}};
    } else if (j.contains("table")) {
      const std::string at = join(where, "table");
      const auto& t = j.at("table");
      check_keys(t, {"d", "F", "source"}, at);
      auto column = [&](const char* key, double (*factor)(const std::string&, const std::string&)) {
        const std::string ck = join(at, key);
        const auto& col = field(t, key, at);
        check_keys(col, {"unit", "values"}, ck);
        const double f = factor(string(field(col, "unit", ck), join(ck, "unit")), join(ck, "unit"));
        std::vector<double> v;
        const auto& vals = field(col, "values", ck);
        if (!vals.is_array()) throw SchemaError(join(ck, "values") + ": expected an array");
        for (const auto& x : vals) v.push_back(f * number(x, join(ck, "values")));
        return v;
      };
      c = EquilibriumCurve::table(column("d", length_factor), column("F", force_factor),
                                  t.contains("source") ? t.at("source").get<std::string>() : "table");
      canon = {{"table", table_json(c, t.value("source", ""))}};
    } else if (j.contains("power_law")) {
      const std::string at = join(where, "power_law");
      const auto& p = j.at("power_law");
      check_keys(p, {"d0", "F0", "exponent"}, at);
      const double d0 = length(field(p, "d0", at), join(at, "d0")), f0 = force(field(p, "F0", at), join(at, "F0"));
      const double e = number(field(p, "exponent", at), join(at, "exponent"));
      c = EquilibriumCurve::power_law(d0, f0, e);
      canon = {{"power_law", {{"d0", {{"value", d0}, {"unit", "m"}}}, {"F0", {{"value", f0}, {"unit", "N/m"}}}, {"exponent", e}}}};
    } else if (j.contains("wire_log")) {
      const std::string at = join(where, "wire_log");
      const auto& p = j.at("wire_log");
      check_keys(p, {"d0", "F0", "radius"}, at);
      const double d0 = length(field(p, "d0", at), join(at, "d0")), f0 = force(field(p, "F0", at), join(at, "F0"));
      const double r = length(field(p, "radius", at), join(at, "radius"));
      c = EquilibriumCurve::wire_log(d0, f0, r);
      canon = {{"wire_log",
                {{"d0", {{"value", d0}, {"unit", "m"}}}, {"F0", {{"value", f0}, {"unit", "N/m"}}}, {"radius", {{"value", r}, {"unit", "m"}}}}}};
    } else {
      throw SchemaError(where + ": expected one of file, table, power_law, wire_log");
    }
  } catch (const DomainError& e) {
    throw SchemaError(where + ": " + e.what());
  }
  c.allow_extrapolation(extrapolate);
  canon["extrapolate"] = extrapolate;
  return {c, canon};
}

inline QuadratureControls controls(const json& j, const std::string& where) {
  QuadratureControls c;
  if (j.is_null()) return c;
  check_keys(j, {"rel_tol", "x_max", "n_max", "series_tol", "quadratic_terms", "kz_symmetry", "max_subintervals",
                 "light_line_guard", "evanescent_cutoff"},
             where);
  auto num = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = number(j.at(key), join(where, key));
  };
  num("rel_tol", c.rel_tol);
  num("x_max", c.x_max);
  num("series_tol", c.series_tol);
  num("light_line_guard", c.light_line_guard);
  num("evanescent_cutoff", c.evanescent_cutoff);
  auto integer = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer()) throw SchemaError(join(where, key) + ": expected an integer");
    dst = j.at(key).get<int>();
  };
  integer("n_max", c.n_max);
  integer("max_subintervals", c.max_subintervals);
  if (j.contains("quadratic_terms") && !j.at("quadratic_terms").is_null()) {
    if (!j.at("quadratic_terms").is_boolean()) throw SchemaError(join(where, "quadratic_terms") + ": expected true, false or null");
    c.quadratic_terms = j.at("quadratic_terms").get<bool>();
  }
  if (j.contains("kz_symmetry")) {
    if (!j.at("kz_symmetry").is_boolean()) throw SchemaError(join(where, "kz_symmetry") + ": expected a boolean");
    c.kz_symmetry = j.at("kz_symmetry").get<bool>();
  }
  return c;
}

inline ProviderKind provider(const std::string& s, const std::string& where) {
  if (s == "thin") return ProviderKind::Thin;
  if (s == "full") return ProviderKind::Full;
  throw SchemaError(where + ": expected 'thin' or 'full'");
}

// 1-based line of a byte offset
inline std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace detail

/// Material in canonical SI form, readable by material_from_json.
inline json material_to_json(const DielectricModel& m) {
  const auto& v = m.variant();
  json j = {{"name", m.name()}};
  if (std::holds_alternative<Vacuum>(v)) {
    j["model"] = "vacuum";
  } else if (auto* c = std::get_if<ConstantPermittivity>(&v)) {
    j["model"] = "constant";
    j["parameters"] = {{"eps_re", c->eps.real()}, {"eps_im", c->eps.imag()}};
  } else if (auto* l = std::get_if<Lorentz>(&v)) {
    j["model"] = "lorentz";
    j["parameters"] = {{"eps_inf", l->eps_inf}, {"omega_lo", l->omega_lo}, {"omega_to", l->omega_to}, {"gamma", l->gamma}};
    j["units"] = {{"omega_lo", "rad/s"}, {"omega_to", "rad/s"}, {"gamma", "rad/s"}};
  } else if (auto* s = std::get_if<ConductivitySum>(&v)) {
    json terms = json::array();
    for (const auto& t : s->terms) terms.push_back({{"sigma", t.sigma}, {"lambda_r", t.lambda_r}});
    j["model"] = "conductivity_sum";
    j["parameters"] = {{"terms", terms}};
    j["units"] = {{"sigma", "S/m"}, {"lambda_r", "m"}};
  } else if (auto* f = std::get_if<LowFrequencyExpansion>(&v)) {
    j["model"] = "low_frequency";
    j["parameters"] = {{"eps0", f->eps0}, {"lambda_in", f->lambda_in}};
    j["units"] = {{"lambda_in", "m"}};
  }
  return j;
}

/// base: directory for relative paths inside the scenario.
inline ScenarioFile parse_scenario(const json& j, const std::string& base = {}) {
  using namespace detail;
  check_keys(j, {"name", "provider", "cylinder1", "cylinder2", "temperatures", "separations", "equilibrium", "controls",
                 "threads", "output", "comment"},
             "");
  ScenarioFile s;
  if (j.contains("name")) s.name = string(j.at("name"), "name");
  s.controls = controls(j.value("controls", json()), "controls");
  if (j.contains("provider")) s.controls.provider = provider(string(j.at("provider"), "provider"), "provider");
  int k = 0;
  for (auto [r, m] : {std::pair{&s.radius1, &s.material1}, {&s.radius2, &s.material2}}) {
    const std::string at = "cylinder" + std::to_string(++k);
    const auto& c = field(j, at, "");
    check_keys(c, {"radius", "material"}, at);
    *r = length(field(c, "radius", at), at + ".radius");
    if (!(*r > 0.0)) throw SchemaError(at + ".radius: must be positive");
    *m = material(field(c, "material", at), base, at + ".material");
  }
  s.cases = temperatures(field(j, "temperatures", ""), "temperatures");
  s.grid = separations(field(j, "separations", ""), "separations");
  if (s.grid.front() <= s.radius1 + s.radius2) throw SchemaError("separations: must exceed the sum of the radii");
  std::tie(s.equilibrium, s.equilibrium_json) = equilibrium(j.value("equilibrium", json()), base, "equilibrium");
  if (j.contains("threads")) {
    if (!j.at("threads").is_number_unsigned()) throw SchemaError("threads: expected an integer >= 0");
    s.threads = j.at("threads").get<unsigned>();
  }
  if (j.contains("output")) s.output = resolve(base, string(j.at("output"), "output"));
  try {
    s.controls.validate();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("controls: ") + e.what());
  }
  return s;
}

inline ScenarioFile parse_scenario_text(const std::string& text, const std::string& origin = "scenario",
                                        const std::string& base = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(origin + ":" + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  try {
    return parse_scenario(j, base);
  } catch (const SchemaError& e) {
    throw SchemaError(origin + ": " + e.what());
  }
}

inline ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path, std::filesystem::path(path).parent_path().string());
}

/// Fully resolved scenario: SI units, defaults filled in, files inlined.
/// Parsing it back gives the same scenario.
inline json to_json(const ScenarioFile& s) {
  const auto& c = s.controls;
  json controls = {{"rel_tol", c.rel_tol},
                   {"x_max", c.x_max},
                   {"n_max", c.effective_n_max()},
                   {"series_tol", c.series_tol},
                   {"quadratic_terms", c.use_quadratic()},
                   {"kz_symmetry", c.kz_symmetry},
                   {"max_subintervals", c.max_subintervals},
                   {"light_line_guard", c.light_line_guard},
                   {"evanescent_cutoff", c.evanescent_cutoff}};
  json cases = json::array();
  for (const auto& t : s.cases) cases.push_back({{"T1", t.t1}, {"T2", t.t2}, {"T_env", t.t_env}});
  json j = {{"name", s.name},
            {"provider", to_string(c.provider)},
            {"cylinder1", {{"radius", {{"value", s.radius1}, {"unit", "m"}}}, {"material", material_to_json(s.material1)}}},
            {"cylinder2", {{"radius", {{"value", s.radius2}, {"unit", "m"}}}, {"material", material_to_json(s.material2)}}},
            {"temperatures", {{"unit", "K"}, {"cases", cases}}},
            {"separations", {{"unit", "m"}, {"values", s.grid}}},
            {"equilibrium", s.equilibrium_json},
            {"controls", controls}};
  return j;
}

// ---- running and CSV -----------------------------------------------------

struct CaseResult {
  TemperatureCase temps;
  std::vector<ForceBreakdown> rows;
};

inline std::vector<CaseResult> run(const ScenarioFile& s) {
  std::vector<CaseResult> out;
  for (const auto& c : s.cases) out.push_back({c, sweep(s.scenario(c), s.grid, s.threads)});
  return out;
}

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// F1_total = F_eq + F1_self + F1_int - F1_env_subtraction, and the same for
/// cylinder 2.  Forces are per unit length along each cylinder's outward axis:
/// positive is repulsion.  sign columns: +1 repulsive, -1 attractive.
inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "case",        "T1_K",        "T2_K",         "T_env_K",     "d_m",
      "F1_total",    "F2_total",    "F1_int",       "F1_self",     "F1_env_subtraction",
      "F_eq",        "F1_int_prop", "F1_int_evan",  "F1_self_prop", "F1_self_evan",
      "F1_env_prop", "F1_env_evan", "F2_int",       "F2_self",     "F2_env_subtraction",
      "F2_int_prop", "F2_int_evan", "F2_self_prop", "F2_self_evan", "F2_env_prop",
      "F2_env_evan", "F1_error",    "F2_error",     "sign1",       "sign2"};
  return cols;
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

inline void write_csv(std::ostream& out, const ScenarioFile& s, const std::vector<CaseResult>& results) {
  out << "# neqcasimir run\n";
  out << "# scenario: " << to_json(s).dump() << '\n';
  std::set<std::string> seen;
  for (const auto& r : results)
    for (const auto& b : r.rows)
      for (const auto& w : b.warnings)
        if (seen.insert(w).second) out << "# warning: " << w << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (std::size_t c = 0; c < results.size(); ++c) {
    const auto& t = results[c].temps;
    for (const auto& b : results[c].rows) {
      const ForceValue self1 = b.self_1, self2 = b.self_2;
      out << c << ',' << format_number(t.t1) << ',' << format_number(t.t2) << ',' << format_number(t.t_env);
      for (double v : {b.d, b.total_1(), b.total_2(), b.int_21.total(), self1.total(), b.env_1.total(), b.f_eq,
                       b.int_21.propagating, b.int_21.evanescent, self1.propagating, self1.evanescent, b.env_1.propagating,
                       b.env_1.evanescent, b.int_12.total(), self2.total(), b.env_2.total(), b.int_12.propagating,
                       b.int_12.evanescent, self2.propagating, self2.evanescent, b.env_2.propagating, b.env_2.evanescent,
                       b.noneq_1().error, b.noneq_2().error})
        out << ',' << format_number(v);
      out << ',' << sign_of(b.total_1()) << ',' << sign_of(b.total_2()) << '\n';
    }
  }
}

/// A run's CSV read back.
struct CsvTable {
  json scenario;  // null if the file has no scenario header
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw SchemaError("csv: missing column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
  }
};

inline CsvTable read_csv(std::istream& in, const std::string& origin = "csv") {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# scenario: ";
      if (line.rfind(tag, 0) == 0) {
        try {
          t.scenario = json::parse(line.substr(tag.size()));
        } catch (const json::parse_error& e) {
          throw SchemaError(origin + ":" + std::to_string(lineno) + ": bad scenario header: " + e.what());
        }
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw SchemaError(origin + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) + " cells");
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw SchemaError(origin + ":" + std::to_string(lineno) + ": not a number: '" + c + "'");
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw SchemaError(origin + ": no header row");
  return t;
}

// ---- zero crossings ------------------------------------------------------

enum class Stability { Stable, Unstable };

inline const char* to_string(Stability s) { return s == Stability::Stable ? "stable" : "unstable"; }

struct ZeroCrossing {
  double d = 0.0;           // m
  double lower = 0.0, upper = 0.0;  // final bracket
  Stability stability = Stability::Unstable;
};

/// Sign changes of f on the grid.  With eval, each bracket is bisected (in
/// log d) until its width is below rel_tol times d.  A force that turns from
/// repulsive to attractive with growing d pushes back towards the zero:
/// stable.
inline std::vector<ZeroCrossing> find_zeros(const std::vector<double>& d, const std::vector<double>& f,
                                            const std::function<double(double)>& eval = {}, double rel_tol = 1e-3) {
  if (d.size() != f.size()) throw DomainError("find_zeros: size mismatch");
  std::vector<ZeroCrossing> out;
  for (std::size_t i = 1; i < d.size(); ++i) {
    double a = d[i - 1], b = d[i], fa = f[i - 1], fb = f[i];
    if (fa == 0.0 || sign_of(fa) == sign_of(fb)) continue;
    if (fb == 0.0) {
      // exact zero on a node: count it once, against the next nonzero value
      if (i + 1 >= d.size()) continue;
      fb = f[i + 1];
      b = d[i + 1];
      if (sign_of(fa) == sign_of(fb)) continue;
    }
    ZeroCrossing z;
    z.stability = fa > 0.0 ? Stability::Stable : Stability::Unstable;
    if (eval) {
      while (b - a > rel_tol * a) {
        const double m = std::sqrt(a * b), fm = eval(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (sign_of(fm) == sign_of(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
          fb = fm;
        }
      }
    }
    z.lower = a;
    z.upper = b;
    // linear interpolation inside the final bracket
    z.d = a == b ? a : a + (b - a) * fa / (fa - fb);
    out.push_back(z);
  }
  return out;
}

struct CaseZero {
  int case_index = 0;
  int cylinder = 1;
  ZeroCrossing zero;
};

/// Zero crossings of F1_total and F2_total for every case in a run's CSV.
/// refine: bisect on the engine using the embedded scenario.
inline std::vector<CaseZero> find_zeros(const CsvTable& t, bool refine, double rel_tol = 1e-3) {
  const std::size_t ic = t.index("case"), id = t.index("d_m");
  std::optional<ScenarioFile> s;
  if (refine) {
    if (t.scenario.is_null()) throw SchemaError("csv: no scenario header; cannot refine (use --no-refine)");
    s = parse_scenario(t.scenario);
  }
  std::map<int, std::vector<const std::vector<double>*>> by_case;
  for (const auto& r : t.rows) by_case[static_cast<int>(r[ic])].push_back(&r);
  std::vector<CaseZero> out;
  for (const auto& [c, rows] : by_case) {
    std::vector<double> d;
    for (auto* r : rows) d.push_back((*r)[id]);
    for (int cyl : {1, 2}) {
      const std::size_t ix = t.index(cyl == 1 ? "F1_total" : "F2_total");
      std::vector<double> f;
      for (auto* r : rows) f.push_back((*r)[ix]);
      std::function<double(double)> eval;
      if (s) {
        if (c < 0 || static_cast<std::size_t>(c) >= s->cases.size()) throw SchemaError("csv: case index outside the scenario");
        const Scenario sc = s->scenario(s->cases[static_cast<std::size_t>(c)]);
        eval = [sc, cyl, threads = s->threads](double x) {
          const auto b = total_force(sc, x, threads);
          return cyl == 1 ? b.total_1() : b.total_2();
        };
      }
      for (const auto& z : find_zeros(d, f, eval, rel_tol)) out.push_back({c, cyl, z});
    }
  }
  return out;
}

// ---- comparisons ---------------------------------------------------------

/// rho pi R^2 g, N/m.
inline double weight_per_length(double density, double radius) {
  if (!(density >= 0.0) || !(radius >= 0.0)) throw DomainError("weight: density and radius must be >= 0");
  return density * kPi * radius * radius * kStandardGravity;
}

/// mu0 I1 I2 / (2 pi d), N/m; positive means attraction (parallel currents).
inline double ampere_force_per_length(double i1, double i2, double d) {
  if (!(d > 0.0)) throw DomainError("ampere: d must be positive");
  return kVacuumPermeability * i1 * i2 / (2.0 * kPi * d);
}

}  // namespace neqc::cli
