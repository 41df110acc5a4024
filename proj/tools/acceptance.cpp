// Acceptance run: one PASS/FAIL line per criterion, diagnostics indented
// below it.  `acceptance --only 1,3` runs a subset.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "neqcasimir/asymptotics.hpp"
#include "neqcasimir/cli.hpp"
#include "neqcasimir/dilute_oracle.hpp"
#include "neqcasimir/engine.hpp"
#include "neqcasimir/specfun.hpp"
#include "neqcasimir/tmatrix.hpp"

using namespace neqc;
namespace sf = neqc::specfun;

namespace {

std::string source_dir = NEQC_SOURCE_DIR;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, n == 1 ? 0.0 : double(i) / (n - 1)));
  return g;
}

// least-squares slope of log|f| against log d
double log_slope(const std::vector<double>& d, const std::vector<double>& f) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = std::log(d[i]), y = std::log(std::abs(f[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CylinderSpec sic(double r, double t) { return {r, silicon_carbide(), t}; }
CylinderSpec tungsten(double r, double t) { return {r, tungsten_2400K(), t}; }

QuadratureControls full_controls() {
  QuadratureControls c;
  c.provider = ProviderKind::Full;
  return c;
}

// ---- 1 -------------------------------------------------------------------

Outcome dilute_triple() {
  Outcome o;
  // 1 + 1e-4 (1 + i) at omega_T = k_B T / hbar; Im eps grows linearly from 0
  // so the frequency integrals converge at omega -> 0
  const DielectricModel m(LowFrequencyExpansion{1.0 + 1e-4, 1e-4 * thermal_wavelength(300.0)}, "dilute");
  const double r = 10e-9, t2 = 300.0;
  for (double d : {0.5e-6, 50e-6}) {
    const auto e = interaction_force({r, m, t2}, {r, m, 0.0}, t2, d);
    const double dm2 = dilute::d_minus2_term(r, r, m, m, t2, d);
    const double engine = e.total() - dm2;
    const auto regime = d < 1e-6 ? dilute::Regime::Near : dilute::Regime::Far;
    const double closed = dilute::dilute_closed_forms(r, r, m, m, t2, d, regime);
    const double sum = dilute::cylinder_force_by_summation(r, r, m, m, t2, d, dilute::Terms::without_r3());
    o.note(fmt("d = %4.1f um: engine %.6e (d^-2 term %.3e removed), closed form %.6e, summation %.6e N/m", d * 1e6,
               engine, dm2, closed, sum));
    const double worst = std::max({rel(engine, closed), rel(sum, closed), rel(engine, sum)});
    o.check(worst < 0.02, fmt("d = %4.1f um: largest pairwise deviation %.2e < 2%%", d * 1e6, worst));
  }
  return o;
}

// ---- 2 -------------------------------------------------------------------

Outcome power_laws() {
  Outcome o;
  const auto hot = sic(1e-7, 300.0), cold = sic(1e-7, 0.0);
  std::vector<double> near_d = log_grid(0.3e-6, 1e-6, 6), near_f, near_ev;
  for (double d : near_d) {
    const auto f = interaction_force(hot, cold, 300.0, d);
    near_f.push_back(f.total());
    near_ev.push_back(f.evanescent);
  }
  const double s_near = log_slope(near_d, near_f);
  o.check(std::abs(s_near + 6.0) <= 0.15, fmt("interaction force slope over [0.3, 1] um: %.3f (target -6 +- 0.15)", s_near));
  o.note(fmt("evanescent channel alone: %.3f; propagating/evanescent at 1 um: %.2f", log_slope(near_d, near_ev),
             (near_f.back() - near_ev.back()) / near_ev.back()));

  std::vector<double> far_d = log_grid(50e-6, 200e-6, 4), far_f;
  for (double d : far_d) far_f.push_back(interaction_force(hot, cold, 300.0, d).total());
  const double s_far = log_slope(far_d, far_f);
  o.check(std::abs(s_far + 1.0) <= 0.1, fmt("interaction force slope over [50, 200] um: %.3f (target -1 +- 0.1)", s_far));

  // Self-force envelope.  The d^-3/2 law holds frequency by frequency, with
  // the phase exp(2 i omega d / c); the envelope is the RMS over half an
  // oscillation at the SiC emission line omega_TO.
  const double w = silicon_carbide().feature_frequencies().front();
  const double half = kPi * kSpeedOfLight / w;  // half wavelength
  std::vector<double> env_d = {20e-6, 40e-6, 80e-6, 160e-6}, env;
  QuadratureControls c;
  for (double d0 : env_d) {
    double ss = 0.0;
    const int n = 16;
    for (int i = 0; i < n; ++i) {
      ForceIntegrator fi(cold, hot, d0 + i * half / n, c);
      const auto s = fi.spectral_interaction(w);
      const double v = fi.spectral_pair_source(w) + s[0] + s[1];
      ss += v * v;
    }
    env.push_back(std::sqrt(ss / n));
  }
  const double s_env = log_slope(env_d, env);
  o.check(std::abs(s_env + 1.5) <= 0.1,
          fmt("self-force spectral envelope slope at omega_TO over [20, 160] um: %.3f (target -1.5 +- 0.1)", s_env));
  for (std::size_t i = 1; i < env_d.size(); ++i)
    o.note(fmt("local envelope slope %3.0f-%3.0f um: %.3f", env_d[i - 1] * 1e6, env_d[i] * 1e6,
               std::log(env[i] / env[i - 1]) / std::log(env_d[i] / env_d[i - 1])));
  return o;
}

// ---- 3 -------------------------------------------------------------------

EquilibriumCurve sic_equilibrium() {
  auto c = EquilibriumCurve::load_csv(source_dir + "/data/sic_feq_standin.csv");
  c.allow_extrapolation();
  return c;
}

// First d where |F_total - F_eq| exceeds `fraction` of |F_eq|, interpolated
// in log d between grid points; 0 if none.
double departure(const std::vector<ForceBreakdown>& rows, double fraction) {
  double prev_d = 0.0, prev_x = 0.0;
  for (const auto& b : rows) {
    const double x = std::abs(b.noneq_1().total()) / std::abs(b.f_eq);
    if (x > fraction) {
      if (prev_d == 0.0) return b.d;
      const double s = (fraction - prev_x) / (x - prev_x);
      return prev_d * std::pow(b.d / prev_d, s);
    }
    prev_d = b.d;
    prev_x = x;
  }
  return 0.0;
}

Outcome sic_phenomenology() {
  Outcome o;
  const Scenario s{sic(1e-7, 0.0), sic(1e-7, 300.0), 0.0, QuadratureControls{}, sic_equilibrium()};
  const auto rows = sweep(s, log_grid(1e-6, 12e-6, 15));
  const double dep = departure(rows, 0.1), half = thermal_wavelength(300.0) / 2.0;
  o.check(dep >= 0.5 * half && dep <= 1.5 * half,
          fmt("{0, 300 K, 0}: departs from equilibrium by 10%% at %.2f um (window [%.2f, %.2f] um)", dep * 1e6,
              0.5 * half * 1e6, 1.5 * half * 1e6));
  o.note("equilibrium reference: " + s.equilibrium.label());

  bool repulsive = true;
  std::string values;
  for (const auto& b : sweep(s, {20e-6, 25e-6, 30e-6, 40e-6, 50e-6})) {
    repulsive = repulsive && b.total_1() > 0.0;
    values += fmt(" %.0f:%+.2e", b.d * 1e6, b.total_1());
  }
  o.check(repulsive, "{0, 300 K, 0}: repulsive for d in [20, 50] um;" + values);

  const Scenario h{sic(1e-7, 300.0), sic(1e-7, 0.0), 0.0, QuadratureControls{}, EquilibriumCurve{}};
  std::vector<double> grid, self;
  for (int i = 0; i <= 60; ++i) grid.push_back(10e-6 + i * 0.5e-6);
  for (const auto& b : sweep(h, grid)) self.push_back(b.self_1.total());
  const auto zeros = cli::find_zeros(grid, self);
  if (zeros.size() < 2) {
    o.check(false, "{300 K, 0, 0}: fewer than two self-force zeros in [10, 40] um");
    return o;
  }
  const double spacing = (zeros.back().d - zeros.front().d) / double(zeros.size() - 1);
  const double period = 2.0 * spacing;
  o.check(std::abs(period - 6e-6) <= 0.15 * 6e-6,
          fmt("{300 K, 0, 0}: self-force oscillation period %.2f um from %zu zeros in [10, 40] um (6 um +- 15%%)",
              period * 1e6, zeros.size()));
  o.note(fmt("lambda_0 / 2 of the SiC line: %.2f um",
             0.5 * units::rad_per_s_to_wavelength(silicon_carbide().feature_frequencies().front()) * 1e6));
  return o;
}

// ---- 4 -------------------------------------------------------------------

Outcome scaling() {
  Outcome o;
  QuadratureControls thin;
  const double big = 50e-9, small = 5e-9, expect = std::pow(big / small, 4);
  for (double d : {1e-6, 20e-6}) {
    const double i_big = interaction_force(sic(big, 300.0), sic(big, 0.0), 300.0, d, thin).total();
    const double i_small = interaction_force(sic(small, 300.0), sic(small, 0.0), 300.0, d, thin).total();
    const double s_big = self_force(sic(big, 300.0), sic(big, 0.0), 300.0, d, thin).total();
    const double s_small = self_force(sic(small, 300.0), sic(small, 0.0), 300.0, d, thin).total();
    const double di = std::abs(i_big / i_small / expect - 1.0), ds = std::abs(s_big / s_small / expect - 1.0);
    o.check(di < 0.01 && ds < 0.01,
            fmt("thin SiC, d = %4.1f um: F(50 nm)/F(5 nm) / 10^4 - 1 = %.1e (interaction), %.1e (self)", d * 1e6, di, ds));
  }
  const auto c = full_controls();
  const double d = 1e-6;
  const double w_big = interaction_force(tungsten(20e-9, 2400.0), tungsten(20e-9, 0.0), 2400.0, d, c).total();
  const double w_small = interaction_force(tungsten(10e-9, 2400.0), tungsten(10e-9, 0.0), 2400.0, d, c).total();
  const double dev = std::abs(w_big / w_small / 16.0 - 1.0);
  o.check(dev > 0.05, fmt("full tungsten, d = 1 um: F(20 nm)/F(10 nm) / 16 - 1 = %.3f (must exceed 5%%)", dev));
  return o;
}

// ---- 5 -------------------------------------------------------------------

EquilibriumCurve tungsten_equilibrium() {
  auto c = EquilibriumCurve::load_csv(source_dir + "/data/tungsten_feq_standin.csv");
  c.allow_extrapolation();
  return c;
}

Outcome tungsten_stable_point() {
  Outcome o;
  const Scenario s{tungsten(20e-9, 0.0), tungsten(20e-9, 0.0), 2400.0, full_controls(), tungsten_equilibrium()};
  const auto grid = log_grid(0.5e-6, 16e-6, 11);
  const auto rows = sweep(s, grid);
  std::vector<double> f;
  std::string signs, pattern;
  for (const auto& b : rows) {
    f.push_back(b.total_1());
    const char c = b.total_1() > 0 ? '+' : '-';
    signs += c;
    if (pattern.empty() || pattern.back() != c) pattern += c;
    o.note(fmt("d = %6.3f um: total %+.3e, F_eq %+.3e, evanescent %+.3e, propagating %+.3e N/m", b.d * 1e6, b.total_1(),
               b.f_eq, -b.env_1.evanescent, -b.env_1.propagating));
  }
  o.check(pattern == "-+-", "sign pattern over [0.5, 16] um: " + signs + " (attract, repel, attract)");
  const auto zeros = cli::find_zeros(grid, f, [&](double d) { return total_force(s, d).total_1(); }, 0.02);
  const cli::ZeroCrossing* stable = nullptr;
  for (const auto& z : zeros)
    if (z.stability == cli::Stability::Stable) stable = &z;
  if (!stable) {
    o.check(false, "no stable zero found");
    return o;
  }
  o.check(stable->d >= 2e-6 && stable->d <= 8e-6,
          fmt("stable zero at %.2f um (within a factor 2 of 4 um)", stable->d * 1e6));
  o.note("equilibrium reference: " + s.equilibrium.label());
  return o;
}

// ---- 6 -------------------------------------------------------------------

Outcome comparisons() {
  Outcome o;
  const double length = 1e-6;
  const double weight = cli::weight_per_length(19300.0, 20e-9) * length;
  const double ampere = cli::ampere_force_per_length(17e-6, 17e-6, 0.4e-6) * length;
  o.check(std::abs(weight / 0.24e-15 - 1.0) <= 0.05, fmt("weight of a 1 um, 20 nm tungsten wire: %.4f fN (0.24 +- 5%%)", weight * 1e15));
  o.check(std::abs(ampere / 0.15e-15 - 1.0) <= 0.10, fmt("Ampere force, 17 uA at 0.4 um over 1 um: %.4f fN (0.15 +- 10%%)", ampere * 1e15));

  // departure point of the hot/cold pair in a cold environment
  const Scenario s{tungsten(20e-9, 0.0), tungsten(20e-9, 2400.0), 0.0, full_controls(), tungsten_equilibrium()};
  const auto rows = sweep(s, log_grid(0.2e-6, 3.2e-6, 9));
  const double dep = departure(rows, 0.1);
  if (dep == 0.0) {
    o.check(false, "no departure from equilibrium in [0.2, 3.2] um");
    return o;
  }
  const double noneq = std::abs(sweep(s, {dep}).front().noneq_1().total()) * length;
  o.note(fmt("{0, 2400 K, 0}: departure at %.3f um, non-equilibrium force there %.3f fN per um", dep * 1e6, noneq * 1e15));
  o.check(noneq / weight > 10.0, fmt("non-equilibrium force / weight = %.1f > 10", noneq / weight));
  o.check(noneq / ampere > 10.0, fmt("non-equilibrium force / Ampere force = %.1f > 10", noneq / ampere));
  // by construction noneq = 0.1 |F_eq| at the departure; for scale, where it reaches |F_eq|
  if (const double dom = departure(rows, 1.0); dom > 0.0) {
    const double f = std::abs(sweep(s, {dom}).front().noneq_1().total()) * length;
    o.note(fmt("|noneq| = |F_eq| at %.3f um: %.3f fN per um, %.1f x weight, %.1f x Ampere", dom * 1e6, f * 1e15,
               f / weight, f / ampere));
  }
  return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome invariants() {
  Outcome o;
  const auto m = silicon_carbide();
  const CylinderSpec a{1e-7, m, 300.0}, b{1e-7, m, 0.0}, vac{1e-7, DielectricModel::vacuum(), 300.0};
  o.check(interaction_force(vac, b, 300.0, 2e-6).total() == 0.0 && interaction_force(a, vac, 300.0, 2e-6).total() == 0.0 &&
              pair_source_force(a, vac, 300.0, 2e-6).total() == 0.0,
          "vacuum partner or source gives exactly zero");
  o.check(interaction_force(a, b, 0.0, 2e-6).total() == 0.0 && self_force(a, b, 0.0, 2e-6).total() == 0.0 &&
              asymptotics::interaction_near(1e-7, 1e-7, m, m, 0.0, 1e-6).value == 0.0,
          "T = 0 sources give exactly zero");

  double worst = 0.0;
  for (double x : log_grid(1e-3, 1e3, 41))
    for (int n = -12; n <= 12; ++n) {
      const double jy = sf::bessel_j(n + 1, x) * sf::bessel_y(n, x) - sf::bessel_j(n, x) * sf::bessel_y(n + 1, x);
      const double ik = sf::bessel_i_scaled(n, x) * sf::bessel_k_scaled(n + 1, x) +
                        sf::bessel_i_scaled(n + 1, x) * sf::bessel_k_scaled(n, x);
      worst = std::max({worst, std::abs(jy * kPi * x / 2.0 - 1.0), std::abs(ik * x - 1.0)});
    }
  o.check(worst < 1e-10, fmt("Wronskians J/Y and I/K, |n| <= 12, x in [1e-3, 1e3]: max deviation %.1e", worst));

  double pol = 0.0;
  for (int n = -4; n <= 4; ++n)
    for (double kt : {-1.7, -0.4, 0.3, 2.2})
      for (Complex eps : {Complex(6.0, 0.3), Complex(-20.0, 4.0), Complex(-1.0, 0.05)}) {
        const auto t = full_t(n, kt, eps, 1.0, 0.3);
        const double scale = std::max({std::abs(t(kM, kM)), std::abs(t(kN, kN)), 1e-300});
        pol = std::max(pol, std::abs(t(kM, kN) - t(kN, kM)) / scale);
      }
  o.check(pol < 1e-10, fmt("polarization symmetry T_MN = T_NM of the full T-matrix: max deviation %.1e", pol));

  const Scenario eq{a, {0.8e-7, m, 300.0}, 300.0, QuadratureControls{}, sic_equilibrium()};
  const auto r = total_force(eq, 4e-6);
  o.check(r.total_1() == r.f_eq && r.total_2() == r.f_eq, "T1 = T2 = T_env: total force equals F_eq exactly");

  bool positive = true;
  for (const auto& mat : {silicon_carbide(), tungsten_2400K()})
    for (double d : {20e-6, 100e-6})
      positive = positive && asymptotics::interaction_far(1e-7, 1e-7, mat, mat, 300.0, d).value > 0.0;
  o.check(positive, "far-field form is positive (repulsive) for SiC and tungsten");
  return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome low_temperature() {
  Outcome o;
  const auto sic_model = silicon_carbide();
  const auto fit = low_frequency_fit(sic_model);
  const double lambda0 = lowest_resonance_wavelength(sic_model), r = 1e-7;
  for (double ratio : {30.0, 100.0}) {
    const double t = kHbar * kSpeedOfLight / (kBoltzmann * ratio * lambda0), lt = thermal_wavelength(t);
    const DielectricModel eq9(LowFrequencyExpansion{fit.eps0, fit.lambda_in}, "eq9");
    const double dn = lt / 50.0, df = 50.0 * lt;
    const double near = asymptotics::interaction_near(r, r, eq9, eq9, t, dn).value;
    const double far = asymptotics::interaction_far(r, r, eq9, eq9, t, df).value;
    const double near_lt = asymptotics::interaction_near_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, dn).value;
    const double far_lt = asymptotics::interaction_far_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, df).value;
    o.check(rel(near_lt, near) < 0.02 && rel(far_lt, far) < 0.02,
            fmt("lambda_T / lambda_0 = %3.0f (T = %.2f K): near %.1e, far %.1e relative deviation", ratio, t,
                rel(near_lt, near), rel(far_lt, far)));
    // same with the resonant dielectric itself
    const double near_res = asymptotics::interaction_near(r, r, sic_model, sic_model, t, dn).value;
    const double far_res = asymptotics::interaction_far(r, r, sic_model, sic_model, t, df).value;
    o.note(fmt("against the full Lorentz response: near %.1e, far %.1e", rel(near_lt, near_res), rel(far_lt, far_res)));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-8"};
  std::vector<int> only;
  app.add_option("--only", only, "criteria to run")->delimiter(',')->check(CLI::Range(1, 8));
  app.add_option("--source-dir", source_dir, "repository root (data files)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"dilute-limit triple agreement", dilute_triple},
      {"power laws", power_laws},
      {"SiC phenomenology", sic_phenomenology},
      {"R1^2 R2^2 scaling", scaling},
      {"tungsten stable point", tungsten_stable_point},
      {"physical comparisons", comparisons},
      {"invariant suite", invariants},
      {"low-temperature asymptotics", low_temperature},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s  %s (%.0f s)\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first, dt);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
