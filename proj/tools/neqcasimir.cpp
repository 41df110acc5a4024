// neqcasimir: sweeps, zero crossings and force-scale comparisons.
//
//   neqcasimir run <scenario.json> [--out file.csv] [--provider thin|full] [--rel-tol X]
//   neqcasimir zeros <run.csv> [--no-refine] [--rel-tol X]
//   neqcasimir compare-weight --density 19300 --radius 20e-9 [--length 1e-6] [--force F]
//   neqcasimir compare-ampere --current 17e-6 [--current2 I2] --distance 0.4e-6 [--length 1e-6] [--force F]
//
// Exit codes: 0 ok, 2 bad input, 3 quadrature did not converge, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "neqcasimir/cli.hpp"

namespace {

using namespace neqc;

int run_command(const std::string& path, const std::string& out_path, const std::string& provider,
                std::optional<double> rel_tol, std::optional<unsigned> threads) {
  auto s = cli::load_scenario(path);
  if (!provider.empty()) s.controls.provider = cli::detail::provider(provider, "--provider");
  if (rel_tol) s.controls.rel_tol = *rel_tol;
  if (threads) s.threads = *threads;
  try {
    s.controls.validate();
  } catch (const DomainError& e) {
    throw SchemaError(std::string("controls: ") + e.what());
  }
  const auto results = cli::run(s);
  const std::string dest = out_path.empty() ? s.output : out_path;
  if (dest.empty() || dest == "-") {
    cli::write_csv(std::cout, s, results);
  } else {
    std::ofstream out(dest);
    if (!out) throw std::runtime_error("cannot write " + dest);
    cli::write_csv(out, s, results);
    std::cerr << "wrote " << dest << '\n';
  }
  return 0;
}

int zeros_command(const std::string& path, bool refine, double rel_tol) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  const auto table = cli::read_csv(in, path);
  std::cout << "case,cylinder,d_star_m,stability,d_lower_m,d_upper_m\n";
  for (const auto& z : cli::find_zeros(table, refine, rel_tol))
    std::cout << z.case_index << ',' << z.cylinder << ',' << cli::format_number(z.zero.d) << ','
              << cli::to_string(z.zero.stability) << ',' << cli::format_number(z.zero.lower) << ','
              << cli::format_number(z.zero.upper) << '\n';
  return 0;
}

void report(const char* what, double per_length, double length, std::optional<double> force) {
  std::printf("%s_per_length_N_per_m=%.6e\n", what, per_length);
  std::printf("%s_over_length_N=%.6e (L = %.3e m)\n", what, per_length * length, length);
  if (force) std::printf("ratio_to_force=%.6e (|F| = %.6e N/m)\n", per_length / std::abs(*force), std::abs(*force));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-equilibrium Casimir forces between two parallel cylinders"};
  app.require_subcommand(1);

  std::string scenario, out, provider;
  std::optional<double> run_tol;
  std::optional<unsigned> threads;
  auto* run = app.add_subcommand("run", "sweep a scenario and write CSV");
  run->add_option("scenario", scenario, "scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out,-o", out, "output CSV ('-' for stdout; default: scenario 'output' or stdout)");
  run->add_option("--provider", provider, "T-matrix provider")->check(CLI::IsMember({"thin", "full"}));
  run->add_option("--rel-tol", run_tol, "relative quadrature tolerance");
  run->add_option("--threads", threads, "worker threads (0: all cores)");

  std::string csv;
  bool no_refine = false;
  double zero_tol = 1e-3;
  auto* zeros = app.add_subcommand("zeros", "zero crossings of the total force in a run's CSV");
  zeros->add_option("csv", csv, "CSV written by 'run'")->required()->check(CLI::ExistingFile);
  zeros->add_flag("--no-refine", no_refine, "interpolate on the grid instead of bisecting on the engine");
  zeros->add_option("--rel-tol", zero_tol, "bisection stops at this relative width in d");

  double density = 0.0, radius = 0.0, length = 1e-6;
  std::optional<double> force_w;
  auto* weight = app.add_subcommand("compare-weight", "weight per unit length, rho pi R^2 g");
  weight->add_option("--density", density, "kg/m^3")->required();
  weight->add_option("--radius", radius, "m")->required();
  weight->add_option("--length", length, "m, for the absolute force");
  weight->add_option("--force", force_w, "N/m, Casimir force to compare with");

  double i1 = 0.0, d = 0.0, length_a = 1e-6;
  std::optional<double> i2, force_a;
  auto* ampere = app.add_subcommand("compare-ampere", "force between parallel currents, mu0 I1 I2 / (2 pi d)");
  ampere->add_option("--current", i1, "A")->required();
  ampere->add_option("--current2", i2, "A (default: same as --current)");
  ampere->add_option("--distance", d, "m")->required();
  ampere->add_option("--length", length_a, "m, for the absolute force");
  ampere->add_option("--force", force_a, "N/m, Casimir force to compare with");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_command(scenario, out, provider, run_tol, threads);
    if (*zeros) return zeros_command(csv, !no_refine, zero_tol);
    if (*weight) {
      report("weight", cli::weight_per_length(density, radius), length, force_w);
      return 0;
    }
    if (*ampere) {
      report("ampere", cli::ampere_force_per_length(i1, i2.value_or(i1), d), length_a, force_a);
      return 0;
    }
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InterpolationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NonConvergenceError& e) {
    const auto& g = e.diagnostics();
    std::cerr << "error: " << e.what() << " (worst panel [" << g.lower << ", " << g.upper << "], error " << g.total_error
              << " vs tolerance " << g.tolerance << ", " << g.subintervals << " subintervals)\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
