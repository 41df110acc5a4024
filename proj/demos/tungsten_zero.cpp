// Two cold 20 nm tungsten wires in a 2400 K enclosure: find where the total
// force changes sign.  Full multipole solve; takes a few minutes on one core.

#include <cstdio>

#include "neqcasimir/cli.hpp"

int main(int argc, char** argv) {
  using namespace neqc;
  const std::string eq = argc > 1 ? argv[1] : NEQC_SOURCE_DIR "/data/tungsten_feq_standin.csv";
  const auto w = tungsten_2400K();
  Scenario s{{20e-9, w, 0.0}, {20e-9, w, 0.0}, 2400.0, {}, EquilibriumCurve::load_csv(eq)};
  s.controls.provider = ProviderKind::Full;

  std::vector<double> grid, f;
  for (double d = 1e-6; d < 17e-6; d *= 2.0) grid.push_back(d);
  for (const auto& b : sweep(s, grid)) {
    std::printf("d = %5.1f um  total %+.3e  F_eq %+.3e N/m\n", b.d * 1e6, b.total_1(), b.f_eq);
    f.push_back(b.total_1());
  }
  auto eval = [&](double d) { return total_force(s, d).total_1(); };
  for (const auto& z : cli::find_zeros(grid, f, eval, 1e-2))
    std::printf("zero at %.2f um (%s)\n", z.d * 1e6, cli::to_string(z.stability));
}
