// Dilute limit three ways: the exact engine, the closed forms, and a pairwise
// sum of sphere-sphere forces over two lines of volume elements.

#include <cstdio>

#include "neqcasimir/dilute_oracle.hpp"
#include "neqcasimir/engine.hpp"

int main() {
  using namespace neqc;
  const DielectricModel m(LowFrequencyExpansion{1.0 + 1e-4, 1e-4 * thermal_wavelength(300.0)}, "dilute");
  const double r = 10e-9;
  const CylinderSpec hot{r, m, 300.0}, cold{r, m, 0.0};
  for (double d : {0.5e-6, 50e-6}) {
    const auto regime = d < 5e-6 ? dilute::Regime::Near : dilute::Regime::Far;
    std::printf("d = %4.1f um\n", d * 1e6);
    std::printf("  engine     %.6e\n", interaction_force(hot, cold, 300.0, d).total());
    std::printf("  closed     %.6e\n", dilute::dilute_closed_forms(r, r, m, m, 300.0, d, regime));
    std::printf("  summation  %.6e\n", dilute::cylinder_force_by_summation(r, r, m, m, 300.0, d));
  }
}
