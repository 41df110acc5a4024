// Heat one thin SiC wire, keep the other and the room at 0 K, and compare the
// force on the cold wire with its near- and far-field asymptotes.

#include <cmath>
#include <cstdio>

#include "neqcasimir/asymptotics.hpp"
#include "neqcasimir/engine.hpp"

int main() {
  using namespace neqc;
  const double r = 100e-9, t = 300.0;
  const auto m = silicon_carbide();
  const CylinderSpec hot{r, m, t}, cold{r, m, 0.0};

  std::printf("%8s %14s %14s %14s %14s\n", "d_um", "F_prop", "F_evan", "near", "far");
  for (double d_um : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
    const double d = d_um * 1e-6;
    const auto f = interaction_force(hot, cold, t, d);
    std::printf("%8.1f %14.4e %14.4e %14.4e %14.4e\n", d_um, f.propagating, f.evanescent,
                asymptotics::interaction_near(r, r, m, m, t, d).value, asymptotics::interaction_far(r, r, m, m, t, d).value);
  }
  std::printf("near/far crossover: %.2f um\n", 1e6 * asymptotics::crossover(r, r, m, m, t, 1e-6, 100e-6));
}
