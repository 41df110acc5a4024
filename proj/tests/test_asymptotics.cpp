#include <gtest/gtest.h>

#include <cmath>

#include "neqcasimir/asymptotics.hpp"
#include "neqcasimir/engine.hpp"

using namespace neqc;
using namespace neqc::asymptotics;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

DielectricModel low_frequency(double eps0, double lambda_in) {
  return DielectricModel(LowFrequencyExpansion{eps0, lambda_in}, "eq9");
}

}  // namespace

TEST(AuxiliaryFunctions, VacuumAndSymmetry) {
  EXPECT_EQ(g6(1.0, 1.0), 0.0);
  EXPECT_EQ(g4(1.0, 1.0), 0.0);
  EXPECT_EQ(g1(1.0, 1.0), 0.0);
  const Complex a(3.0, 0.4), b(-5.0, 2.0);
  EXPECT_DOUBLE_EQ(g1(a, b), g1(b, a));
  EXPECT_EQ(f6(1.0, 7.0), 0.0);
  EXPECT_EQ(f4(1.0, 7.0), 0.0);
  EXPECT_THROW(g6(Complex(-1.0, 0.0), 2.0), DomainError);
  EXPECT_THROW(g1(2.0, Complex(-1.0, 0.0)), DomainError);
  EXPECT_THROW(f1(-1.0, 2.0), DomainError);
}

// Optically dilute media: the g functions reduce to the leading order in
// eps - 1, which is -Re(eps1 - 1) Im eps2 (45/64 d^-6 + 3 k^2/16 d^-4) in the
// bracket of the near form.
TEST(AuxiliaryFunctions, DiluteReduction) {
  const double a = 1e-4, b = 1e-4;
  const Complex e1(1.0 + a, 0.0), e2(1.0 + b, b);
  const double d = 1.0, k = 0.7;
  const double near = g6(e1, e2) / std::pow(d, 6) + k * k * g4(e1, e2) / std::pow(d, 4);
  const double dilute = -(e1.real() - 1.0) * e2.imag() * (45.0 / 64.0 / std::pow(d, 6) + 3.0 * k * k / 16.0 / std::pow(d, 4));
  EXPECT_LT(rel(near, dilute), 1e-3);
}

TEST(AuxiliaryFunctions, RealForPassiveMedia) {
  for (double re : {-20.0, -3.0, -0.5, 0.5, 4.0, 12.0})
    for (double im : {1e-3, 0.3, 5.0}) {
      const Complex e(re, im);
      EXPECT_TRUE(std::isfinite(g6(e, e)) && std::isfinite(g4(e, e)));
      EXPECT_GT(g1(e, e), 0.0);
    }
}

TEST(ClosedForms, TrivialCases) {
  const auto m = silicon_carbide();
  EXPECT_EQ(interaction_near(1e-7, 1e-7, m, m, 0.0, 1e-6).value, 0.0);
  EXPECT_EQ(interaction_far(1e-7, 1e-7, m, m, 0.0, 1e-4).value, 0.0);
  const double a = interaction_near(1e-7, 1e-7, m, m, 300.0, 1e-6).value;
  EXPECT_NEAR(interaction_near(2e-7, 3e-7, m, m, 300.0, 1e-6).value / a, 36.0, 1e-9);
  const double f = interaction_far(1e-7, 1e-7, m, m, 300.0, 1e-4).value;
  EXPECT_NEAR(interaction_far(1e-7, 1e-7, m, m, 300.0, 3e-4).value / f, 1.0 / 3.0, 1e-12);
  EXPECT_LT(a, 0.0);
  EXPECT_GT(f, 0.0);
  EXPECT_EQ(interaction_near_lowT(1e-7, 1e-7, 10.0, 10.0, 1e-7, 0.0, 5.0, 1e-5).value, 0.0);
  EXPECT_THROW(interaction_near(1e-7, 1e-7, m, m, 300.0, 1.5e-7), DomainError);
}

TEST(ClosedForms, RegimeWarnings) {
  const auto m = silicon_carbide();
  EXPECT_TRUE(interaction_near(1e-7, 1e-7, m, m, 300.0, 1e-6).warnings.empty());
  EXPECT_FALSE(interaction_near(1e-7, 1e-7, m, m, 300.0, 5e-6).warnings.empty());
  EXPECT_FALSE(interaction_far(1e-7, 1e-7, m, m, 300.0, 1e-5).warnings.empty());
  EXPECT_TRUE(interaction_far(1e-7, 1e-7, m, m, 300.0, 5e-5).warnings.empty());
}

TEST(ClosedForms, LowTemperatureScaling) {
  const double r = 1e-7, d = 1e-5, e0 = 10.0, li = 5e-8;
  const double lt1 = thermal_wavelength(5.0), lt2 = thermal_wavelength(10.0);
  const auto a = interaction_near_lowT(r, r, e0, e0, li, li, 5.0, d), b = interaction_near_lowT(r, r, e0, e0, li, li, 10.0, d);
  // split the two powers of d to isolate the d^-6 term
  const double six_a = -kHbar * kSpeedOfLight * li * r * r * r * r * f6(e0, e0) / (lt1 * lt1 * std::pow(d, 6));
  const double six_b = -kHbar * kSpeedOfLight * li * r * r * r * r * f6(e0, e0) / (lt2 * lt2 * std::pow(d, 6));
  EXPECT_NEAR(six_b / six_a, 4.0, 1e-12);
  EXPECT_LT(a.value, 0.0);
  EXPECT_LT(b.value, a.value);
  EXPECT_GT(interaction_far_lowT(r, r, e0, e0, li, li, 5.0, 1.0).value, 0.0);
}

// Numerical frequency integral of the near and far forms with the linear
// low-frequency dielectric as oracle for the low-temperature closed forms.
TEST(ClosedForms, LowTemperatureFormsMatchQuadrature) {
  const auto fit = low_frequency_fit(silicon_carbide());
  const auto eq9 = low_frequency(fit.eps0, fit.lambda_in);
  const double r = 1e-7, t = 5.0, lt = thermal_wavelength(t);
  ASSERT_GE(lt / lowest_resonance_wavelength(silicon_carbide()), 30.0);
  const double dn = lt / 50.0, df = 50.0 * lt;
  const auto near = interaction_near(r, r, eq9, eq9, t, dn), far = interaction_far(r, r, eq9, eq9, t, df);
  EXPECT_LT(rel(interaction_near_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, dn).value, near.value), 0.02);
  EXPECT_LT(rel(interaction_far_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, df).value, far.value), 0.01);
}

// Same comparison with the resonant SiC response itself: the low-T forms hold
// once lambda_T is far above the resonance wavelength.
TEST(ClosedForms, LowTemperatureFormsMatchResonantMedium) {
  const auto m = silicon_carbide();
  const auto fit = low_frequency_fit(m);
  const double r = 1e-7, lambda0 = lowest_resonance_wavelength(m);
  const double t = kHbar * kSpeedOfLight / (kBoltzmann * 30.0 * lambda0), lt = thermal_wavelength(t);
  const double dn = lt / 50.0, df = 50.0 * lt;
  EXPECT_LT(rel(interaction_near_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, dn, lambda0).value,
                interaction_near(r, r, m, m, t, dn).value),
            0.02);
  EXPECT_LT(rel(interaction_far_lowT(r, r, fit.eps0, fit.eps0, fit.lambda_in, fit.lambda_in, t, df, lambda0).value,
                interaction_far(r, r, m, m, t, df).value),
            0.02);
}

// The far form of SiC is enhanced by the eps = -1 surface resonance inside g1,
// so the two forms meet below lambda_T / 2 (about 1.2 um against 3.8 um).
TEST(ClosedForms, CrossoverOfNearAndFarForms) {
  const auto m = silicon_carbide();
  const double half = thermal_wavelength(300.0) / 2.0;
  const double x = crossover(1e-7, 1e-7, m, m, 300.0, 0.5e-6, 100e-6);
  const double n = interaction_near(1e-7, 1e-7, m, m, 300.0, x).value, f = interaction_far(1e-7, 1e-7, m, m, 300.0, x).value;
  EXPECT_NEAR(std::abs(n) / f, 1.0, 1e-8);
  EXPECT_LT(x, half);
  EXPECT_GT(x, half / 4.0);
  EXPECT_THROW(crossover(1e-7, 1e-7, m, m, 300.0, 10e-6, 100e-6), DomainError);
}

// The engine is an independent path to the same limits.
TEST(ClosedForms, AgreeWithEngine) {
  const auto m = silicon_carbide();
  const CylinderSpec a{1e-7, m, 300.0}, b{1e-7, m, 0.0};
  // d = 1 um: the propagating channel carries a d^-1 piece from the eps = -1
  // resonance of g1 that the near form drops, so compare the evanescent part
  const auto f1 = interaction_force(a, b, 300.0, 1e-6);
  EXPECT_LT(rel(f1.evanescent, interaction_near(1e-7, 1e-7, m, m, 300.0, 1e-6).value), 0.05);
  const auto f50 = interaction_force(a, b, 300.0, 50e-6);
  EXPECT_LT(rel(f50.total(), interaction_far(1e-7, 1e-7, m, m, 300.0, 50e-6).value), 0.10);
}
