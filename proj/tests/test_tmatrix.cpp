#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "neqcasimir/tmatrix.hpp"

using namespace neqc;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Case {
  int n;
  double kt;
  Complex eps;
};

const Case kCases[] = {
    {0, 0.5, {2.0, 0.0}}, {1, 0.3, {3.0, 1.0}},   {-1, 0.3, {3.0, 1.0}},
    {1, 1.7, {3.0, 1.0}}, {0, 2.5, {-5.0, 2.0}},  {1, -0.4, {4.0, 0.1}},
    {-1, 3.0, {-20.0, 40.0}},
};

}  // namespace

TEST(ThinT, VacuumScattersNothing) {
  for (int n : {-1, 0, 1})
    for (double kt : {0.0, 0.4, 2.0}) EXPECT_TRUE(thin_t(n, kt, 1.0, 1.0, 0.1).is_zero());
}

TEST(ThinT, NoPolarizationMixingAtNormalIncidence) {
  const auto t = thin_t(1, 0.0, {4.0, 2.0}, 1.0, 0.05);
  EXPECT_EQ(t(kM, kN), Complex(0.0, 0.0));
  EXPECT_EQ(t(kN, kM), Complex(0.0, 0.0));
}

TEST(ThinT, OrderReflectionPattern) {
  const Complex eps(3.0, 0.7);
  const auto p = thin_t(1, 0.6, eps, 1.0, 0.02), m = thin_t(-1, 0.6, eps, 1.0, 0.02);
  EXPECT_EQ(p(kM, kN), p(kN, kM));
  EXPECT_EQ(p(kM, kN), -m(kM, kN));
  EXPECT_EQ(p(kN, kM), -m(kN, kM));
  EXPECT_EQ(p(kM, kM), m(kM, kM));
  EXPECT_EQ(p(kN, kN), m(kN, kN));
}

TEST(ThinT, AxialReflectionPattern) {
  const Complex eps(3.0, 0.7);
  for (int n : {-1, 0, 1}) {
    const auto a = thin_t(n, 0.6, eps, 1.0, 0.02), b = thin_t(n, -0.6, eps, 1.0, 0.02);
    EXPECT_EQ(a(kM, kM), b(kM, kM));
    EXPECT_EQ(a(kN, kN), b(kN, kN));
    EXPECT_EQ(a(kM, kN), -b(kM, kN));
  }
}

TEST(ThinT, ExactQuadraticSizeScaling) {
  const Complex eps(6.0, 1.5);
  for (int n : {-1, 0, 1}) {
    const auto a = thin_t(n, 1.3, eps, 1.0, 1e-4), b = thin_t(n, 1.3, eps, 1.0, 1e-3),
               c = thin_t(n, 1.3, eps, 1.0, 1e-2);
    for (int k = 0; k < 4; ++k) {
      if (a.entries[k] == Complex(0.0, 0.0)) continue;
      EXPECT_NEAR(rel(b.entries[k] / 1e-6, a.entries[k] / 1e-8), 0.0, 1e-6);
      EXPECT_NEAR(rel(c.entries[k] / 1e-4, a.entries[k] / 1e-8), 0.0, 1e-6);
    }
  }
}

TEST(ThinT, RejectsHigherOrders) {
  EXPECT_THROW(thin_t(2, 0.1, 2.0, 1.0, 0.01), UnsupportedOrderError);
  EXPECT_THROW(thin_t(-3, 0.1, 2.0, 1.0, 0.01), UnsupportedOrderError);
}

TEST(FullT, VacuumScattersNothing) {
  for (int n : {-3, 0, 2})
    for (double kt : {0.2, 1.5}) EXPECT_TRUE(full_t(n, kt, 1.0, 1.0, 0.7).is_zero());
}

TEST(FullT, AgreesWithThinAtSmallRadius) {
  // Spot value: n = 0, kt = 0.5, eps = 2.
  const auto f = full_t(0, 0.5, 2.0, 1.0, 0.01), t = thin_t(0, 0.5, 2.0, 1.0, 0.01);
  EXPECT_LT(rel(f(kN, kN), t(kN, kN)), 1e-3);
  for (const auto& c : kCases) {
    const auto a = full_t(c.n, c.kt, c.eps, 1.0, 1e-3), b = thin_t(c.n, c.kt, c.eps, 1.0, 1e-3);
    double scale = 0.0;
    for (const auto& e : b.entries) scale = std::max(scale, std::abs(e));
    for (int k = 0; k < 4; ++k) {
      // Entries absent from the expansion start at higher order in x.
      if (b.entries[k] == Complex(0.0, 0.0))
        EXPECT_LT(std::abs(a.entries[k]), 1e-5 * scale);
      else
        EXPECT_LT(rel(a.entries[k], b.entries[k]), 1e-3) << c.n << " " << c.kt << " entry " << k;
    }
  }
}

TEST(FullT, DifferenceFromThinIsFourthOrder) {
  for (const auto& c : kCases) {
    const auto d = [&](double x) {
      const auto a = full_t(c.n, c.kt, c.eps, 1.0, x), b = thin_t(c.n, c.kt, c.eps, 1.0, x);
      double m = 0.0;
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(a.entries[k] - b.entries[k]));
      return m;
    };
    // Allow for the logarithmic corrections of cylinder functions.
    const double slope = std::log10(d(1e-2) / d(1e-3));
    EXPECT_GT(slope, 3.5) << c.n << " " << c.kt;
    EXPECT_LT(slope, 4.5) << c.n << " " << c.kt;
  }
}

TEST(FullT, PolarizationSymmetry) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(u(rng) * 13) - 6;
    const double kt = 4.0 * u(rng) - 2.0;
    if (std::abs(std::abs(kt) - 1.0) < 1e-3) continue;
    const Complex eps(-30.0 + 40.0 * u(rng), 20.0 * u(rng));
    const double x = std::pow(10.0, -3.0 + 3.0 * u(rng));
    const auto t = full_t(n, kt, eps, 1.0, x);
    const double scale = std::max({std::abs(t(kM, kM)), std::abs(t(kN, kN)), std::abs(t(kM, kN)), 1e-300});
    EXPECT_LT(std::abs(t(kM, kN) - t(kN, kM)) / scale, 1e-10) << n << " " << kt << " " << eps << " " << x;
  }
}

TEST(FullT, ParityInOrderAndAxialWavenumber) {
  const Complex eps(5.0, 2.0);
  for (int n : {1, 2, 4})
    for (double kt : {0.35, 1.8}) {
      const auto a = full_t(n, kt, eps, 1.0, 0.4), b = full_t(-n, kt, eps, 1.0, 0.4), c = full_t(n, -kt, eps, 1.0, 0.4);
      EXPECT_LT(rel(b(kM, kM), a(kM, kM)), 1e-10);
      EXPECT_LT(rel(b(kN, kN), a(kN, kN)), 1e-10);
      EXPECT_LT(rel(b(kM, kN), -a(kM, kN)), 1e-10);
      EXPECT_LT(rel(c(kN, kN), a(kN, kN)), 1e-10);
      EXPECT_LT(rel(c(kM, kN), -a(kM, kN)), 1e-10);
    }
}

TEST(FullT, UnitarityForLosslessMedia) {
  for (int n = -5; n <= 5; ++n)
    for (double kt : {0.0, 0.3, 0.8})
      for (double eps : {1.5, 4.0, 11.0})
        for (double x : {0.05, 0.7, 2.5}) {
          const auto t = full_t(n, kt, eps, 1.0, x);
          // S = 1 + 2T; |eigenvalues| = 1 is equivalent to S S^H = 1 for this 2x2 normal matrix.
          Complex s[2][2];
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s[a][b] = (a == b ? 1.0 : 0.0) + 2.0 * t(a, b);
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
              Complex acc = 0.0;
              for (int k = 0; k < 2; ++k) acc += s[a][k] * std::conj(s[b][k]);
              EXPECT_NEAR(std::abs(acc - (a == b ? 1.0 : 0.0)), 0.0, 1e-8);
            }
          // Eigenvalue magnitudes directly.
          const Complex half_sum = 0.5 * (s[0][0] + s[1][1]), half_diff = 0.5 * (s[0][0] - s[1][1]);
          const Complex root = std::sqrt(half_diff * half_diff + s[0][1] * s[1][0]);
          EXPECT_NEAR(std::abs(half_sum + root), 1.0, 1e-8);
          EXPECT_NEAR(std::abs(half_sum - root), 1.0, 1e-8);
        }
}

TEST(FullT, SmallRadiusHighOrderStaysFinite) {
  for (int n : {4, 8, 16})
    for (double kt : {0.4, 1.4}) {
      const auto t = full_t(n, kt, {3.0, 1.0}, 1.0, 1e-3);
      for (const auto& e : t.entries) EXPECT_TRUE(std::isfinite(e.real()) && std::isfinite(e.imag()));
      EXPECT_LT(t.condition, kConditionWarning);
    }
}

TEST(FullT, DomainErrors) {
  EXPECT_THROW(full_t(0, 0.3, 2.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(full_t(0, 1.0, 2.0, 1.0, 0.1), DomainError);
}

TEST(Provider, ThinZeroBeyondFirstOrder) {
  TMatrixProvider p{ProviderKind::Thin, silicon_carbide(), 1e-7};
  EXPECT_EQ(p.order_limit(), 1);
  EXPECT_TRUE(p.block(2, 0.3, {2.0, 1.0}, 0.01).is_zero());
  EXPECT_FALSE(p.block(1, 0.3, {2.0, 1.0}, 0.01).is_zero());
  TMatrixProvider v{ProviderKind::Full, DielectricModel::vacuum(), 1e-7};
  EXPECT_TRUE(v.block(0, 0.3, 1.0, 0.01).is_zero());
}

TEST(Provider, BlockAtUsesPhysicalUnits) {
  TMatrixProvider p{ProviderKind::Full, tungsten_2400K(), 2e-8};
  const double omega = 2e15, k = omega / kSpeedOfLight;
  const auto a = p.block_at(1, 0.5 * k, omega);
  const auto b = full_t(1, 0.5, tungsten_2400K().epsilon(omega), 1.0, k * 2e-8);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(a.entries[i], b.entries[i]);
}
