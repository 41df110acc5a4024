#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "neqcasimir/kernels.hpp"
#include "neqcasimir/materials.hpp"

using namespace neqc;

namespace {

std::string source_path(const std::string& rel) { return std::string(NEQC_SOURCE_DIR) + "/" + rel; }

const DielectricModel& sic() {
  static const DielectricModel m = load_material(source_path("materials/sic.json"));
  return m;
}

// One frequency, two cylinders, fixed k d.
struct Pair {
  TMatrixProvider one, two;
  double omega, kd;
  bool quadratic = true;

  double x1() const { return omega * one.radius / kSpeedOfLight; }
  double x2() const { return omega * two.radius / kSpeedOfLight; }
  TMatrixBlock t1(int n, double kt) const { return one.block(n, kt, one.material.epsilon(omega), x1()); }
  TMatrixBlock t2(int n, double kt) const { return two.block(n, kt, two.material.epsilon(omega), x2()); }

  double f(int n, int m, double kt) const {
    HankelTable h(8, kd * std::sqrt(1.0 - kt * kt), Branch::Propagating);
    return f_kernel(t1(m, kt), t1(m + 1, kt), a_factor(t2(n, kt), Branch::Propagating, quadratic),
                    h.product(n - m), quadratic);
  }
  double f_tilde(int n, int m, double kt, double kd_override = -1.0) const {
    const double k = kd_override > 0.0 ? kd_override : kd;
    HankelTable h(8, k * std::sqrt(kt * kt - 1.0), Branch::Evanescent);
    return f_tilde_kernel(t1(m, kt), t1(m + 1, kt), t2(n, kt), h.product(n - m));
  }
  double s(int n, int m, double kt, double z) const {
    HankelTable h(8, z, Branch::Propagating);
    const int p = n - m;
    const Complex hj = h.h(p) * h.j(p - 1), jh = h.j(p) * std::conj(h.h(p - 1));
    return s_kernel(a_factor(t1(n, kt), Branch::Propagating, quadratic), t2(m, kt), t2(m + 1, kt), hj, jh);
  }
};

Pair thin_sic(double r1 = 1e-7, double r2 = 1e-7) {
  const double w = 0.11 * kElectronVolt / kHbar;
  return Pair{{ProviderKind::Thin, sic(), r1}, {ProviderKind::Thin, sic(), r2}, w, 2.0};
}

}  // namespace

TEST(Bose, ZeroTemperature) {
  EXPECT_EQ(bose(0.0, 1e14), 0.0);
  EXPECT_EQ(occupation(0.0, 1e14), 0.0);
}

TEST(Bose, LnTwoGivesOne) {
  const double t = 300.0, w = std::log(2.0) * kBoltzmann * t / kHbar;
  EXPECT_NEAR(bose(t, w), 1.0, 1e-14);
}

TEST(Bose, ClassicalLimit) {
  const double t = 300.0, u = 0.01, w = u * kBoltzmann * t / kHbar;
  const double n = bose(t, w);
  EXPECT_NEAR(n * u, 1.0, 0.01);
  // Laurent series 1/u - 1/2 + u/12 - u^3/720
  EXPECT_NEAR(n, 1.0 / u - 0.5 + u / 12.0 - u * u * u / 720.0, 1e-10);
}

TEST(Bose, Occupation) {
  const double t = 1000.0, w = 2e14;
  const double expect = w * w * kHbar * 16.0 * kPi * kPi / (kSpeedOfLight * kSpeedOfLight) /
                        (std::exp(kHbar * w / (kBoltzmann * t)) - 1.0);
  EXPECT_NEAR(occupation(t, w) / expect, 1.0, 1e-13);
  EXPECT_THROW(bose(300.0, 0.0), DomainError);
  EXPECT_THROW(bose(-1.0, 1e14), DomainError);
}

TEST(AFactor, VacuumIsZero) {
  TMatrixProvider vac{ProviderKind::Full, DielectricModel::vacuum(), 1e-7};
  for (auto b : {Branch::Propagating, Branch::Evanescent})
    for (const Complex v : a_factor(vac.block(1, 0.4, 1.0, 0.3), b)) EXPECT_EQ(v, Complex(0.0, 0.0));
}

TEST(AFactor, EvanescentOddOrderFlipsSign) {
  TMatrixBlock t0;
  t0.entries = {Complex(1.0, 2.0), Complex(-0.5, 0.1), Complex(0.3, -0.2), Complex(2.0, 0.0)};
  TMatrixBlock t1 = t0;
  t1.n = 1;
  const auto a0 = a_factor(t0, Branch::Evanescent), a1 = a_factor(t1, Branch::Evanescent);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(a0[k], Complex(t0.entries[k].real(), 0.0));
    EXPECT_EQ(a1[k], -a0[k]);
  }
}

TEST(AFactor, QuadraticPartIsHermitian) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex eps(1.0 + 10.0 * std::abs(u(rng)), 5.0 * std::abs(u(rng)));
    const int n = trial % 3 - 1;
    const double kt = 0.99 * u(rng), x = 0.2 * std::abs(u(rng)) + 1e-3;
    const auto t = thin_t(n, kt, eps, 1.0, x);
    const auto full = a_factor(t, Branch::Propagating), lin = a_factor(t, Branch::Propagating, false);
    auto quad = [&](int p, int pp) { return full[2 * p + pp] - lin[2 * p + pp]; };
    const double scale = std::norm(t(0, 0)) + std::norm(t(1, 1)) + std::norm(t(0, 1)) + 1e-300;
    for (int p = 0; p < 2; ++p)
      for (int pp = 0; pp < 2; ++pp) EXPECT_LE(std::abs(quad(p, pp) - std::conj(quad(pp, p))), 1e-14 * scale);
  }
}

TEST(Kernels, VacuumPartnerGivesZero) {
  auto p = thin_sic();
  auto empty = p;
  empty.one.material = DielectricModel::vacuum();
  EXPECT_EQ(empty.f(0, 0, 0.3), 0.0);
  EXPECT_EQ(empty.f_tilde(1, -1, 1.3), 0.0);
  EXPECT_EQ(empty.s(0, 0, 0.3, 5.0), 0.0);
  empty = p;
  empty.two.material = DielectricModel::vacuum();
  EXPECT_EQ(empty.f(0, 0, 0.3), 0.0);
  EXPECT_EQ(empty.f_tilde(1, -1, 1.3), 0.0);
  EXPECT_EQ(empty.s(0, 0, 0.3, 5.0), 0.0);
}

// Frozen values from a 30-digit evaluation (mpmath, Hankel functions at
// complex argument for the evanescent branch) with the small-radius blocks
// typed independently.  omega = 0.11 eV, R = 0.1 um, omega d / c = 2.
TEST(Kernels, SpotValuesAgainstHighPrecision) {
  const auto p = thin_sic();
  const Complex eps = sic().epsilon(p.omega);
  EXPECT_NEAR(eps.real(), -6.1652391007255103, 1e-12);
  EXPECT_NEAR(eps.imag(), 0.33338287861976202, 1e-12);
  struct Ref {
    int n, m;
    double f, ft;
  };
  const Ref refs[] = {{0, 0, -7.6558411547982171e-7, 5.5481600079835409e-8},
                      {1, -1, -6.2866374748862017e-8, 4.4906575839872612e-8},
                      {-1, 0, -6.2866374748862017e-8, -4.4906575839872612e-8}};
  for (const auto& r : refs) {
    EXPECT_NEAR(p.f(r.n, r.m, 0.3) / r.f, 1.0, 1e-11) << r.n << " " << r.m;
    EXPECT_NEAR(p.f_tilde(r.n, r.m, 1.3) / r.ft, 1.0, 1e-11) << r.n << " " << r.m;
  }
}

TEST(Kernels, EvanescentDecay) {
  const auto p = thin_sic();
  const double kt = 1.3, qt = std::sqrt(kt * kt - 1.0);
  for (auto [n, m] : {std::pair{0, 0}, std::pair{1, -1}, std::pair{1, 0}}) {
    const double kd1 = 40.0, kd2 = 80.0;
    const double y1 = kd1 * qt, y2 = kd2 * qt;
    const double slope = std::log(std::abs(p.f_tilde(n, m, kt, kd2) / p.f_tilde(n, m, kt, kd1)));
    const double bound = -2.0 * (y2 - y1) - std::log(y2 / y1);
    EXPECT_LE(slope, bound + 0.05 * std::abs(bound)) << n << " " << m;
  }
}

// z s(z) = c0 + a cos(2 z + phi) + O(1/z): period pi in q d.
TEST(Kernels, SourceKernelOscillatesWithPeriodPiOverQ) {
  const auto p = thin_sic();
  const double kt = 0.3;
  auto g = [&](double z) { return z * p.s(0, 0, kt, z); };
  for (double z : {200.0, 311.0, 457.0}) {
    const double amp = std::abs(g(z) - g(z + kPi / 2.0));
    ASSERT_GT(amp, 0.0);
    EXPECT_LT(std::abs(g(z + kPi) - g(z)), 0.05 * amp);
  }
  // crossings of the detrended signal
  const double z0 = 300.0, z1 = z0 + 20.0 * kPi;
  double mean = 0.0;
  const int steps = 20000;
  for (int i = 0; i < steps; ++i) mean += g(z0 + (z1 - z0) * (i + 0.5) / steps) / steps;
  std::vector<double> zeros;
  double prev = g(z0) - mean;
  for (int i = 1; i <= steps; ++i) {
    const double z = z0 + (z1 - z0) * i / steps, v = g(z) - mean;
    if ((v > 0.0) != (prev > 0.0)) zeros.push_back(z);
    prev = v;
  }
  ASSERT_GE(zeros.size(), 30u);
  const double spacing = (zeros.back() - zeros.front()) / (zeros.size() - 1);
  EXPECT_NEAR(2.0 * spacing, kPi, 0.01 * kPi);
}

// With m + 1 playing the role of m, the index reflection that leaves the
// geometry invariant is (n, m, kz) -> (-n, -m-1, -kz); the (-1)^(n+m)
// factor then absorbs the sign of f~.
TEST(Kernels, IndexReflectionSymmetry) {
  for (auto kind : {ProviderKind::Thin, ProviderKind::Full}) {
    auto p = thin_sic();
    p.one.kind = p.two.kind = kind;
    p.two.radius = 0.6e-7;
    const int top = kind == ProviderKind::Thin ? 1 : 3;
    for (int n = -top; n <= top; ++n)
      for (int m = -top - 1; m <= top; ++m) {
        const double a = p.f(n, m, 0.37), b = p.f(-n, -m - 1, -0.37);
        EXPECT_NEAR(a, b, 1e-12 * std::abs(a) + 1e-300) << n << " " << m;
        const double sa = ((n + m) % 2 == 0 ? 1.0 : -1.0) * p.f_tilde(n, m, 1.4);
        const double sb = ((n - m - 1) % 2 == 0 ? 1.0 : -1.0) * p.f_tilde(-n, -m - 1, -1.4);
        EXPECT_NEAR(sa, sb, 1e-12 * std::abs(sa) + 1e-300) << n << " " << m;
      }
  }
}

// (n, m, kz) -> (-n, -m, -kz) pairs T1 orders (m, m+1) with (-m, -m+1),
// which is a different pair of blocks; it is not a symmetry term by term.
TEST(Kernels, PlainIndexNegationIsNotASymmetry) {
  const auto p = thin_sic();
  EXPECT_GT(std::abs(p.f(1, 0, 0.3) - p.f(-1, 0, -0.3)), 0.5 * std::abs(p.f(1, 0, 0.3)));
  EXPECT_NEAR(p.f(1, 0, 0.3), p.f(-1, -1, -0.3), 1e-12 * std::abs(p.f(1, 0, 0.3)));
}

TEST(Kernels, ThinLinearScalesAsRadiiSquared) {
  auto p = thin_sic(1e-8, 1e-8);
  p.quadratic = false;
  const double f0 = p.f(1, 0, 0.45), ft0 = p.f_tilde(0, 0, 1.2), s0 = p.s(0, -1, 0.45, 3.0);
  auto q = p;
  q.one.radius *= 2.0;
  q.two.radius *= 3.0;
  EXPECT_NEAR(q.f(1, 0, 0.45) / f0, 36.0, 1e-10);
  EXPECT_NEAR(q.f_tilde(0, 0, 1.2) / ft0, 36.0, 1e-10);
  EXPECT_NEAR(q.s(0, -1, 0.45, 3.0) / s0, 36.0, 1e-10);
}
