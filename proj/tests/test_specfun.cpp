#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "neqcasimir/specfun.hpp"

namespace sf = neqc::specfun;
using neqc::kPi;

namespace {

// Ascending power series, summed until terms drop below machine precision.
double j_series(int n, double x) {
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= 0.5 * x / k;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -0.25 * x * x / (k * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Y_0 from its ascending series (independent of the Neumann route).
double y0_series(double x) {
  const double t = 0.25 * x * x;
  double a = 1.0, harmonic = 0.0, s = 0.0;
  for (int k = 1; k < 200; ++k) {
    a *= t / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    s += ((k & 1) ? 1.0 : -1.0) * harmonic * a;
    if (a < 1e-20) break;
  }
  return (2.0 / kPi) * (std::log(0.5 * x) + neqc::kEulerGamma) * j_series(0, x) + (2.0 / kPi) * s;
}

// K_0(x) = int_0^inf exp(-x cosh t) dt by composite Simpson.
double k0_integral(double x) {
  const int panels = 20000;
  const double upper = 12.0, h = upper / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::exp(-x * std::cosh(i * h));
  }
  return s * h / 3.0;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return g;
}

}  // namespace

TEST(BesselJ, ValuesAtOrigin) {
  EXPECT_EQ(sf::bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(sf::bessel_j(1, 0.0), 0.0);
  EXPECT_EQ(sf::bessel_j(-4, 0.0), 0.0);
}

TEST(BesselJ, MatchesPowerSeries) {
  EXPECT_NEAR(sf::bessel_j(1, 1.0), j_series(1, 1.0), 1e-15);
  EXPECT_NEAR(sf::bessel_j(1, 1.0), 0.44005058574493351596, 1e-15);
  for (int n = 0; n <= 8; ++n)
    for (double x : {0.01, 0.3, 1.0, 2.5, 6.0})
      EXPECT_NEAR(sf::bessel_j(n, x), j_series(n, x), 1e-12 * std::max(1e-3, std::abs(j_series(n, x))))
          << n << " " << x;
}

TEST(BesselJ, ReflectionIsExact) {
  for (int n = 0; n <= 16; ++n)
    for (double x : {1e-3, 0.7, 13.0, 44.0, 900.0}) {
      const double s = (n & 1) ? -1.0 : 1.0;
      EXPECT_EQ(sf::bessel_j(-n, x), s * sf::bessel_j(n, x));
      EXPECT_EQ(sf::bessel_y(-n, x), s * sf::bessel_y(n, x));
    }
}

TEST(BesselY, SeriesOracleAtOne) {
  EXPECT_NEAR(sf::bessel_y(0, 1.0), y0_series(1.0), 1e-14);
  EXPECT_NEAR(sf::bessel_y(0, 1.0), 0.088256964215676957983, 1e-14);
}

TEST(BesselY, LogarithmicDivergenceAtZero) {
  double prev = sf::bessel_y(0, 1e-2);
  EXPECT_LT(prev, 0.0);
  for (double x : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const double y = sf::bessel_y(0, x);
    EXPECT_LT(y, prev);
    // Y_0 ~ (2/pi) ln x near the origin.
    EXPECT_NEAR(y / ((2.0 / kPi) * std::log(x)), 1.0, 0.1);
    prev = y;
  }
}

TEST(BesselJY, FrozenReferenceValues) {
  struct Row {
    int n;
    double x, j, y;
  };
  // mpmath at 30 digits.
  const Row rows[] = {
      {0, 1e-3, 0.999999750000015625, -4.4714166113759232557},
      {3, 0.5, 0.0025637299945872440754, -42.059494304723882688},
      {5, 2.0, 0.0070396297558716854842, -9.935989128481974981},
      {16, 1e-3, 7.292903537141351347e-67, -2.7279077289555939095e+64},
      {16, 7.5, 0.000031322350398192389414, -719.74403725755116182},
      {2, 19.9, -0.16784082927629889004, -0.063026720411696290457},
      {7, 20.5, -0.16002944669060421525, -0.086084028159560584611},
      {0, 350.0, -0.037479568421573194331, -0.020351750053983197204},
      {16, 300.0, -0.017148072432644535183, -0.042790548164020517617},
      {16, 1000.0, 0.023983434398793024038, 0.0078419430025920593197},
      {3, 64.0, -0.043504613498066576638, 0.089806293907780175568},
      {10, 50.0, -0.11384784914946938567, 0.005723897182053513546},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(sf::bessel_j(r.n, r.x) / r.j, 1.0, 1e-10) << r.n << " " << r.x;
    EXPECT_NEAR(sf::bessel_y(r.n, r.x) / r.y, 1.0, 1e-10) << r.n << " " << r.x;
  }
}

TEST(BesselJY, WronskianOverTestedDomain) {
  for (double x : log_grid(1e-3, 1e3, 61))
    for (int n = -16; n <= 16; ++n) {
      const double w = sf::bessel_j(n + 1, x) * sf::bessel_y(n, x) - sf::bessel_j(n, x) * sf::bessel_y(n + 1, x);
      EXPECT_NEAR(w * kPi * x / 2.0, 1.0, 1e-10) << "n=" << n << " x=" << x;
    }
}

TEST(BesselJY, TableAgreesWithScalarCalls) {
  for (double x : {0.05, 3.0, 19.0, 21.0, 120.0}) {
    auto t = sf::bessel_jy_table(12, x);
    for (int n = 0; n <= 12; ++n) {
      EXPECT_NEAR(t.j[n], sf::bessel_j(n, x), 1e-12 * (1.0 + std::abs(t.j[n])));
      EXPECT_NEAR(t.y[n] / sf::bessel_y(n, x), 1.0, 1e-11);
    }
  }
}

TEST(Hankel1, ComposesJAndY) {
  const auto h = sf::hankel1(0, 1.0);
  EXPECT_NEAR(h.real(), 0.76519768655796655145, 1e-14);
  EXPECT_NEAR(h.imag(), 0.088256964215676957983, 1e-14);
  for (int n = 0; n <= 6; ++n)
    for (double x : {0.2, 4.0, 33.0}) {
      const auto hn = sf::hankel1(n, x);
      const double j = sf::bessel_j(n, x), y = sf::bessel_y(n, x);
      EXPECT_NEAR(std::norm(hn), j * j + y * y, 1e-13 * std::norm(hn));
      const double s = (n & 1) ? -1.0 : 1.0;
      EXPECT_EQ(sf::hankel1(-n, x), s * hn);
    }
}

TEST(BesselIK, IntegralOracleAndOrigin) {
  EXPECT_NEAR(sf::bessel_k(0, 1.0), 0.42102443824070833334, 1e-14);
  EXPECT_NEAR(sf::bessel_k(0, 1.0), k0_integral(1.0), 1e-11);
  EXPECT_NEAR(sf::bessel_k(0, 3.0), k0_integral(3.0), 1e-11);
  EXPECT_EQ(sf::bessel_i(0, 0.0), 1.0);
  EXPECT_EQ(sf::bessel_i(2, 0.0), 0.0);
}

TEST(BesselIK, FrozenScaledValues) {
  struct Row {
    int n;
    double x, i, k;
  };
  const Row rows[] = {
      {0, 1e-3, 0.99900074958351555937, 7.0307160023782514978},
      {1, 0.5, 0.15642080318487169714, 2.7310097082117857054},
      {0, 1.0, 0.4657596075936404365, 1.1444630798068950147},
      {1, 1.99, 0.21541234648327333566, 1.036739606760863259},
      {1, 2.01, 0.21512444911405293381, 1.0302428743356033627},
      {4, 3.0, 0.016215906160911556041, 6.143185771177620527},
      {16, 7.5, 9.080565565695395876e-8, 311536.51291121914826},
      {0, 25.0, 0.080196773547436708422, 0.24943660457559668687},
      {2, 600.0, 0.016235891436744849466, 0.051326346712654205348},
      {16, 1000.0, 0.011100640818821194724, 0.045036685973833986718},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(sf::bessel_i_scaled(r.n, r.x) / r.i, 1.0, 1e-10) << r.n << " " << r.x;
    EXPECT_NEAR(sf::bessel_k_scaled(r.n, r.x) / r.k, 1.0, 1e-10) << r.n << " " << r.x;
  }
}

TEST(BesselIK, WronskianOverTestedDomain) {
  // I_n K_{n+1} + I_{n+1} K_n = 1/x; the exponential scalings cancel.
  for (double x : log_grid(1e-3, 1e3, 61))
    for (int n = -16; n <= 16; ++n) {
      const double w = sf::bessel_i_scaled(n, x) * sf::bessel_k_scaled(n + 1, x) +
                       sf::bessel_i_scaled(n + 1, x) * sf::bessel_k_scaled(n, x);
      EXPECT_NEAR(w * x, 1.0, 1e-10) << "n=" << n << " x=" << x;
    }
}

TEST(BesselIK, MonotoneAndPositive) {
  double prev_i = 0.0, prev_k = std::numeric_limits<double>::infinity();
  for (double x : log_grid(1e-3, 500.0, 80)) {
    for (int n : {0, 1, 5}) {
      EXPECT_GT(sf::bessel_i(n, x), 0.0);
      EXPECT_GT(sf::bessel_k(n, x), 0.0);
    }
    const double i = sf::bessel_i(1, x), k = sf::bessel_k(1, x);
    EXPECT_GT(i, prev_i);
    EXPECT_LT(k, prev_k);
    prev_i = i;
    prev_k = k;
  }
}

TEST(Derivatives, RecurrenceIdentities) {
  for (double x : {0.3, 1.0, 7.0, 55.0}) {
    EXPECT_NEAR(sf::bessel_j_prime(0, x), -sf::bessel_j(1, x), 1e-15);
    EXPECT_NEAR(sf::bessel_y_prime(0, x), -sf::bessel_y(1, x), 1e-13 * std::abs(sf::bessel_y(1, x)));
    EXPECT_NEAR(sf::bessel_k_prime(0, x), -sf::bessel_k(1, x), 1e-14 * sf::bessel_k(1, x));
  }
  const auto hp = sf::hankel1_prime(0, 1.0);
  const auto h1 = sf::hankel1(1, 1.0);
  EXPECT_NEAR(std::abs(hp + h1), 0.0, 1e-14);
}

TEST(Derivatives, FiniteDifferenceCrossCheck) {
  const double h = 1e-5;
  for (double x : {0.5, 2.0, 10.0})
    for (int n = -3; n <= 3; ++n) {
      auto fd = [&](auto f) { return (f(n, x + h) - f(n, x - h)) / (2 * h); };
      const double dj = fd([](int m, double t) { return sf::bessel_j(m, t); });
      const double dy = fd([](int m, double t) { return sf::bessel_y(m, t); });
      const double di = fd([](int m, double t) { return sf::bessel_i(m, t); });
      const double dk = fd([](int m, double t) { return sf::bessel_k(m, t); });
      EXPECT_NEAR(sf::bessel_j_prime(n, x), dj, 1e-6 * std::max(1.0, std::abs(dj)));
      EXPECT_NEAR(sf::bessel_y_prime(n, x), dy, 1e-6 * std::max(1.0, std::abs(dy)));
      EXPECT_NEAR(sf::bessel_i_prime(n, x), di, 1e-6 * std::abs(di) + 1e-12);
      EXPECT_NEAR(sf::bessel_k_prime(n, x), dk, 1e-6 * std::abs(dk));
      const auto dh = sf::hankel1_prime(n, x);
      EXPECT_NEAR(dh.real(), dj, 1e-6 * std::max(1.0, std::abs(dj)));
      EXPECT_NEAR(dh.imag(), dy, 1e-6 * std::max(1.0, std::abs(dy)));
    }
}

TEST(SpecialFunctions, FiniteOnTestedDomain) {
  for (double x : log_grid(1e-3, 1e3, 41))
    for (int n = -16; n <= 16; ++n) {
      EXPECT_TRUE(std::isfinite(sf::bessel_j(n, x)));
      EXPECT_TRUE(std::isfinite(sf::bessel_y(n, x)));
      EXPECT_TRUE(std::isfinite(sf::bessel_i_scaled(n, x)));
      EXPECT_TRUE(std::isfinite(sf::bessel_k_scaled(n, x)));
    }
}

TEST(SpecialFunctions, DomainErrors) {
  EXPECT_THROW(sf::bessel_j(0, std::nan("")), neqc::DomainError);
  EXPECT_THROW(sf::bessel_j(0, INFINITY), neqc::DomainError);
  EXPECT_THROW(sf::bessel_y(0, 0.0), neqc::DomainError);
  EXPECT_THROW(sf::bessel_y(1, -1.0), neqc::DomainError);
  EXPECT_THROW(sf::bessel_k(0, 0.0), neqc::DomainError);
  EXPECT_THROW(sf::bessel_i(0, -2.0), neqc::DomainError);
  EXPECT_THROW(sf::hankel1(2, 0.0), neqc::DomainError);
  EXPECT_THROW(sf::bessel_j(sf::kMaxOrder + 1, 1.0), neqc::DomainError);
}

TEST(RegularPair, ComplexLogDerivative) {
  struct Row {
    int n;
    std::complex<double> z, ratio;
  };
  const Row rows[] = {
      {0, {0.4, 0.1}, {-0.203291496693804504, -0.0530579471213933834}},
      {1, {3.0, 2.0}, {-0.130345980369272502, -0.898968160202114753}},
      {2, {15.0, 5.0}, {-0.0257501540262927561, -0.98370339789923059}},
      {-3, {1.5, -0.7}, {1.45326697713960937, 0.861102136573380439}},
      {1, {0.05, 8.0}, {-0.00029933703110008151, -0.944250918982346023}},
  };
  for (const auto& r : rows) {
    auto [j, jp] = sf::regular_pair_unnormalised(r.n, r.z);
    EXPECT_NEAR(std::abs(jp / j - r.ratio) / std::abs(r.ratio), 0.0, 1e-11) << r.n;
  }
  // Real axis agrees with the real-argument routines.
  auto [j, jp] = sf::regular_pair_unnormalised(2, {3.7, 0.0});
  EXPECT_NEAR((jp / j).real(), sf::bessel_j_prime(2, 3.7) / sf::bessel_j(2, 3.7), 1e-12);
}
