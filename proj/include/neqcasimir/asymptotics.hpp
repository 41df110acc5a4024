#pragma once

// Thin-cylinder limits of the interaction force and the auxiliary functions
// they are built from.  Independent of the mode sums in engine.hpp: only the
// dielectric functions and a one-dimensional frequency integral enter.

#include <cmath>
#include <string>
#include <vector>

#include "neqcasimir/constants.hpp"
#include "neqcasimir/errors.hpp"
#include "neqcasimir/materials.hpp"
#include "neqcasimir/quadrature.hpp"

namespace neqc::asymptotics {

enum class Regime { NearField, FarField, NearFieldLowT, FarFieldLowT };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::NearField: return "near-field";
    case Regime::FarField: return "far-field";
    case Regime::NearFieldLowT: return "near-field low-T";
    case Regime::FarFieldLowT: return "far-field low-T";
  }
  return "?";
}

/// Closed-form value with the regime assumptions that failed, if any.
struct Estimate {
  double value = 0.0;  // N/m
  Regime regime = Regime::NearField;
  std::vector<std::string> warnings;
};

namespace detail {
inline void check_pole(Complex e, const char* who) {
  if (std::abs(e + 1.0) < 1e-300) throw DomainError(std::string(who) + ": epsilon = -1 is a pole");
}
inline double im_inv(Complex e) { return (1.0 / (e + 1.0)).imag(); }
}  // namespace detail

inline double g6(Complex e1, Complex e2) {
  detail::check_pole(e1, "g6");
  detail::check_pole(e2, "g6");
  const double r1 = e1.real(), a1 = std::norm(e1), b2 = std::norm(e2 + 1.0);
  return 45.0 / 2048.0 * detail::im_inv(e2) / std::norm(e1 + 1.0) *
         ((a1 - 1.0) * (4.0 * (33.0 + 5.0 * r1) + (7.0 + 3.0 * r1) * b2) + (r1 * r1 - 1.0) * (40.0 + 6.0 * b2));
}

inline double g4(Complex e1, Complex e2) {
  detail::check_pole(e1, "g4");
  detail::check_pole(e2, "g4");
  const double r1 = e1.real(), i1 = e1.imag(), b2 = std::norm(e2 + 1.0);
  return 3.0 / 256.0 * detail::im_inv(e2) / std::norm(e1 + 1.0) *
         (i1 * i1 * (b2 * (7.0 - r1) + 12.0 * r1 + 76.0) + (r1 * r1 - 1.0) * (b2 * (5.0 - r1) + 12.0 * r1 + 100.0));
}

inline double g1(Complex e1, Complex e2) {
  detail::check_pole(e1, "g1");
  detail::check_pole(e2, "g1");
  const double b1 = std::norm(e1 + 1.0), b2 = std::norm(e2 + 1.0);
  return 2.0 / (15.0 * kPi) * detail::im_inv(e1) * detail::im_inv(e2) * (b1 * b2 + b1 + b2 + 36.0);
}

namespace detail {
inline void check_static(double e01, double e02, const char* who) {
  if (!(e01 > 0.0 && e02 > 0.0)) throw DomainError(std::string(who) + ": static permittivities must be positive");
}
}  // namespace detail

inline double f6(double e01, double e02) {
  detail::check_static(e01, e02, "f6");
  const double s2 = (e02 + 1.0) * (e02 + 1.0);
  return 15.0 * kPi * kPi / 4096.0 * (e01 - 1.0) * (172.0 + (13.0 + 3.0 * e01) * s2 + 20.0 * e01) / ((e01 + 1.0) * s2);
}

inline double f4(double e01, double e02) {
  detail::check_static(e01, e02, "f4");
  const double s2 = (e02 + 1.0) * (e02 + 1.0);
  return std::pow(kPi, 4) * (e01 - 1.0) / (1280.0 * (e01 + 1.0)) * ((12.0 * e01 + 100.0) / s2 - e01 + 5.0);
}

inline double f1(double e01, double e02) {
  detail::check_static(e01, e02, "f1");
  const double s1 = (e01 + 1.0) * (e01 + 1.0), s2 = (e02 + 1.0) * (e02 + 1.0);
  return 16.0 * std::pow(kPi, 7) / 225.0 * (s1 + s2 + s1 * s2 + 36.0) / (s1 * s2);
}

struct Options {
  double rel_tol = 1e-6;
  double x_max = 40.0;
  int max_subintervals = 4000;
};

namespace detail {

// int_0^inf d omega bose(T, omega) g(omega), integrated in u = hbar omega / k_B T.
template <class G>
double bose_integral(G&& g, double temperature, const DielectricModel& m1, const DielectricModel& m2,
                     const Options& o) {
  if (temperature == 0.0) return 0.0;
  const double scale = kBoltzmann * temperature / kHbar;
  std::vector<double> breaks = {0.0, 0.5, 2.0, 5.0, 10.0, 20.0, o.x_max};
  for (const auto* m : {&m1, &m2})
    for (double f : m->feature_frequencies()) {
      const double w = m->feature_width();
      for (double s : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
        const double u = (f + s * w) / scale;
        if (u > 0.0 && u < o.x_max) breaks.push_back(u);
      }
    }
  quad::Options q;
  q.rel_tol = o.rel_tol;
  q.max_subintervals = o.max_subintervals;
  auto h = [&](double u) { return g(scale * u) / std::expm1(u); };
  return scale * quad::integrate_scalar(h, breaks, q).value[0];
}

inline void check_common(double r1, double r2, double temperature, double d) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw DomainError("radii must be positive");
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (!(d > r1 + r2)) throw DomainError("separation must exceed the sum of the radii");
}

inline void thin_warnings(Estimate& e, double r1, double r2, double d, double temperature) {
  const double r = std::max(r1, r2);
  if (d < 10.0 * r) e.warnings.push_back("thin limit: d is not much larger than the radii");
  if (temperature > 0.0 && thermal_wavelength(temperature) < 10.0 * r)
    e.warnings.push_back("thin limit: thermal wavelength is not much larger than the radii");
}

}  // namespace detail

/// Near-field limit d << lambda_T: hbar int d omega bose R1^2 R2^2 [g6/d^6 + omega^2 g4/(c^2 d^4)].
inline Estimate interaction_near(double r1, double r2, const DielectricModel& e1, const DielectricModel& e2,
                                 double t2, double d, const Options& o = {}) {
  detail::check_common(r1, r2, t2, d);
  Estimate est;
  est.regime = Regime::NearField;
  auto g = [&](double w) {
    const Complex a = e1.epsilon(w), b = e2.epsilon(w);
    const double k = w / kSpeedOfLight;
    return g6(a, b) / std::pow(d, 6) + k * k * g4(a, b) / std::pow(d, 4);
  };
  est.value = kHbar * r1 * r1 * r2 * r2 * detail::bose_integral(g, t2, e1, e2, o);
  detail::thin_warnings(est, r1, r2, d, t2);
  if (t2 > 0.0 && d > 0.2 * thermal_wavelength(t2)) est.warnings.push_back("near field: d is not << lambda_T");
  return est;
}

/// Far-field limit d >> lambda_T: hbar int d omega omega^5 bose R1^2 R2^2 g1 / (c^5 d).
/// (Written with hbar; without it the expression is not a force per length.)
inline Estimate interaction_far(double r1, double r2, const DielectricModel& e1, const DielectricModel& e2,
                                double t2, double d, const Options& o = {}) {
  detail::check_common(r1, r2, t2, d);
  Estimate est;
  est.regime = Regime::FarField;
  auto g = [&](double w) {
    const double k = w / kSpeedOfLight;
    return std::pow(k, 5) * g1(e1.epsilon(w), e2.epsilon(w));
  };
  est.value = kHbar * r1 * r1 * r2 * r2 / d * detail::bose_integral(g, t2, e1, e2, o);
  detail::thin_warnings(est, r1, r2, d, t2);
  if (t2 > 0.0 && d < 5.0 * thermal_wavelength(t2)) est.warnings.push_back("far field: d is not >> lambda_T");
  return est;
}

namespace detail {
inline void low_t_warnings(Estimate& e, double t2, double lambda0) {
  if (t2 > 0.0 && lambda0 > 0.0 && thermal_wavelength(t2) < 30.0 * lambda0)
    e.warnings.push_back("low-T limit: lambda_T is not >> lowest resonance wavelength");
}
}  // namespace detail

/// Low-temperature near field with eps_j = eps0_j + i lambda_in_j omega / c.
/// lambda0 (optional, m) is the lowest resonance wavelength used for the regime check.
inline Estimate interaction_near_lowT(double r1, double r2, double eps01, double eps02, double lambda_in1,
                                      double lambda_in2, double t2, double d, double lambda0 = 0.0) {
  detail::check_common(r1, r2, t2, d);
  (void)lambda_in1;  // the near-field leading term depends on the source loss only
  Estimate est;
  est.regime = Regime::NearFieldLowT;
  if (t2 == 0.0) return est;
  const double lt = thermal_wavelength(t2);
  const double pre = -kHbar * kSpeedOfLight * lambda_in2 * r1 * r1 * r2 * r2;
  est.value = pre * f6(eps01, eps02) / (lt * lt * std::pow(d, 6)) + pre * f4(eps01, eps02) / (std::pow(lt, 4) * std::pow(d, 4));
  detail::thin_warnings(est, r1, r2, d, t2);
  detail::low_t_warnings(est, t2, lambda0);
  if (d > 0.2 * lt) est.warnings.push_back("near field: d is not << lambda_T");
  return est;
}

inline Estimate interaction_far_lowT(double r1, double r2, double eps01, double eps02, double lambda_in1,
                                     double lambda_in2, double t2, double d, double lambda0 = 0.0) {
  detail::check_common(r1, r2, t2, d);
  Estimate est;
  est.regime = Regime::FarFieldLowT;
  if (t2 == 0.0) return est;
  const double lt = thermal_wavelength(t2);
  est.value = kHbar * kSpeedOfLight * lambda_in1 * lambda_in2 * r1 * r1 * r2 * r2 * f1(eps01, eps02) / (std::pow(lt, 8) * d);
  detail::thin_warnings(est, r1, r2, d, t2);
  detail::low_t_warnings(est, t2, lambda0);
  if (d < 5.0 * lt) est.warnings.push_back("far field: d is not >> lambda_T");
  return est;
}

/// Separation where the near and far closed forms are equal (bisection in log d).
inline double crossover(double r1, double r2, const DielectricModel& e1, const DielectricModel& e2, double t2,
                        double d_lo, double d_hi, const Options& o = {}) {
  auto gap = [&](double d) {
    return std::log(std::abs(interaction_near(r1, r2, e1, e2, t2, d, o).value)) -
           std::log(std::abs(interaction_far(r1, r2, e1, e2, t2, d, o).value));
  };
  double a = d_lo, b = d_hi, ga = gap(a);
  if (ga * gap(b) > 0.0) throw DomainError("crossover: no sign change in the bracket");
  for (int i = 0; i < 200 && b / a > 1.0 + 1e-10; ++i) {
    const double m = std::sqrt(a * b), gm = gap(m);
    if ((gm > 0.0) == (ga > 0.0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return std::sqrt(a * b);
}

}  // namespace neqc::asymptotics
