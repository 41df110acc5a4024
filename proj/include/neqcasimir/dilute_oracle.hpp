#pragma once

// Optically dilute media (eps -> 1): forces between volume elements add up,
// so the cylinder interaction force follows from the sphere/sphere force by
// integrating along both axes.  Used only as an independent check of the
// engine and of the closed forms.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "neqcasimir/asymptotics.hpp"
#include "neqcasimir/constants.hpp"
#include "neqcasimir/errors.hpp"
#include "neqcasimir/materials.hpp"
#include "neqcasimir/quadrature.hpp"

namespace neqc::dilute {

/// Which powers of 1/r of the volume-element force to keep.
struct Terms {
  bool r2 = true;  // Im eps1 (c / omega r)^2, radiation pressure
  bool r3 = true;  // integrates to the d^-2 cylinder term
  bool r5 = true;
  bool r7 = true;

  static Terms all() { return {}; }
  static Terms without_r3() { return {true, false, true, true}; }
};

struct Options {
  double rel_tol = 1e-7;
  double x_max = 40.0;
  int max_subintervals = 4000;
};

namespace detail {

inline void check_dilute(const DielectricModel& m1, const DielectricModel& m2, double omega,
                         std::vector<std::string>* warnings) {
  if (!warnings) return;
  for (const auto* m : {&m1, &m2})
    if (std::abs(m->epsilon(omega) - 1.0) > 0.1) {
      warnings->push_back("dilute limit: |eps - 1| > 0.1 at " + std::to_string(omega) + " rad/s");
      return;
    }
}

inline asymptotics::Options bose_options(const Options& o) { return {o.rel_tol, o.x_max, o.max_subintervals}; }

}  // namespace detail

/// Integrand of the volume-element force in omega, without the Bose factor:
/// V1 V2 hbar k^7 / (4 pi^3) Im eps2 [Im eps1 / (kr)^2 - Re(eps1 - 1)(1/(kr)^3 + 2/(kr)^5 + 9/(kr)^7)].
/// Positive = repulsion of element 1.
inline double sphere_pair_spectral(double v1, double v2, Complex e1, Complex e2, double omega, double r,
                                   Terms terms = {}) {
  const double k = omega / kSpeedOfLight, x = k * r;
  double bracket = 0.0;
  if (terms.r2) bracket += e1.imag() / (x * x);
  double near = 0.0;
  if (terms.r3) near += 1.0 / (x * x * x);
  if (terms.r5) near += 2.0 / std::pow(x, 5);
  if (terms.r7) near += 9.0 / std::pow(x, 7);
  bracket -= (e1.real() - 1.0) * near;
  return v1 * v2 * kHbar * std::pow(k, 7) / (4.0 * kPi * kPi * kPi) * e2.imag() * bracket;
}

/// Force on volume element 1 (N) from thermal sources in element 2 at T2,
/// separation r.
inline double sphere_pair_force(double v1, double v2, const DielectricModel& m1, const DielectricModel& m2, double t2,
                                double r, Terms terms = {}, const Options& o = {},
                                std::vector<std::string>* warnings = nullptr) {
  if (!(v1 > 0.0 && v2 > 0.0)) throw DomainError("volumes must be positive");
  if (!(r > 0.0)) throw DomainError("separation must be positive");
  if (t2 < 0.0) throw DomainError("temperature must be >= 0");
  if (t2 == 0.0) return 0.0;
  detail::check_dilute(m1, m2, kBoltzmann * t2 / kHbar, warnings);
  auto g = [&](double w) { return sphere_pair_spectral(v1, v2, m1.epsilon(w), m2.epsilon(w), w, r, terms); };
  return asymptotics::detail::bose_integral(g, t2, m1, m2, detail::bose_options(o));
}

/// pi^2 R1^2 R2^2 int dl F(sqrt(d^2 + l^2)) / (V1 V2) d / sqrt(d^2 + l^2), with
/// l = d sinh t; per unit length, positive = repulsion.
inline double cylinder_force_by_summation(double r1, double r2, const DielectricModel& m1, const DielectricModel& m2,
                                          double t2, double d, Terms terms = {}, const Options& o = {},
                                          std::vector<std::string>* warnings = nullptr) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw DomainError("radii must be positive");
  if (!(d > r1 + r2)) throw DomainError("separation must exceed the sum of the radii");
  if (t2 < 0.0) throw DomainError("temperature must be >= 0");
  if (t2 == 0.0) return 0.0;
  detail::check_dilute(m1, m2, kBoltzmann * t2 / kHbar, warnings);
  // slowest term falls like 1/cosh^2 t; stop where its tail is below rel_tol
  const double t_max = 0.5 * std::log(4.0 / o.rel_tol) + 1.0;
  quad::Options q;
  q.rel_tol = 0.1 * o.rel_tol;
  q.max_subintervals = o.max_subintervals;
  auto spectral = [&](double w) {
    const Complex e1 = m1.epsilon(w), e2 = m2.epsilon(w);
    // unit volumes: the prefactor pi^2 R1^2 R2^2 carries the cross sections
    auto h = [&](double t) { return sphere_pair_spectral(1.0, 1.0, e1, e2, w, d * std::cosh(t), terms); };
    return 2.0 * d * quad::integrate_scalar(h, {0.0, 0.5, 1.5, 3.0, t_max}, q).value[0];
  };
  return kPi * kPi * r1 * r1 * r2 * r2 * asymptotics::detail::bose_integral(spectral, t2, m1, m2, detail::bose_options(o));
}

enum class Regime { Near, Far };

/// Dilute cylinder closed forms: Near is -hbar R1^2 R2^2 int n_B Re(eps1 - 1) Im eps2 (45/64 d^-6 + 3 k^2/16 d^-4),
/// Far is hbar/(2 pi) R1^2 R2^2 int n_B k^5 Im eps1 Im eps2 / d.
inline double dilute_closed_forms(double r1, double r2, const DielectricModel& m1, const DielectricModel& m2, double t2,
                                  double d, Regime regime, const Options& o = {}) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw DomainError("radii must be positive");
  if (!(d > 0.0)) throw DomainError("separation must be positive");
  if (t2 == 0.0) return 0.0;
  auto g = [&](double w) {
    const Complex e1 = m1.epsilon(w), e2 = m2.epsilon(w);
    const double k = w / kSpeedOfLight;
    if (regime == Regime::Near)
      return -(e1.real() - 1.0) * e2.imag() * (45.0 / (64.0 * std::pow(d, 6)) + 3.0 * k * k / (16.0 * std::pow(d, 4)));
    return std::pow(k, 5) * e1.imag() * e2.imag() / (2.0 * kPi * d);
  };
  return kHbar * r1 * r1 * r2 * r2 * asymptotics::detail::bose_integral(g, t2, m1, m2, detail::bose_options(o));
}

/// The d^-2 cylinder term that the r^-3 element force sums to:
/// -hbar R1^2 R2^2 int n_B k^4 Re(eps1 - 1) Im eps2 / (8 d^2).
inline double d_minus2_term(double r1, double r2, const DielectricModel& m1, const DielectricModel& m2, double t2,
                            double d, const Options& o = {}) {
  if (t2 == 0.0) return 0.0;
  auto g = [&](double w) {
    const Complex e1 = m1.epsilon(w), e2 = m2.epsilon(w);
    const double k = w / kSpeedOfLight;
    return -std::pow(k, 4) * (e1.real() - 1.0) * e2.imag() / (8.0 * d * d);
  };
  return kHbar * r1 * r1 * r2 * r2 * asymptotics::detail::bose_integral(g, t2, m1, m2, detail::bose_options(o));
}

/// Line sum of an oscillatory element kernel exp(2 i k r) / r^2 (times the
/// projection d / r) over one axis: 2 d int_d^inf exp(2 i k r) / (r^2 sqrt(r^2 - d^2)) dr.
/// The contour r = d + i s^2 turns the phase into exponential decay.
inline Complex self_kernel_line_sum(double k, double d, double rel_tol = 1e-10) {
  if (!(k > 0.0 && d > 0.0)) throw DomainError("self_kernel_line_sum: k and d must be positive");
  const Complex i(0.0, 1.0);
  // dr = 2 i v dv and sqrt(r^2 - d^2) = v sqrt(2 i d - v^2): the v cancels
  auto f = [&](double v) {
    const Complex r = d + i * v * v;
    const Complex val = 2.0 * d * std::exp(2.0 * i * k * r) / (r * r) * 2.0 * i / std::sqrt(2.0 * i * d - v * v);
    return quad::Vec<2>{val.real(), val.imag()};
  };
  // exp(-2 k v^2) decays on v ~ (2k)^-1/2
  const double scale = 1.0 / std::sqrt(2.0 * k), top = scale * std::sqrt(std::log(1.0 / rel_tol) + 10.0);
  quad::Options q;
  q.rel_tol = rel_tol;
  const auto res = quad::integrate<2>(f, {0.0, scale, 3.0 * scale, top}, q);
  return {res.value[0], res.value[1]};
}

}  // namespace neqc::dilute
