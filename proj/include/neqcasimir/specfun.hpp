#pragma once

// Integer-order cylinder functions of real argument.
//
// J_n uses Miller's backward recurrence normalised by J_0 + 2 sum J_2k = 1,
// switching to the Hankel asymptotic expansion when x >= max(20, n^2).
// Y_0 and Y_1 come from Neumann series over the Miller J_k (x < 20) or from
// the asymptotic expansion, and Y_n from upward recurrence.  K_0, K_1 use
// the ascending series for x <= 2 and the trapezoidal rule on
// int_0^inf exp(-x cosh t) cosh(nu t) dt above that; K_n then recurs
// upward.  I_n uses Miller's recurrence normalised by exp(x).
//
// Accuracy target: 1e-10 relative over x in [1e-3, 1e3], |n| <= 16.
// Unscaled I_n overflows for x above ~700 and K_n underflows; the *_scaled
// variants cover the full range.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "neqcasimir/constants.hpp"
#include "neqcasimir/errors.hpp"

namespace neqc::specfun {

using Complex = std::complex<double>;

inline constexpr int kMaxOrder = 64;

namespace detail {

inline void check_order(int n) {
  if (std::abs(n) > kMaxOrder)
    throw DomainError("cylinder function order " + std::to_string(n) + " exceeds limit " +
                      std::to_string(kMaxOrder));
}

inline void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

inline double reflect_sign(int n) { return (n < 0 && (n & 1)) ? -1.0 : 1.0; }

inline bool use_asymptotic(int n, double x) {
  return x >= std::max(20.0, static_cast<double>(n) * n);
}

// Hankel large-argument expansion; returns (J_n, Y_n).
inline std::pair<double, double> asymptotic_jy(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;  // series started to diverge
    last = mag;
    // k odd feeds Q, k even feeds P, both with alternating signs.
    const int m = k / 2;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (k & 1)
      q += sign * term;
    else
      p += sign * term;
    if (mag < 1e-17 * std::max(std::abs(p), std::abs(q) + 1e-300)) break;
  }
  const double chi = x - (0.5 * n + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

inline int miller_start(int top, double x) {
  const double span = std::max(static_cast<double>(top), x);
  int start = static_cast<int>(span + 40.0 + 12.0 * std::cbrt(span));
  return start + (start & 1);
}

// Miller backward recurrence: J_k(x) for k = 0..miller_start(top, x), x > 0.
inline std::vector<double> miller_j_all(int top, double x) {
  const int start = miller_start(top, x);
  std::vector<double> v(static_cast<std::size_t>(start) + 1, 0.0);
  double next = 0.0, cur = 1e-300;
  v[start] = cur;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    v[k - 1] = cur;
    if (std::abs(cur) > 1e250) {
      for (int i = k - 1; i <= start; ++i) v[i] *= 1e-250;
      cur *= 1e-250;
      next *= 1e-250;
    }
  }
  double even = 0.0;
  for (int k = 2; k <= start; k += 2) even += v[k];
  const double norm = v[0] + 2.0 * even;
  for (double& e : v) e /= norm;
  return v;
}

inline std::vector<double> miller_j(int top, double x) {
  auto v = miller_j_all(top, x);
  v.resize(static_cast<std::size_t>(top) + 1);
  return v;
}

inline std::pair<double, double> neumann_y01(double x, const std::vector<double>& j) {
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0, s1 = 0.0;
  const int top = static_cast<int>(j.size()) - 1;
  for (int k = 1; 2 * k + 1 <= top; ++k) {
    const double sign = (k & 1) ? -1.0 : 1.0;
    s0 += sign * j[2 * k] / k;
    s1 += sign * (2.0 * k + 1.0) / (k * (k + 1.0)) * j[2 * k + 1];
  }
  const double y0 = (2.0 / kPi) * log_term * j[0] - (4.0 / kPi) * s0;
  const double y1 = -2.0 / (kPi * x) * j[0] + (2.0 / kPi) * (log_term - 1.0) * j[1] - (2.0 / kPi) * s1;
  return {y0, y1};
}

// e^x K_0(x), e^x K_1(x).
inline std::pair<double, double> k01_scaled(double x) {
  if (x <= 2.0) {
    const double t = 0.25 * x * x;
    const double log_term = std::log(0.5 * x);
    // I_0, I_1 and the digamma-weighted sums.
    double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
    double a0 = 1.0;        // t^k / (k!)^2
    double a1 = 0.5 * x;    // (x/2) t^k / (k! (k+1)!)
    double harmonic = 0.0;  // H_k
    for (int k = 0; k < 60; ++k) {
      if (k > 0) {
        a0 *= t / (static_cast<double>(k) * k);
        a1 *= t / (static_cast<double>(k) * (k + 1));
        harmonic += 1.0 / k;
      }
      const double psi_k1 = harmonic - kEulerGamma;            // psi(k+1)
      const double psi_k2 = harmonic + 1.0 / (k + 1) - kEulerGamma;  // psi(k+2)
      i0 += a0;
      i1 += a1;
      s0 += a0 * psi_k1;
      s1 += a1 * (psi_k1 + psi_k2);
      if (a0 < 1e-18 * i0 && a1 < 1e-18 * i1) break;
    }
    const double k0 = -log_term * i0 + s0;
    const double k1 = 1.0 / x + log_term * i1 - 0.5 * s1;
    const double e = std::exp(x);
    return {k0 * e, k1 * e};
  }
  // Trapezoidal rule; the integrand is analytic in a strip so the error
  // decays like exp(-2 pi a / h). The peak narrows as 1/sqrt(x).
  const double h = 0.125 * std::min(1.0, std::sqrt(20.0 / x));
  double k0 = 0.5, k1 = 0.5;  // t = 0 contributions (weight 1/2)
  for (int i = 1; i < 40000; ++i) {
    const double t = i * h;
    const double w = std::exp(-x * (std::cosh(t) - 1.0));
    k0 += w;
    k1 += w * std::cosh(t);
    if (w < 1e-18 * k0 && w * std::cosh(t) < 1e-18 * k1) break;
  }
  return {k0 * h, k1 * h};
}

// e^{-x} I_k(x), k = 0..top, by backward recurrence.
inline std::vector<double> miller_i_scaled(int top, double x) {
  std::vector<double> out(static_cast<std::size_t>(top) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double span = std::max(static_cast<double>(top), 0.0);
  int start = static_cast<int>(span + 40.0 + 12.0 * std::sqrt(x + 1.0));
  std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
  double next = 0.0, cur = 1e-300;
  v[start] = cur;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur + next;
    next = cur;
    cur = prev;
    v[k - 1] = cur;
    if (cur > 1e250) {
      for (int i = k - 1; i <= start; ++i) v[i] *= 1e-250;
      cur *= 1e-250;
      next *= 1e-250;
    }
  }
  double sum = 0.0;
  for (int k = start; k >= 1; --k) sum += v[k];
  sum = v[0] + 2.0 * sum;  // = exp(x) in units of the recurrence
  for (int k = 0; k <= top; ++k) out[k] = v[k] / sum;
  return out;
}

}  // namespace detail

/// J_k(x) and Y_k(x) for k = 0..top, sharing one recurrence pass.
struct BesselJYTable {
  std::vector<double> j;
  std::vector<double> y;
};

inline BesselJYTable bessel_jy_table(int top, double x) {
  detail::check_finite(x, "bessel_jy_table");
  if (x <= 0.0) throw DomainError("bessel_jy_table: x must be positive");
  top = std::max(top, 1);
  detail::check_order(top);
  BesselJYTable t;
  t.y.resize(static_cast<std::size_t>(top) + 1);
  double y0, y1;
  if (detail::use_asymptotic(top, x)) {
    t.j.resize(static_cast<std::size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) t.j[k] = detail::asymptotic_jy(k, x).first;
    std::tie(std::ignore, y0) = detail::asymptotic_jy(0, x);
    std::tie(std::ignore, y1) = detail::asymptotic_jy(1, x);
  } else if (x >= 20.0) {
    t.j = detail::miller_j(top, x);
    y0 = detail::asymptotic_jy(0, x).second;
    y1 = detail::asymptotic_jy(1, x).second;
  } else {
    auto full = detail::miller_j_all(top, x);
    std::tie(y0, y1) = detail::neumann_y01(x, full);
    full.resize(static_cast<std::size_t>(top) + 1);
    t.j = std::move(full);
  }
  t.y[0] = y0;
  t.y[1] = y1;
  for (int k = 1; k < top; ++k) t.y[k + 1] = (2.0 * k / x) * t.y[k] - t.y[k - 1];
  return t;
}

/// Exponentially scaled modified functions: i = e^{-x} I_k(x), k = e^{x} K_k(x).
struct BesselIKTable {
  std::vector<double> i_scaled;
  std::vector<double> k_scaled;
};

inline BesselIKTable bessel_ik_table(int top, double x) {
  detail::check_finite(x, "bessel_ik_table");
  if (x <= 0.0) throw DomainError("bessel_ik_table: x must be positive");
  top = std::max(top, 1);
  detail::check_order(top);
  BesselIKTable t;
  t.i_scaled = detail::miller_i_scaled(top, x);
  t.k_scaled.resize(static_cast<std::size_t>(top) + 1);
  std::tie(t.k_scaled[0], t.k_scaled[1]) = detail::k01_scaled(x);
  for (int k = 1; k < top; ++k) t.k_scaled[k + 1] = t.k_scaled[k - 1] + (2.0 * k / x) * t.k_scaled[k];
  return t;
}

inline double bessel_j(int n, double x) {
  detail::check_finite(x, "bessel_j");
  detail::check_order(n);
  if (x < 0.0) throw DomainError("bessel_j: negative argument");
  const int m = std::abs(n);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  double v;
  if (detail::use_asymptotic(m, x))
    v = detail::asymptotic_jy(m, x).first;
  else
    v = detail::miller_j(std::max(m, 1), x)[m];
  return detail::reflect_sign(n) * v;
}

inline double bessel_y(int n, double x) {
  detail::check_finite(x, "bessel_y");
  detail::check_order(n);
  if (x <= 0.0) throw DomainError("bessel_y: argument must be positive");
  const int m = std::abs(n);
  double v;
  if (detail::use_asymptotic(m, x))
    v = detail::asymptotic_jy(m, x).second;
  else
    v = bessel_jy_table(m, x).y[m];
  return detail::reflect_sign(n) * v;
}

inline Complex hankel1(int n, double x) {
  detail::check_finite(x, "hankel1");
  detail::check_order(n);
  if (x <= 0.0) throw DomainError("hankel1: argument must be positive");
  const int m = std::abs(n);
  double j, y;
  if (detail::use_asymptotic(m, x)) {
    std::tie(j, y) = detail::asymptotic_jy(m, x);
  } else {
    auto t = bessel_jy_table(m, x);
    j = t.j[m];
    y = t.y[m];
  }
  return detail::reflect_sign(n) * Complex(j, y);
}

inline double bessel_i_scaled(int n, double x) {
  detail::check_finite(x, "bessel_i");
  detail::check_order(n);
  if (x < 0.0) throw DomainError("bessel_i: negative argument");
  const int m = std::abs(n);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  return detail::miller_i_scaled(m, x)[m];
}

inline double bessel_k_scaled(int n, double x) {
  detail::check_finite(x, "bessel_k");
  detail::check_order(n);
  if (x <= 0.0) throw DomainError("bessel_k: argument must be positive");
  const int m = std::abs(n);
  return bessel_ik_table(std::max(m, 1), x).k_scaled[m];
}

/// I_n(x).  I_n(0) is returned analytically.
inline double bessel_i(int n, double x) { return bessel_i_scaled(n, x) * std::exp(x); }

inline double bessel_k(int n, double x) { return bessel_k_scaled(n, x) * std::exp(-x); }

// Derivatives by the three-term identities, never by differencing.

inline double bessel_j_prime(int n, double x) { return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x)); }

inline double bessel_y_prime(int n, double x) { return 0.5 * (bessel_y(n - 1, x) - bessel_y(n + 1, x)); }

inline Complex hankel1_prime(int n, double x) { return 0.5 * (hankel1(n - 1, x) - hankel1(n + 1, x)); }

inline double bessel_i_prime(int n, double x) { return 0.5 * (bessel_i(n - 1, x) + bessel_i(n + 1, x)); }

inline double bessel_k_prime(int n, double x) { return -0.5 * (bessel_k(n - 1, x) + bessel_k(n + 1, x)); }

/// J_n(z) and J_n'(z) for complex z, up to a common (unknown) factor.
///
/// Only the ratio is meaningful.  Used for interior fields of a lossy
/// cylinder, where the amplitude is solved for anyway.
inline std::pair<Complex, Complex> regular_pair_unnormalised(int n, Complex z) {
  detail::check_order(n);
  if (z == Complex(0.0)) throw DomainError("regular_pair_unnormalised: zero argument");
  const int m = std::abs(n);
  const int start = m + static_cast<int>(std::abs(z)) + 40 + static_cast<int>(12.0 * std::cbrt(std::abs(z) + m));
  Complex next = 0.0, cur = 1e-300;
  Complex jm = 0.0, jm1 = 0.0;  // J_m, J_{m+1}
  for (int k = start; k >= 1; --k) {
    const Complex prev = (2.0 * k / z) * cur - next;
    next = cur;
    cur = prev;
    if (k == m + 1) {
      jm = cur;    // index k-1 = m
      jm1 = next;  // index m+1
    }
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      jm *= 1e-250;
      jm1 *= 1e-250;
    }
  }
  // J_m' = (m/z) J_m - J_{m+1}
  Complex jp = (static_cast<double>(m) / z) * jm - jm1;
  const double s = detail::reflect_sign(n);
  const double scale = 1.0 / std::max(std::abs(jm), std::abs(jp));
  return {s * jm * scale, s * jp * scale};
}

}  // namespace neqc::specfun
