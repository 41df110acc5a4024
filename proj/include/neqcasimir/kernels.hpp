#pragma once

// Mode-resolved pieces of the force integrands: the thermal occupation, the
// source amplitude A built from a T-matrix block, the Hankel products that
// carry the separation dependence, and the scalar kernels f, f~ and s summed
// over the two polarizations.
//
// For evanescent waves q = i|q| and H_n(i y) = (2/pi) i^-(n+1) K_n(y), so the
// Hankel product reduces to -(4i/pi^2) K_|p|(y) K_|p-1|(y) and no complex
// argument Bessel function is ever needed.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <vector>

#include "neqcasimir/constants.hpp"
#include "neqcasimir/specfun.hpp"
#include "neqcasimir/tmatrix.hpp"

namespace neqc {

/// 1 / (exp(hbar omega / k_B T) - 1), zero at T = 0.
inline double bose(double temperature, double omega) {
  if (!(omega > 0.0)) throw DomainError("bose: omega must be positive");
  if (temperature < 0.0) throw DomainError("bose: negative temperature");
  if (temperature == 0.0) return 0.0;
  const double u = kHbar * omega / (kBoltzmann * temperature);
  if (u > 700.0) return 0.0;
  return 1.0 / std::expm1(u);
}

/// a(T, omega) = omega^2 hbar (4 pi)^2 / c^2 * bose
inline double occupation(double temperature, double omega) {
  return omega * omega * kHbar * 16.0 * kPi * kPi / (kSpeedOfLight * kSpeedOfLight) * bose(temperature, omega);
}

enum class Branch { Propagating, Evanescent };

using Amplitude = std::array<Complex, 4>;  // (P, P') row-major

/// Source amplitude A of one cylinder.  Propagating: Re T + sum T T^*, the
/// second term optional.  Evanescent: (-1)^n Re T.
inline Amplitude a_factor(const TMatrixBlock& t, Branch branch, bool quadratic = true) {
  Amplitude a{};
  if (branch == Branch::Evanescent) {
    const double sign = (t.n % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < 4; ++k) a[k] = sign * t.entries[k].real();
    return a;
  }
  for (int p = 0; p < 2; ++p)
    for (int pp = 0; pp < 2; ++pp) {
      Complex v = t(p, pp).real();
      if (quadratic)
        for (int s = 0; s < 2; ++s) v += t(p, s) * std::conj(t(pp, s));
      a[2 * p + pp] = v;
    }
  return a;
}

/// H_p(z) conj(H_{p-1}(z)) for real z > 0.
inline Complex propagating_hankel_product(int p, double z) {
  return specfun::hankel1(p, z) * std::conj(specfun::hankel1(p - 1, z));
}

/// H_p(i y) conj(H_{p-1}(i y)) for y > 0.
inline Complex evanescent_hankel_product(int p, double y) {
  return Complex(0.0, -4.0 / (kPi * kPi)) * specfun::bessel_k(std::abs(p), y) * specfun::bessel_k(std::abs(p - 1), y);
}

/// f summed over P, P' for one (n, m): t1m, t1m1 are cylinder 1 blocks at
/// orders m and m+1, a2 the amplitude of cylinder 2 at order n, h the
/// propagating Hankel product at p = n - m.
inline double f_kernel(const TMatrixBlock& t1m, const TMatrixBlock& t1m1, const Amplitude& a2, Complex h,
                       bool quadratic = true) {
  double f = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int pp = 0; pp < 2; ++pp) {
      Complex quad = 0.0;
      if (quadratic)
        for (int s = 0; s < 2; ++s) quad += t1m(p, s) * std::conj(t1m1(s, pp));
      const Complex lin = t1m(p, pp) + std::conj(t1m1(pp, p));
      const Complex a = a2[2 * p + pp];
      f += a.real() * (h * (lin + 2.0 * quad)).imag();
      if (quadratic) f += 2.0 * a.imag() * (h * quad).real();
    }
  return f;
}

/// f~ summed over P, P', without the (-1)^(n+m) prefactor; h is the
/// evanescent Hankel product at p = n - m.
inline double f_tilde_kernel(const TMatrixBlock& t1m, const TMatrixBlock& t1m1, const TMatrixBlock& t2n, Complex h) {
  double f = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int pp = 0; pp < 2; ++pp)
      f += t2n(p, pp).real() * (h * (t1m(p, pp) + std::conj(t1m1(p, pp)))).real();
  return f;
}

/// s summed over P, P' for sources on cylinder 1 (amplitude a1 at order n)
/// scattered by cylinder 2 blocks at orders m, m+1.  With p = n - m:
/// hj = H_p J_{p-1}, jh = J_p conj(H_{p-1}), all at q d.
inline double s_kernel(const Amplitude& a1, const TMatrixBlock& t2m, const TMatrixBlock& t2m1, Complex hj, Complex jh) {
  double s = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int pp = 0; pp < 2; ++pp)
      s += 2.0 * a1[2 * p + pp].real() * (hj * t2m(p, pp) + jh * std::conj(t2m1(p, pp))).imag();
  return s;
}

/// Cylinder functions at one argument for orders -top..top, reused across
/// all (n, m) pairs of a quadrature node.
class HankelTable {
 public:
  HankelTable(int top, double z, Branch branch) : top_(top), branch_(branch) {
    if (branch == Branch::Propagating) {
      auto t = specfun::bessel_jy_table(top + 1, z);
      j_ = std::move(t.j);
      y_ = std::move(t.y);
    } else {
      auto t = specfun::bessel_ik_table(top + 1, z);
      k_.resize(t.k_scaled.size());
      const double e = std::exp(-z);
      for (std::size_t i = 0; i < k_.size(); ++i) k_[i] = t.k_scaled[i] * e;
    }
  }

  int top() const { return top_; }

  double j(int p) const { return sign(p) * j_.at(std::abs(p)); }
  Complex h(int p) const { return sign(p) * Complex(j_.at(std::abs(p)), y_.at(std::abs(p))); }
  double k(int p) const { return k_.at(std::abs(p)); }

  /// H_p conj(H_{p-1}) on the current branch.
  Complex product(int p) const {
    if (branch_ == Branch::Propagating) return h(p) * std::conj(h(p - 1));
    return Complex(0.0, -4.0 / (kPi * kPi)) * k(p) * k(p - 1);
  }

 private:
  static double sign(int p) { return (p < 0 && (p % 2 != 0)) ? -1.0 : 1.0; }
  int top_;
  Branch branch_;
  std::vector<double> j_, y_, k_;
};

}  // namespace neqc
