#pragma once

// Scattering amplitudes of an infinite isotropic cylinder.
//
// Conventions: outside the cylinder the field is RM + T M (and likewise for N)
// with M, N the outgoing vector cylinder waves built on H^(1)_n(q r) and RM, RN
// their regular counterparts on J_n.  Everything here is dimensionless: the
// axial wavenumber enters as kt = k_z / k and the size as x = k R.  For
// |kt| > 1 the exterior radial wavenumber is q = i sqrt(kt^2 - 1) and the
// exterior functions are written through I_n and K_n.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "neqcasimir/errors.hpp"
#include "neqcasimir/materials.hpp"
#include "neqcasimir/specfun.hpp"

namespace neqc {

enum Polarization : int { kM = 0, kN = 1 };

struct TMatrixBlock {
  std::array<Complex, 4> entries{};  // row-major (P, P')
  int n = 0;
  double kz_tilde = 0.0;
  double x = 0.0;
  double condition = 1.0;  // of the scaled boundary system; 1 for the thin expansion

  Complex& operator()(int p, int pp) { return entries[2 * p + pp]; }
  const Complex& operator()(int p, int pp) const { return entries[2 * p + pp]; }
  bool is_zero() const {
    for (const auto& e : entries)
      if (e != Complex(0.0, 0.0)) return false;
    return true;
  }
};

/// |1 - kt^2|^(1/2), or the caller's exact value when given (qt >= 0).  Near
/// the light line the caller usually knows it to full precision (sin theta,
/// sinh t) while recomputing it from kt loses about half the digits.
inline double radial_fraction(double kt, double qt) {
  if (qt >= 0.0) return qt;
  return std::sqrt(std::abs(1.0 - kt * kt));
}

/// Small-radius expansion, all entries proportional to x^2.  Valid for |n| <= 1.
/// qt = |q|/k if known exactly, negative to derive it from kt.
inline TMatrixBlock thin_t(int n, double kt, Complex eps, Complex mu, double x, double qt = -1.0) {
  if (std::abs(n) > 1) throw UnsupportedOrderError("thin_t: order " + std::to_string(n) + " outside {-1, 0, 1}");
  if (!(x > 0.0)) throw DomainError("thin_t: x must be positive");
  TMatrixBlock t;
  t.n = n;
  t.kz_tilde = kt;
  t.x = x;
  const double x2 = x * x, kt2 = kt * kt;
  const double qr = radial_fraction(kt, qt);
  const double kt2m1 = (kt2 > 1.0 ? 1.0 : -1.0) * qr * qr;  // kt^2 - 1
  const Complex i(0.0, 1.0);
  if (n == 0) {
    t(kN, kN) = -i * kPi / 4.0 * (eps - 1.0) * kt2m1 * x2;
    t(kM, kM) = -i * kPi / 4.0 * (mu - 1.0) * kt2m1 * x2;
    return t;
  }
  const Complex den = (eps + 1.0) * (mu + 1.0);
  t(kN, kN) = i * kPi / 4.0 * (kt2 * (mu + 1.0) * (eps - 1.0) + (mu - 1.0) * (eps + 1.0)) / den * x2;
  t(kM, kM) = i * kPi / 4.0 * (kt2 * (mu - 1.0) * (eps + 1.0) + (mu + 1.0) * (eps - 1.0)) / den * x2;
  const Complex mn = i * kPi / 2.0 * (eps * mu - 1.0) * kt / den * x2 * static_cast<double>(n);
  t(kM, kN) = mn;
  t(kN, kM) = mn;
  return t;
}

namespace detail {

using Mat4 = std::array<std::array<Complex, 4>, 4>;
using Vec4 = std::array<Complex, 4>;

/// Gaussian elimination with partial pivoting.  Returns false on an exactly
/// zero pivot.
inline bool lu_factor(Mat4& a, std::array<int, 4>& perm) {
  for (int i = 0; i < 4; ++i) perm[i] = i;
  for (int k = 0; k < 4; ++k) {
    int p = k;
    for (int r = k + 1; r < 4; ++r)
      if (std::abs(a[r][k]) > std::abs(a[p][k])) p = r;
    if (a[p][k] == Complex(0.0, 0.0)) return false;
    std::swap(a[p], a[k]);
    std::swap(perm[p], perm[k]);
    for (int r = k + 1; r < 4; ++r) {
      a[r][k] /= a[k][k];
      for (int c = k + 1; c < 4; ++c) a[r][c] -= a[r][k] * a[k][c];
    }
  }
  return true;
}

inline Vec4 lu_solve(const Mat4& lu, const std::array<int, 4>& perm, const Vec4& b) {
  Vec4 y{};
  for (int i = 0; i < 4; ++i) {
    y[i] = b[perm[i]];
    for (int j = 0; j < i; ++j) y[i] -= lu[i][j] * y[j];
  }
  for (int i = 3; i >= 0; --i) {
    for (int j = i + 1; j < 4; ++j) y[i] -= lu[i][j] * y[j];
    y[i] /= lu[i][i];
  }
  return y;
}

inline double norm1(const Mat4& a) {
  double best = 0.0;
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int r = 0; r < 4; ++r) s += std::abs(a[r][c]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

inline constexpr double kConditionWarning = 1e10;
inline constexpr double kConditionLimit = 1e14;

/// Exact solution of the boundary-value problem at r = R (continuity of
/// tangential E and H).  The outgoing columns are divided by H_n and the
/// interior columns normalised, which keeps the 4x4 system well scaled even
/// for x -> 0 and large n.
inline TMatrixBlock full_t(int n, double kt, Complex eps, Complex mu, double x, double qt = -1.0) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("full_t: x must be positive");
  if (!std::isfinite(kt)) throw DomainError("full_t: kz/k must be finite");
  TMatrixBlock t;
  t.n = n;
  t.kz_tilde = kt;
  t.x = x;
  if (eps == Complex(1.0, 0.0) && mu == Complex(1.0, 0.0)) return t;

  const Complex i(0.0, 1.0);
  const int an = std::abs(n);
  const bool evanescent = kt * kt > 1.0;

  // Exterior: hp_h = H'/H, regular values jj, jjp on a common scale, and the
  // factor that turns the solved coefficient into T.
  Complex q, s, hp_h, jj, jjp, to_t;
  if (!evanescent) {
    const double qr = radial_fraction(kt, qt);
    if (qr * x == 0.0) throw DomainError("full_t: grazing incidence kz = k");
    q = qr;
    s = qr * x;
    const Complex h = specfun::hankel1(n, s.real());
    hp_h = specfun::hankel1_prime(n, s.real()) / h;
    jj = specfun::bessel_j(n, s.real());
    jjp = specfun::bessel_j_prime(n, s.real());
    to_t = 1.0 / h;
  } else {
    const double qa = radial_fraction(kt, qt);
    if (qa * x == 0.0) throw DomainError("full_t: grazing incidence kz = k");
    const double y = qa * x;
    q = i * qa;
    s = i * y;
    const double ks = specfun::bessel_k_scaled(an, y);
    const double kps = -0.5 * (specfun::bessel_k_scaled(an - 1, y) + specfun::bessel_k_scaled(an + 1, y));
    const double is = specfun::bessel_i_scaled(an, y);
    const double ips = 0.5 * (specfun::bessel_i_scaled(an - 1, y) + specfun::bessel_i_scaled(an + 1, y));
    const auto ipow = [&](int p) { return std::pow(i, ((p % 4) + 4) % 4); };
    hp_h = -i * kps / ks;
    jj = ipow(n) * is;
    jjp = ipow(n - 1) * ips;
    // T = b / H with H = (2/pi) i^-(n+1) K and the exp(+-y) scalings restored.
    to_t = std::exp(2.0 * y) / ((2.0 / kPi) * ipow(-(n + 1)) * ks);
  }
  const Complex alpha = static_cast<double>(n) * kt / s;
  const Complex beta = q;

  const Complex k1 = std::sqrt(eps * mu);
  const Complex q1 = std::sqrt(k1 * k1 - kt * kt);
  const Complex s1 = q1 * x;
  if (std::abs(s1) < 1e-300) throw ConditioningError("full_t: interior radial wavenumber vanishes", INFINITY);
  auto [j1, j1p] = specfun::regular_pair_unnormalised(n, s1);
  const double scale = std::max(std::abs(j1), std::abs(j1p));
  j1 /= scale;
  j1p /= scale;
  const Complex alpha1 = static_cast<double>(n) * kt / (k1 * s1);
  const Complex beta1 = q1 / k1;
  const Complex g = k1 / mu;

  // Unknowns (b_M H, b_N H, c_M, c_N).
  detail::Mat4 a = {{{-hp_h, -alpha, j1p, alpha1 * j1},
                     {0.0, beta, 0.0, -beta1 * j1},
                     {-alpha, -hp_h, g * alpha1 * j1, g * j1p},
                     {beta, 0.0, -g * beta1 * j1, 0.0}}};
  // Row then column equilibration: near the light line or for tiny q R the
  // rows mix scales like n/(qR) and q/k, which otherwise dominates the
  // condition number without reflecting any physical sensitivity.
  std::array<double, 4> rs{}, cs{};
  for (int r = 0; r < 4; ++r) {
    double m = 0.0;
    for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(a[r][c]));
    rs[r] = m > 0.0 ? 1.0 / m : 1.0;
    for (int c = 0; c < 4; ++c) a[r][c] *= rs[r];
  }
  for (int c = 0; c < 4; ++c) {
    double m = 0.0;
    for (int r = 0; r < 4; ++r) m = std::max(m, std::abs(a[r][c]));
    cs[c] = m > 0.0 ? 1.0 / m : 1.0;
    for (int r = 0; r < 4; ++r) a[r][c] *= cs[c];
  }
  const double anorm = detail::norm1(a);
  std::array<int, 4> perm{};
  detail::Mat4 lu = a;
  if (!detail::lu_factor(lu, perm)) throw ConditioningError("full_t: singular boundary system", INFINITY);
  double inv_norm = 0.0;
  {
    detail::Mat4 inv{};
    for (int c = 0; c < 4; ++c) {
      detail::Vec4 e{};
      e[c] = 1.0;
      const auto col = detail::lu_solve(lu, perm, e);
      for (int r = 0; r < 4; ++r) inv[r][c] = col[r];
    }
    inv_norm = detail::norm1(inv);
  }
  t.condition = anorm * inv_norm;
  if (!(t.condition < kConditionLimit))
    throw ConditioningError("full_t: boundary system ill-conditioned at n=" + std::to_string(n) +
                                " kz/k=" + std::to_string(kt) + " x=" + std::to_string(x),
                            t.condition);

  for (int pp = 0; pp < 2; ++pp) {
    const double am = pp == kM ? 1.0 : 0.0, anx = pp == kN ? 1.0 : 0.0;
    detail::Vec4 rhs = {am * jjp + anx * alpha * jj, -anx * beta * jj, am * alpha * jj + anx * jjp, -am * beta * jj};
    for (int r = 0; r < 4; ++r) rhs[r] *= rs[r];
    const auto sol = detail::lu_solve(lu, perm, rhs);
    t(kM, pp) = sol[0] * cs[0] * to_t;
    t(kN, pp) = sol[1] * cs[1] * to_t;
  }
  return t;
}

enum class ProviderKind { Thin, Full };

inline const char* to_string(ProviderKind k) { return k == ProviderKind::Thin ? "thin" : "full"; }

/// Binds a cylinder (material, radius) to one of the two T-matrix routes.
struct TMatrixProvider {
  ProviderKind kind = ProviderKind::Thin;
  DielectricModel material;
  double radius = 0.0;
  Complex mu{1.0, 0.0};

  /// Size parameter above which the thin expansion is flagged as unreliable.
  static constexpr double kThinWarning = 0.3;

  /// Highest |n| with a non-zero block; the thin expansion stops at 1.
  int order_limit() const { return kind == ProviderKind::Thin ? 1 : specfun::kMaxOrder - 2; }

  bool scatters() const { return !(material.is_vacuum() && mu == Complex(1.0, 0.0)); }

  /// Block at order n for kt = kz/k, given eps(omega) and x = omega R / c.
  /// Orders beyond order_limit() return zero blocks.
  TMatrixBlock block(int n, double kt, Complex eps, double x, double qt = -1.0) const {
    if (std::abs(n) > order_limit() || !scatters()) {
      TMatrixBlock z;
      z.n = n;
      z.kz_tilde = kt;
      z.x = x;
      return z;
    }
    return kind == ProviderKind::Thin ? thin_t(n, kt, eps, mu, x, qt) : full_t(n, kt, eps, mu, x, qt);
  }

  TMatrixBlock block_at(int n, double kz, double omega) const {
    const double k = omega / kSpeedOfLight;
    return block(n, kz / k, material.epsilon(omega), k * radius);
  }
};

}  // namespace neqc
