#pragma once

// Frequency and axial-wavenumber quadrature of the one-reflection force
// integrands, multipole summation, and assembly of the total force.
//
// Sign convention: every force on a cylinder is reported along the axis that
// points away from the other cylinder, so positive means repulsion and
// negative attraction, for either cylinder.
//
// Notation for one evaluation: "target" is the cylinder the force acts on,
// "source" the one whose thermal currents radiate.  For the interaction
// integrand the target plays the role of cylinder 1 and the source of
// cylinder 2.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "neqcasimir/constants.hpp"
#include "neqcasimir/equilibrium.hpp"
#include "neqcasimir/errors.hpp"
#include "neqcasimir/kernels.hpp"
#include "neqcasimir/materials.hpp"
#include "neqcasimir/quadrature.hpp"
#include "neqcasimir/tmatrix.hpp"

namespace neqc {

struct QuadratureControls {
  double rel_tol = 1e-4;
  double x_max = 40.0;  // upper limit of hbar omega / k_B T
  int n_max = 0;        // 0: 1 for the thin expansion, 8 for the full solve
  double series_tol = 1e-6;
  ProviderKind provider = ProviderKind::Thin;
  // Products of two T-matrix elements in the amplitudes; default on for the
  // full solve, off for the thin expansion.
  std::optional<bool> quadratic_terms;
  bool kz_symmetry = true;  // integrate k_z >= 0 and double
  int max_subintervals = 4000;
  // Nodes closer than this (in t with k_z = k cosh t, or theta with
  // k_z = k cos theta) to the light line are replaced by a linear model; the
  // multipole terms cancel there to (distance)^4 and double precision fails.
  double light_line_guard = 3e-3;
  // Evanescent k_z range ends where |q| times the surface gap reaches this.
  double evanescent_cutoff = 20.0;

  int effective_n_max() const { return n_max > 0 ? n_max : (provider == ProviderKind::Thin ? 1 : 8); }
  bool use_quadratic() const { return quadratic_terms.value_or(provider == ProviderKind::Full); }

  void validate() const {
    if (!(rel_tol > 0.0 && x_max > 0.0 && series_tol > 0.0 && light_line_guard > 0.0 && evanescent_cutoff > 0.0))
      throw DomainError("quadrature controls must be positive");
    if (n_max < 0) throw DomainError("n_max must be >= 1 (or 0 for the provider default)");
    if (max_subintervals < 10) throw DomainError("max_subintervals too small");
  }
};

/// One force split by channel, N/m.
struct ForceValue {
  double propagating = 0.0;
  double evanescent = 0.0;
  double error = 0.0;  // quadrature error estimate
  double total() const { return propagating + evanescent; }

  ForceValue& operator+=(const ForceValue& o) {
    propagating += o.propagating;
    evanescent += o.evanescent;
    error += o.error;
    return *this;
  }
  friend ForceValue operator+(ForceValue a, const ForceValue& b) { return a += b; }
  friend ForceValue operator-(ForceValue a, const ForceValue& b) {
    a.propagating -= b.propagating;
    a.evanescent -= b.evanescent;
    a.error += b.error;
    return a;
  }
  friend ForceValue operator-(ForceValue a) {
    a.propagating = -a.propagating;
    a.evanescent = -a.evanescent;
    return a;
  }
};

namespace detail {

/// Lazily computed T-matrix blocks of one cylinder at fixed (omega, k_z).
class BlockCache {
 public:
  BlockCache(const TMatrixProvider& p, double kt, double qt, Complex eps, double x, int top)
      : p_(&p), kt_(kt), qt_(qt), eps_(eps), x_(x), top_(top), blocks_(2 * top + 3) {}

  const TMatrixBlock& operator()(int n) {
    static const TMatrixBlock zero{};
    if (std::abs(n) > top_ || std::abs(n) > p_->order_limit()) return zero;
    auto& slot = blocks_[n + top_ + 1];
    if (!slot) slot = p_->block(n, kt_, eps_, x_, qt_);
    return *slot;
  }

 private:
  const TMatrixProvider* p_;
  double kt_, qt_;
  Complex eps_;
  double x_;
  int top_;
  std::vector<std::optional<TMatrixBlock>> blocks_;
};

/// Per-frequency data shared by all k_z nodes.
struct FrequencyPoint {
  double k = 0.0;  // omega / c
  double kd = 0.0;
  Complex eps_target, eps_source;
  double x_target = 0.0, x_source = 0.0;
};

enum class Kind { Interaction, PairSource };

/// Mode sum at one (omega, k_z) node with early stop on the multipole order.
class ModeSum {
 public:
  ModeSum(const TMatrixProvider& target, const TMatrixProvider& source, const QuadratureControls& c)
      : target_(target), source_(source), c_(c) {
    n_eff_ = std::min(c.effective_n_max(), std::max(target.order_limit(), source.order_limit()));
    n_eff_ = std::max(n_eff_, 1);
    quadratic_ = c.use_quadratic();
  }

  int order_cap() const { return n_eff_; }

  /// Sum of f (propagating, without the -q measure) at kt = kz/k, qt = q/k.
  double interaction_propagating(const FrequencyPoint& w, double kt, double qt) const {
    const double z = w.kd * qt;
    BlockCache t1(target_, kt, qt, w.eps_target, w.x_target, n_eff_ + 1);
    BlockCache t2(source_, kt, qt, w.eps_source, w.x_source, n_eff_ + 1);
    HankelTable h(2 * n_eff_ + 2, z, Branch::Propagating);
    std::vector<Amplitude> a2(2 * n_eff_ + 1);
    std::vector<bool> have(2 * n_eff_ + 1, false);
    auto level = [&](int N) {
      Partial s;
      for (int n = -N; n <= N; ++n) {
        if (!have[n + n_eff_]) {
          a2[n + n_eff_] = a_factor(t2(n), Branch::Propagating, quadratic_);
          have[n + n_eff_] = true;
        }
        const auto& a = a2[n + n_eff_];
        if (is_zero(a)) continue;
        for (int m = -N - 1; m <= N; ++m) {
          const TMatrixBlock& tm = std::abs(m) <= N ? t1(m) : zero_;
          const TMatrixBlock& tm1 = std::abs(m + 1) <= N ? t1(m + 1) : zero_;
          if (tm.is_zero() && tm1.is_zero()) continue;
          s.add(f_kernel(tm, tm1, a, h.product(n - m), quadratic_));
        }
      }
      return s;
    };
    return converge(level);
  }

  /// Sum of (-1)^(n+m) f~ at kt = kz/k (|kt| > 1), qt = |q|/k.
  double interaction_evanescent(const FrequencyPoint& w, double kt, double qt) const {
    const double y = w.kd * qt;
    BlockCache t1(target_, kt, qt, w.eps_target, w.x_target, n_eff_ + 1);
    BlockCache t2(source_, kt, qt, w.eps_source, w.x_source, n_eff_ + 1);
    HankelTable h(2 * n_eff_ + 2, y, Branch::Evanescent);
    auto level = [&](int N) {
      Partial s;
      for (int n = -N; n <= N; ++n) {
        const auto& b2 = t2(n);
        if (b2.is_zero()) continue;
        for (int m = -N - 1; m <= N; ++m) {
          const TMatrixBlock& tm = std::abs(m) <= N ? t1(m) : zero_;
          const TMatrixBlock& tm1 = std::abs(m + 1) <= N ? t1(m + 1) : zero_;
          if (tm.is_zero() && tm1.is_zero()) continue;
          const double sign = ((n + m) % 2 == 0) ? 1.0 : -1.0;
          s.add(sign * f_tilde_kernel(tm, tm1, b2, h.product(n - m)));
        }
      }
      return s;
    };
    return converge(level);
  }

  /// Sum of s for sources on "source" scattered by "target" (propagating).
  /// Here the source cylinder plays the role of cylinder 1 in the kernel.
  double pair_source(const FrequencyPoint& w, double kt, double qt) const {
    const double z = w.kd * qt;
    BlockCache ts(source_, kt, qt, w.eps_source, w.x_source, n_eff_ + 1);
    BlockCache to(target_, kt, qt, w.eps_target, w.x_target, n_eff_ + 1);
    HankelTable h(2 * n_eff_ + 2, z, Branch::Propagating);
    auto level = [&](int N) {
      Partial s;
      for (int n = -N; n <= N; ++n) {
        const Amplitude a1 = a_factor(ts(n), Branch::Propagating, quadratic_);
        if (is_zero(a1)) continue;
        for (int m = -N - 1; m <= N; ++m) {
          const TMatrixBlock& tm = std::abs(m) <= N ? to(m) : zero_;
          const TMatrixBlock& tm1 = std::abs(m + 1) <= N ? to(m + 1) : zero_;
          if (tm.is_zero() && tm1.is_zero()) continue;
          const int p = n - m;
          const Complex hj = h.h(p) * h.j(p - 1);
          const Complex jh = h.j(p) * std::conj(h.h(p - 1));
          s.add(s_kernel(a1, tm, tm1, hj, jh));
        }
      }
      return s;
    };
    return converge(level);
  }

 private:
  static bool is_zero(const Amplitude& a) {
    for (const auto& v : a)
      if (v != Complex(0.0, 0.0)) return false;
    return true;
  }

  struct Partial {
    double sum = 0.0, magnitude = 0.0;
    void add(double v) {
      sum += v;
      magnitude += std::abs(v);
    }
  };

  // Adds |n| shells until the last one changes the sum by less than
  // series_tol of the accumulated term magnitudes (robust when terms cancel).
  template <class Level>
  double converge(Level&& level) const {
    Partial prev = level(1);
    for (int N = 2; N <= n_eff_; ++N) {
      const Partial cur = level(N);
      const double change = std::abs(cur.sum - prev.sum);
      prev = cur;
      if (change <= c_.series_tol * cur.magnitude) break;
    }
    return prev.sum;
  }

  const TMatrixProvider& target_;
  const TMatrixProvider& source_;
  const QuadratureControls& c_;
  int n_eff_ = 1;
  bool quadratic_ = false;
  TMatrixBlock zero_{};
};

/// Integrates g over [lo, hi] where g(s) -> 0 linearly as s -> 0 and values
/// below `guard` are unreliable: nodes start at the guard and the band
/// [0, guard] is closed with the triangle g(guard) guard / 2.
template <class G>
quad::Result<1> guarded(G&& g, double guard, double hi, std::vector<double> breaks, const quad::Options& o) {
  guard = std::min(guard, 0.5 * hi);
  breaks.push_back(guard);
  breaks.push_back(hi);
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double b) { return b < guard || b > hi; }),
               breaks.end());
  auto r = quad::integrate_scalar(g, breaks, o);
  const double band = 0.5 * guard * g(guard);
  r.value[0] += band;
  r.l1[0] += std::abs(band);
  return r;
}

}  // namespace detail

/// Shared machinery for one ordered pair (target, source) at separation d.
class ForceIntegrator {
 public:
  static constexpr double kMinU = 1e-9;

  ForceIntegrator(const CylinderSpec& target, const CylinderSpec& source, double d, const QuadratureControls& c)
      : target_spec_(target), source_spec_(source), d_(d), c_(c) {
    c.validate();
    target.validate();
    source.validate();
    if (!(d > target.radius + source.radius)) throw DomainError("separation must exceed the sum of the radii");
    target_ = TMatrixProvider{c.provider, target.material, target.radius};
    source_ = TMatrixProvider{c.provider, source.material, source.radius};
  }

  /// Force on the target from thermal sources in the source at temperature T.
  ForceValue interaction(double temperature) const {
    if (temperature == 0.0 || !target_.scatters() || !source_.scatters()) return {};
    detail::ModeSum sum(target_, source_, c_);
    auto per_omega = [&](double omega, const Inner& o) {
      const auto w = point(omega);
      return quad::Vec<2>{propagating_integral(sum, w, o[0]), evanescent_integral(sum, w, o[1])};
    };
    return integrate_omega(per_omega, temperature);
  }

  /// Force on both cylinders from sources in the source cylinder, along the
  /// source's outward axis: the pair-source force.  Propagating waves only.
  ForceValue pair_source(double temperature) const {
    if (temperature == 0.0 || !target_.scatters() || !source_.scatters()) return {};
    detail::ModeSum sum(target_, source_, c_);
    auto per_omega = [&](double omega, const Inner& o) {
      const auto w = point(omega);
      return quad::Vec<2>{pair_integral(sum, w, o[0]), 0.0};
    };
    return integrate_omega(per_omega, temperature);
  }

  /// Integrand of the frequency integral before the Bose factor, split by
  /// channel: hbar/(2 pi^2) times the bracket of the k_z integrals.  Exposed
  /// for tests against closed forms.
  std::array<double, 2> spectral_interaction(double omega) const {
    detail::ModeSum sum(target_, source_, c_);
    const auto w = point(omega);
    const double pre = kHbar / (2.0 * kPi * kPi);
    return {pre * propagating_integral(sum, w, inner_options()), pre * evanescent_integral(sum, w, inner_options())};
  }

  double spectral_pair_source(double omega) const {
    detail::ModeSum sum(target_, source_, c_);
    return kHbar / (2.0 * kPi * kPi) * pair_integral(sum, point(omega), inner_options());
  }

 private:
  detail::FrequencyPoint point(double omega) const {
    detail::FrequencyPoint w;
    w.k = omega / kSpeedOfLight;
    w.kd = w.k * d_;
    w.eps_target = target_.material.epsilon(omega);
    w.eps_source = source_.material.epsilon(omega);
    w.x_target = w.k * target_.radius;
    w.x_source = w.k * source_.radius;
    return w;
  }

  using Inner = std::array<quad::Options, 2>;

  quad::Options inner_options() const {
    quad::Options o;
    o.rel_tol = 0.1 * c_.rel_tol;
    o.l1_fraction = 1e-2;
    o.max_subintervals = c_.max_subintervals;
    return o;
  }

  std::vector<double> theta_breaks(double kd) const {
    // About one panel per radian of Hankel phase kd sin(theta).
    const int panels = std::clamp(static_cast<int>(std::ceil(kd / 2.0)), 1, c_.max_subintervals / 4);
    std::vector<double> b;
    for (int i = 0; i <= panels; ++i) b.push_back(std::asin(std::min(1.0, static_cast<double>(i) / panels)));
    return b;
  }

  // -int q f dkz over |kz| < k, with kz = k cos(theta).
  double propagating_integral(const detail::ModeSum& sum, const detail::FrequencyPoint& w,
                              const quad::Options& o) const {
    auto g = [&](double th) {
      const double qt = std::sin(th), kt = std::cos(th);
      double v = sum.interaction_propagating(w, kt, qt);
      v = c_.kz_symmetry ? 2.0 * v : v + sum.interaction_propagating(w, -kt, qt);
      return -w.k * w.k * qt * qt * v;
    };
    return checked("propagating", w, [&] {
      return detail::guarded(g, c_.light_line_guard, 0.5 * kPi, theta_breaks(w.kd), o).value[0];
    });
  }

  // sum (-1)^(n+m) int |q| f~ dkz over |kz| > k, with kz = k cosh(t).
  double evanescent_integral(const detail::ModeSum& sum, const detail::FrequencyPoint& w,
                             const quad::Options& o) const {
    const double gap = d_ - target_.radius - source_.radius;
    const double t_max = std::asinh(c_.evanescent_cutoff / (w.k * gap));
    auto g = [&](double t) {
      const double qa = std::sinh(t), kt = std::cosh(t);
      double v = sum.interaction_evanescent(w, kt, qa);
      v = c_.kz_symmetry ? 2.0 * v : v + sum.interaction_evanescent(w, -kt, qa);
      return w.k * w.k * qa * qa * v;
    };
    std::vector<double> breaks;
    for (double y : {0.1, 1.0, 3.0}) breaks.push_back(std::asinh(y / w.kd));
    return checked("evanescent", w,
                   [&] { return detail::guarded(g, c_.light_line_guard, t_max, breaks, o).value[0]; });
  }

  double pair_integral(const detail::ModeSum& sum, const detail::FrequencyPoint& w, const quad::Options& o) const {
    auto g = [&](double th) {
      const double qt = std::sin(th), kt = std::cos(th);
      double v = sum.pair_source(w, kt, qt);
      v = c_.kz_symmetry ? 2.0 * v : v + sum.pair_source(w, -kt, qt);
      return w.k * w.k * qt * qt * v;
    };
    return checked("pair-source", w, [&] {
      return detail::guarded(g, c_.light_line_guard, 0.5 * kPi, theta_breaks(w.kd), o).value[0];
    });
  }

  // Inner failures are re-thrown with the channel and frequency attached.
  template <class Run>
  static double checked(const char* channel, const detail::FrequencyPoint& w, Run&& run) {
    try {
      return run();
    } catch (const NonConvergenceError& e) {
      const double omega = w.k * kSpeedOfLight;
      throw NonConvergenceError(std::string(e.what()) + " (" + channel + " k_z integral, omega = " +
                                    std::to_string(omega) + " rad/s)",
                                e.diagnostics());
    }
  }

  // Two passes.  A coarse one measures int |integrand| du per channel; the
  // second gives every inner k_z integral an absolute floor so that its error,
  // weighted by the Bose factor, cannot exceed a tenth of the outer target.
  // Without the floor, frequencies with negligible weight but nearly lossless
  // guided-mode poles (conditioning-limited to ~1e-4) stall the inner solver.
  template <class PerOmega>
  ForceValue integrate_omega(PerOmega&& per_omega, double temperature) const {
    const double kt_energy = kBoltzmann * temperature;
    const double scale = kt_energy / kHbar;  // omega = scale * u
    auto run = [&](const quad::Options& outer, auto&& inner_at) {
      auto g = [&](double u) {
        const double weight = 1.0 / std::expm1(u);
        auto v = per_omega(scale * u, inner_at(weight));
        return quad::Vec<2>{v[0] * weight, v[1] * weight};
      };
      return quad::integrate<2>(g, omega_breaks(scale), outer);
    };

    quad::Options coarse;
    coarse.rel_tol = std::max(1e-2, c_.rel_tol);
    coarse.max_subintervals = c_.max_subintervals;
    Inner rough;
    for (auto& o : rough) {
      o = inner_options();
      o.rel_tol = coarse.rel_tol;
      o.l1_fraction = 1.0;
    }
    const auto first = run(coarse, [&](double) -> const Inner& { return rough; });

    quad::Options fine;
    fine.rel_tol = c_.rel_tol;
    fine.max_subintervals = c_.max_subintervals;
    const double span = c_.x_max - kMinU;
    const auto r = run(fine, [&](double weight) {
      Inner o;
      for (int ch = 0; ch < 2; ++ch) {
        o[ch] = inner_options();
        o[ch].abs_tol = 0.1 * c_.rel_tol * first.l1[ch] / (span * weight);
      }
      return o;
    });

    const double pre = kHbar / (2.0 * kPi * kPi) * scale;
    ForceValue f;
    f.propagating = pre * r.value[0];
    f.evanescent = pre * r.value[1];
    f.error = pre * (r.error[0] + r.error[1]);
    return f;
  }

  std::vector<double> omega_breaks(double scale) const {
    // The lower end stays clear of omega = 0, where cylinder functions of the
    // vanishing argument overflow; the omitted sliver is far below tolerance.
    std::vector<double> breaks = {kMinU, c_.x_max};
    for (const auto* m : {&target_.material, &source_.material}) {
      const double width = m->feature_width();
      for (double f : m->feature_frequencies()) {
        const double u = f / scale;
        if (u <= kMinU || u >= c_.x_max) continue;
        breaks.push_back(u);
        // Narrow panels around sharp resonances so the first pass sees them.
        for (double k : {1.0, 5.0, 25.0})
          for (double s : {-1.0, 1.0}) {
            const double ub = (f + s * k * width) / scale;
            if (width > 0.0 && ub > kMinU && ub < c_.x_max) breaks.push_back(ub);
          }
      }
    }
    for (double u : {0.5, 2.0, 5.0, 10.0, 20.0})
      if (u < c_.x_max) breaks.push_back(u);
    return breaks;
  }

  CylinderSpec target_spec_, source_spec_;
  double d_;
  QuadratureControls c_;
  TMatrixProvider target_, source_;
};

/// F^(target)_(source)(T_source): force on `target` from thermal sources in
/// `source` at temperature T_source, positive = repulsion.
inline ForceValue interaction_force(const CylinderSpec& source, const CylinderSpec& target, double t_source,
                                    double d, const QuadratureControls& c = {}) {
  if (t_source < 0.0) throw DomainError("temperature must be >= 0");
  return ForceIntegrator(target, source, d, c).interaction(t_source);
}

/// Pair-source force from sources in `source` at T_source, along the axis
/// pointing from `other` to `source`.
inline ForceValue pair_source_force(const CylinderSpec& source, const CylinderSpec& other, double t_source, double d,
                                    const QuadratureControls& c = {}) {
  if (t_source < 0.0) throw DomainError("temperature must be >= 0");
  return ForceIntegrator(other, source, d, c).pair_source(t_source);
}

/// Self-force on `self` from its own sources at T reflected by `other`:
/// the pair-source force minus the force those sources exert on `other`
/// (which, in the fixed frame, is minus its repulsive-positive value).
inline ForceValue self_force(const CylinderSpec& self, const CylinderSpec& other, double t_self, double d,
                             const QuadratureControls& c = {}) {
  if (t_self == 0.0) return {};
  return pair_source_force(self, other, t_self, d, c) + interaction_force(self, other, t_self, d, c);
}

/// Two cylinders in an environment, plus everything needed to evaluate the
/// total force at any separation.
struct Scenario {
  CylinderSpec one, two;  // temperatures T1, T2 live in the specs
  double t_env = 0.0;
  QuadratureControls controls;
  EquilibriumCurve equilibrium;  // F_eq(T_env), zero by default

  void validate() const {
    one.validate();
    two.validate();
    if (!(t_env >= 0.0) || !std::isfinite(t_env)) throw DomainError("environment temperature must be >= 0");
    controls.validate();
  }
};

/// All pieces of the total force at one separation.  Forces on cylinder j are
/// along j's outward axis (positive = repulsion).
struct ForceBreakdown {
  double d = 0.0;
  ForceValue int_21;  // F^(1)_2(T2): on 1 from sources in 2
  ForceValue int_12;  // F^(2)_1(T1)
  ForceValue pair_1, pair_2;  // F^(1+2)_j(T_j)
  ForceValue self_1, self_2;  // F^(j)_j(T_j)
  ForceValue env_1, env_2;    // sum_j F^(i)_j(T_env), subtracted for cylinder i
  double f_eq = 0.0;
  std::vector<std::string> warnings;

  ForceValue noneq_1() const { return self_1 + int_21 - env_1; }
  ForceValue noneq_2() const { return self_2 + int_12 - env_2; }
  double total_1() const { return f_eq + noneq_1().total(); }
  double total_2() const { return f_eq + noneq_2().total(); }
};

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers.  Each index writes
// only its own slot, so results do not depend on scheduling; the first
// failure in index order is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::future<void>> pool;
    for (unsigned t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, work));
    for (auto& f : pool) f.get();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Same radius and the same dielectric function at a spread of frequencies.
inline bool same_cylinder(const CylinderSpec& a, const CylinderSpec& b) {
  if (a.radius != b.radius || a.material.name() != b.material.name()) return false;
  for (double w = 1e11; w < 1e17; w *= 3.7)
    if (a.material.epsilon(w) != b.material.epsilon(w)) return false;
  return true;
}

enum class Primitive { Interaction, PairSource };

// One primitive evaluation: `from` is the index (1 or 2) of the source cylinder.
struct Job {
  std::size_t point;
  Primitive kind;
  int from;
  double temperature;
  auto key() const { return std::tuple(point, kind, from, temperature); }
  bool operator<(const Job& o) const { return key() < o.key(); }
};

}  // namespace detail

/// Warnings that do not depend on the separation.
inline std::vector<std::string> scenario_warnings(const Scenario& s) {
  std::vector<std::string> w;
  if (s.controls.provider != ProviderKind::Thin) return w;
  const double t = std::max({s.one.temperature, s.two.temperature, s.t_env});
  if (t == 0.0) return w;
  int j = 0;
  for (const auto* c : {&s.one, &s.two}) {
    ++j;
    double worst = 0.0;
    for (double u : {0.5, 1.0, 2.0, 3.0, 5.0}) {  // bulk of the thermal spectrum
      const double omega = u * kBoltzmann * t / kHbar, x = omega * c->radius / kSpeedOfLight;
      worst = std::max({worst, x, std::abs(std::sqrt(c->material.epsilon(omega))) * x});
    }
    if (worst > TMatrixProvider::kThinWarning)
      w.push_back("thin expansion unreliable for cylinder " + std::to_string(j) + ": |sqrt(eps)| omega R / c reaches " +
                  std::to_string(worst) + " in the thermal window; use the full provider");
  }
  return w;
}

inline std::vector<std::string> separation_warnings(const Scenario& s, double d) {
  std::vector<std::string> w;
  if (d < 5.0 * (s.one.radius + s.two.radius))
    w.push_back("one-reflection approximation: d < 5 (R1 + R2)");
  return w;
}

/// Breakdowns at every separation of the grid, in grid order.  Primitive
/// integrals run concurrently (threads = 0: one per hardware thread); each is
/// evaluated once per separation and temperature and zero temperatures are
/// skipped.
inline std::vector<ForceBreakdown> sweep(const Scenario& s, const std::vector<double>& grid, unsigned threads = 0) {
  s.validate();
  for (double d : grid)
    if (!(d > s.one.radius + s.two.radius)) throw DomainError("separation must exceed the sum of the radii");
  const bool mirror = detail::same_cylinder(s.one, s.two);
  const double t1 = s.one.temperature, t2 = s.two.temperature, te = s.t_env;

  using detail::Job;
  using detail::Primitive;
  auto canonical = [&](Job j) {
    if (mirror) j.from = 1;
    return j;
  };
  std::map<Job, ForceValue> cache;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (auto kind : {Primitive::Interaction, Primitive::PairSource}) {
      for (double t : {t1, te})
        if (t > 0.0) cache[canonical({i, kind, 1, t})] = {};
      for (double t : {t2, te})
        if (t > 0.0) cache[canonical({i, kind, 2, t})] = {};
    }

  std::vector<std::map<Job, ForceValue>::iterator> jobs;
  for (auto it = cache.begin(); it != cache.end(); ++it) jobs.push_back(it);
  detail::parallel_for(
      jobs.size(),
      [&](std::size_t k) {
        const Job& j = jobs[k]->first;
        const double d = grid[j.point];
        const CylinderSpec& src = j.from == 1 ? s.one : s.two;
        const CylinderSpec& oth = j.from == 1 ? s.two : s.one;
        jobs[k]->second = j.kind == Primitive::Interaction ? interaction_force(src, oth, j.temperature, d, s.controls)
                                                          : pair_source_force(src, oth, j.temperature, d, s.controls);
      },
      threads);

  auto get = [&](std::size_t i, Primitive kind, int from, double t) {
    if (t == 0.0) return ForceValue{};
    return cache.at(canonical({i, kind, from, t}));
  };
  const auto common = scenario_warnings(s);
  std::vector<ForceBreakdown> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ForceBreakdown b;
    b.d = grid[i];
    b.int_21 = get(i, Primitive::Interaction, 2, t2);
    b.int_12 = get(i, Primitive::Interaction, 1, t1);
    b.pair_1 = get(i, Primitive::PairSource, 1, t1);
    b.pair_2 = get(i, Primitive::PairSource, 2, t2);
    // self = pair-source minus the force the same sources put on the other
    // cylinder, which is -int in this cylinder's frame
    b.self_1 = b.pair_1 + b.int_12;
    b.self_2 = b.pair_2 + b.int_21;
    const ForceValue int_21_env = get(i, Primitive::Interaction, 2, te), int_12_env = get(i, Primitive::Interaction, 1, te);
    b.env_1 = get(i, Primitive::PairSource, 1, te) + int_12_env + int_21_env;
    b.env_2 = get(i, Primitive::PairSource, 2, te) + int_21_env + int_12_env;
    b.f_eq = s.equilibrium(b.d);
    b.warnings = common;
    for (auto& w : separation_warnings(s, b.d)) b.warnings.push_back(w);
    out.push_back(std::move(b));
  }
  return out;
}

/// Total force breakdown at one separation.
inline ForceBreakdown total_force(const Scenario& s, double d, unsigned threads = 0) { return sweep(s, {d}, threads).front(); }

}  // namespace neqc
