#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature for vector-valued
// integrands.  The panel with the largest error estimate is bisected until the
// summed estimate meets the tolerance.  Panel order and the final summation
// order depend only on the integrand values, so results are reproducible
// bit for bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "neqcasimir/errors.hpp"

namespace neqc::quad {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  // Tolerance floor as a fraction of int |f|; guards integrals that cancel
  // to nearly zero.  0 disables it.
  double l1_fraction = 0.0;
  int max_subintervals = 4000;
};

template <std::size_t N>
struct Result {
  Vec<N> value{};
  Vec<N> error{};
  Vec<N> l1{};  // int |f_i|
  int evaluations = 0;
  int subintervals = 0;
  // Some panels stopped improving under bisection while their values had
  // settled (integrand noise); their error stays in `error`.
  bool roundoff_limited = false;

  double total() const {
    double s = 0.0;
    for (double v : value) s += v;
    return s;
  }
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a = 0.0, b = 0.0;
  Vec<N> value{}, error{}, l1{};
  double err_norm = 0.0;
};

template <std::size_t N, class F>
Panel<N> gk15(F& f, double a, double b) {
  Panel<N> p;
  p.a = a;
  p.b = b;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Vec<N> fc = f(c);
  Vec<N> kron{}, gauss{}, absk{}, asc{};
  std::array<Vec<N>, 15> vals;
  vals[7] = fc;
  for (std::size_t i = 0; i < N; ++i) {
    kron[i] = kWgk[7] * fc[i];
    gauss[i] = kWg[3] * fc[i];
    absk[i] = kWgk[7] * std::abs(fc[i]);
  }
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const Vec<N> f1 = f(c - dx), f2 = f(c + dx);
    vals[j] = f1;
    vals[14 - j] = f2;
    for (std::size_t i = 0; i < N; ++i) {
      kron[i] += kWgk[j] * (f1[i] + f2[i]);
      absk[i] += kWgk[j] * (std::abs(f1[i]) + std::abs(f2[i]));
      if (j % 2 == 1) gauss[i] += kWg[j / 2] * (f1[i] + f2[i]);
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double mean = 0.5 * kron[i];
    double s = kWgk[7] * std::abs(fc[i] - mean);
    for (int j = 0; j < 7; ++j) s += kWgk[j] * (std::abs(vals[j][i] - mean) + std::abs(vals[14 - j][i] - mean));
    asc[i] = s * std::abs(h);
    double err = std::abs((kron[i] - gauss[i]) * h);
    if (asc[i] != 0.0 && err != 0.0) err = asc[i] * std::min(1.0, std::pow(200.0 * err / asc[i], 1.5));
    p.value[i] = kron[i] * h;
    p.error[i] = err;
    p.l1[i] = absk[i] * std::abs(h);
    p.err_norm += err;
  }
  return p;
}

template <std::size_t N>
struct ByError {
  bool operator()(const Panel<N>& x, const Panel<N>& y) const {
    if (x.err_norm != y.err_norm) return x.err_norm < y.err_norm;
    return x.a > y.a;  // deterministic tie-break
  }
};

/// Pairwise summation over panels sorted by position.
template <std::size_t N, class Get>
Vec<N> pairwise(const std::vector<Panel<N>>& ps, std::size_t lo, std::size_t hi, Get get) {
  if (hi - lo == 1) return get(ps[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  Vec<N> l = pairwise<N>(ps, lo, mid, get), r = pairwise<N>(ps, mid, hi, get);
  for (std::size_t i = 0; i < N; ++i) l[i] += r[i];
  return l;
}

}  // namespace detail

/// Integrates f over [points.front(), points.back()], starting from the
/// panels delimited by the (sorted) breakpoints.
template <std::size_t N, class F>
Result<N> integrate(F&& f, std::vector<double> points, const Options& opt = {}) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Result<N> res;
  if (points.size() < 2) return res;
  std::priority_queue<detail::Panel<N>, std::vector<detail::Panel<N>>, detail::ByError<N>> heap;
  auto panel = [&](double a, double b) {
    auto p = detail::gk15<N>(f, a, b);
    if (!std::isfinite(p.err_norm)) {
      NonConvergenceError::Diagnostics d;
      d.lower = a;
      d.upper = b;
      d.worst_error = d.total_error = p.err_norm;
      throw NonConvergenceError("non-finite integrand value", d);
    }
    return p;
  };
  for (std::size_t k = 0; k + 1 < points.size(); ++k) heap.push(panel(points[k], points[k + 1]));
  res.evaluations = 15 * static_cast<int>(points.size() - 1);

  auto totals = [&](Vec<N>& val, Vec<N>& l1, double& err) {
    val = {};
    l1 = {};
    err = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      const auto& p = copy.top();
      for (std::size_t i = 0; i < N; ++i) {
        val[i] += p.value[i];
        l1[i] += p.l1[i];
      }
      err += p.err_norm;
      copy.pop();
    }
  };
  auto target = [&](const Vec<N>& val, const Vec<N>& l1) {
    double v = 0.0, m = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      v += std::abs(val[i]);
      m += l1[i];
    }
    return std::max(opt.abs_tol, opt.rel_tol * std::max(v, opt.l1_fraction * m));
  };

  // Panels whose split neither changed the value nor reduced the error are
  // noise-limited; they are set aside and never split again.
  std::vector<detail::Panel<N>> frozen;
  double frozen_err = 0.0;
  Vec<N> frozen_val{}, frozen_l1{};

  // Running sums are refreshed from scratch every few steps to avoid drift.
  Vec<N> val{}, l1{};
  double err = 0.0;
  totals(val, l1, err);
  int since_refresh = 0;
  auto with_frozen = [&](const Vec<N>& v) {
    Vec<N> out = v;
    for (std::size_t i = 0; i < N; ++i) out[i] += frozen_val[i];
    return out;
  };
  auto frozen_l1_total = [&](const Vec<N>& v) {
    Vec<N> out = v;
    for (std::size_t i = 0; i < N; ++i) out[i] += frozen_l1[i];
    return out;
  };
  // With noise-limited panels present, the rest must still reach half the
  // target on its own.
  auto goal = [&] {
    const double t = target(with_frozen(val), frozen_l1_total(l1));
    return std::max(t - frozen_err, 0.5 * t);
  };
  while (!heap.empty() && err > goal()) {
    if (static_cast<int>(heap.size() + frozen.size()) >= opt.max_subintervals) {
      const auto& w = heap.top();
      NonConvergenceError::Diagnostics d;
      d.lower = w.a;
      d.upper = w.b;
      d.worst_error = w.err_norm;
      d.total_error = err + frozen_err;
      d.tolerance = target(with_frozen(val), frozen_l1_total(l1));
      d.subintervals = static_cast<int>(heap.size() + frozen.size());
      throw NonConvergenceError("adaptive quadrature did not converge", d);
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel can no longer be split in double precision; accept it.
      heap.push(worst);
      break;
    }
    auto left = panel(worst.a, mid), right = panel(mid, worst.b);
    res.evaluations += 30;
    double dv = 0.0, av = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      dv += std::abs(left.value[i] + right.value[i] - worst.value[i]);
      av += std::abs(left.value[i] + right.value[i]);
    }
    if (dv <= 1e-5 * av && left.err_norm + right.err_norm >= 0.99 * worst.err_norm && worst.err_norm > 0.0) {
      for (std::size_t i = 0; i < N; ++i) {
        val[i] -= worst.value[i];
        l1[i] -= worst.l1[i];
      }
      err -= worst.err_norm;
      for (auto* p : {&left, &right}) {
        for (std::size_t i = 0; i < N; ++i) {
          frozen_val[i] += p->value[i];
          frozen_l1[i] += p->l1[i];
        }
        frozen_err += p->err_norm;
        frozen.push_back(std::move(*p));
      }
      res.roundoff_limited = true;
      continue;
    }
    for (std::size_t i = 0; i < N; ++i) {
      val[i] += left.value[i] + right.value[i] - worst.value[i];
      l1[i] += left.l1[i] + right.l1[i] - worst.l1[i];
    }
    err += left.err_norm + right.err_norm - worst.err_norm;
    heap.push(std::move(left));
    heap.push(std::move(right));
    if (++since_refresh == 64) {
      totals(val, l1, err);
      since_refresh = 0;
    }
  }

  std::vector<detail::Panel<N>> panels = std::move(frozen);
  panels.reserve(panels.size() + heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  res.value = detail::pairwise<N>(panels, 0, panels.size(), [](const auto& p) { return p.value; });
  res.error = detail::pairwise<N>(panels, 0, panels.size(), [](const auto& p) { return p.error; });
  res.l1 = detail::pairwise<N>(panels, 0, panels.size(), [](const auto& p) { return p.l1; });
  res.subintervals = static_cast<int>(panels.size());
  return res;
}

/// Scalar convenience wrapper.
template <class F>
Result<1> integrate_scalar(F&& f, std::vector<double> points, const Options& opt = {}) {
  auto g = [&f](double x) { return Vec<1>{f(x)}; };
  return integrate<1>(g, std::move(points), opt);
}

}  // namespace neqc::quad
