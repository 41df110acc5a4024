#pragma once

// Equilibrium force F_eq(d), supplied from outside: a two-column CSV
// (d_m,F_eq_N_per_m) interpolated linearly in log d, or one of two analytic
// stand-ins anchored to a single (d, F) point.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "neqcasimir/errors.hpp"

namespace neqc {

class EquilibriumCurve {
 public:
  /// F_eq = 0 everywhere.
  EquilibriumCurve() : label_("zero") {}

  /// Tabulated curve; d strictly increasing.
  static EquilibriumCurve table(std::vector<double> d, std::vector<double> f, std::string label = "table") {
    if (d.size() != f.size() || d.size() < 2) throw SchemaError("equilibrium table needs at least two rows");
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!(d[i] > 0.0) || !std::isfinite(f[i])) throw SchemaError("equilibrium table: bad row " + std::to_string(i + 1));
      if (i > 0 && !(d[i] > d[i - 1])) throw SchemaError("equilibrium table: d must be strictly increasing");
    }
    EquilibriumCurve c;
    c.label_ = std::move(label);
    c.d_ = std::move(d);
    c.f_ = std::move(f);
    return c;
  }

  static EquilibriumCurve load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open equilibrium file " + path);
    std::string line;
    std::vector<double> d, f;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      if (!header) {
        if (line.rfind("d_m,F_eq_N_per_m", 0) != 0)
          throw SchemaError(path + ":" + std::to_string(lineno) + ": expected header d_m,F_eq_N_per_m");
        header = true;
        continue;
      }
      std::istringstream row(line);
      double a = 0.0, b = 0.0;
      char comma = 0;
      if (!(row >> a >> comma >> b) || comma != ',')
        throw SchemaError(path + ":" + std::to_string(lineno) + ": expected two numbers");
      d.push_back(a);
      f.push_back(b);
    }
    return table(std::move(d), std::move(f), path);
  }

  /// F = F0 (d0/d)^p.
  static EquilibriumCurve power_law(double d0, double f0, double p) {
    check_anchor(d0, f0);
    EquilibriumCurve c;
    c.label_ = "power law d^-" + trim(p);
    c.model_ = [=](double d) { return f0 * std::pow(d0 / d, p); };
    return c;
  }

  /// F = F0 (d0/d)^4 ln(d0/R) / ln(d/R), the thin-wire form.
  static EquilibriumCurve wire_log(double d0, double f0, double radius) {
    check_anchor(d0, f0);
    if (!(radius > 0.0 && d0 > radius)) throw DomainError("wire_log: need 0 < R < d0");
    EquilibriumCurve c;
    c.label_ = "d^-4/ln(d/R)";
    c.model_ = [=](double d) {
      if (!(d > radius)) throw DomainError("wire_log: d must exceed R");
      return f0 * std::pow(d0 / d, 4) * std::log(d0 / radius) / std::log(d / radius);
    };
    return c;
  }

  /// Allow tables to be evaluated outside their range (log-log end slopes).
  EquilibriumCurve& allow_extrapolation(bool on = true) {
    extrapolate_ = on;
    return *this;
  }

  const std::string& label() const { return label_; }
  bool is_zero() const { return !model_ && d_.empty(); }
  bool extrapolates() const { return extrapolate_; }
  // tabulated rows, empty for analytic curves
  const std::vector<double>& table_d() const { return d_; }
  const std::vector<double>& table_f() const { return f_; }

  double operator()(double d) const {
    if (!(d > 0.0)) throw DomainError("equilibrium: d must be positive");
    if (model_) return model_(d);
    if (d_.empty()) return 0.0;
    if (d < d_.front() || d > d_.back()) {
      if (!extrapolate_)
        throw InterpolationError("equilibrium data covers [" + trim(d_.front()) + ", " + trim(d_.back()) +
                                 "] m, requested " + trim(d));
      return extrapolated(d);
    }
    const auto hi = std::max<std::ptrdiff_t>(1, std::lower_bound(d_.begin(), d_.end(), d) - d_.begin());
    const auto lo = hi - 1;
    const double s = std::log(d / d_[lo]) / std::log(d_[hi] / d_[lo]);
    return f_[lo] + s * (f_[hi] - f_[lo]);
  }

  /// Rows sampled on a grid, for writing stand-ins to disk.
  std::string to_csv(const std::vector<double>& grid) const {
    std::ostringstream o;
    o.precision(10);
    o << "d_m,F_eq_N_per_m\n";
    for (double d : grid) o << d << ',' << (*this)(d) << '\n';
    return o.str();
  }

 private:
  static void check_anchor(double d0, double f0) {
    if (!(d0 > 0.0) || !std::isfinite(f0)) throw DomainError("equilibrium anchor must have d0 > 0");
  }
  static std::string trim(double v) {
    std::ostringstream o;
    o << v;
    return o.str();
  }
  // log-log slope of the end segment; falls back to constant if signs differ
  double extrapolated(double d) const {
    const bool low = d < d_.front();
    const std::size_t a = low ? 0 : d_.size() - 2, b = a + 1;
    if (f_[a] * f_[b] <= 0.0) return low ? f_[a] : f_[b];
    const double p = std::log(f_[b] / f_[a]) / std::log(d_[b] / d_[a]);
    const std::size_t ref = low ? a : b;
    return f_[ref] * std::pow(d / d_[ref], p);
  }

  std::string label_;
  std::vector<double> d_, f_;
  std::function<double(double)> model_;
  bool extrapolate_ = false;
};

}  // namespace neqc
