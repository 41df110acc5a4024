#pragma once

// Dielectric response of the cylinder media.  All models are evaluated in SI
// units (omega in rad/s) with the exp(-i omega t) convention, so passive media
// have Im eps >= 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "neqcasimir/constants.hpp"
#include "neqcasimir/errors.hpp"

namespace neqc {

using Complex = std::complex<double>;

struct Vacuum {};

struct ConstantPermittivity {
  Complex eps{1.0, 0.0};
};

/// eps_inf (w^2 - w_LO^2 + i w g) / (w^2 - w_TO^2 + i w g)
struct Lorentz {
  double eps_inf = 1.0;
  double omega_lo = 0.0;
  double omega_to = 0.0;
  double gamma = 0.0;
};

struct ConductivityTerm {
  double sigma = 0.0;     // 1/(ohm m)
  double lambda_r = 0.0;  // m
};

/// 1 - lambda^2/(2 pi c eps0) sum sigma_q / (lambda_rq + i lambda), lambda the
/// vacuum wavelength.  The sign of i lambda is chosen for exp(-i omega t).
struct ConductivitySum {
  std::vector<ConductivityTerm> terms;
};

/// eps0 + i lambda_in omega / c; only meaningful well below the first resonance.
struct LowFrequencyExpansion {
  double eps0 = 1.0;
  double lambda_in = 0.0;
};

class DielectricModel {
 public:
  using Variant = std::variant<Vacuum, ConstantPermittivity, Lorentz, ConductivitySum, LowFrequencyExpansion>;

  DielectricModel() = default;
  DielectricModel(Variant v, std::string name = {}) : model_(std::move(v)), name_(std::move(name)) { validate(); }

  static DielectricModel vacuum() { return DielectricModel(Vacuum{}, "vacuum"); }
  static DielectricModel constant(Complex eps) { return DielectricModel(ConstantPermittivity{eps}, "constant"); }

  const Variant& variant() const noexcept { return model_; }
  const std::string& name() const noexcept { return name_; }
  bool is_vacuum() const noexcept {
    if (std::holds_alternative<Vacuum>(model_)) return true;
    if (auto* c = std::get_if<ConstantPermittivity>(&model_)) return c->eps == Complex(1.0, 0.0);
    return false;
  }

  Complex epsilon(double omega) const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("epsilon: omega must be positive and finite");
    return std::visit([omega](const auto& m) { return eval(m, omega); }, model_);
  }

  /// Frequencies where the response has sharp structure; used as quadrature
  /// breakpoints.  Includes the eps = -1 surface resonance for Lorentz media.
  std::vector<double> feature_frequencies() const {
    std::vector<double> out;
    if (auto* l = std::get_if<Lorentz>(&model_)) {
      out = {l->omega_to, l->omega_lo};
      out.push_back(std::sqrt((l->eps_inf * l->omega_lo * l->omega_lo + l->omega_to * l->omega_to) /
                              (l->eps_inf + 1.0)));
    } else if (auto* s = std::get_if<ConductivitySum>(&model_)) {
      for (const auto& t : s->terms) out.push_back(units::wavelength_to_rad_per_s(t.lambda_r));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Linewidth of the sharpest feature (rad/s), or 0 if none.
  double feature_width() const {
    if (auto* l = std::get_if<Lorentz>(&model_)) return l->gamma;
    return 0.0;
  }

 private:
  static Complex eval(const Vacuum&, double) { return {1.0, 0.0}; }
  static Complex eval(const ConstantPermittivity& m, double) { return m.eps; }
  static Complex eval(const Lorentz& m, double w) {
    const Complex iwg(0.0, w * m.gamma);
    return m.eps_inf * (w * w - m.omega_lo * m.omega_lo + iwg) / (w * w - m.omega_to * m.omega_to + iwg);
  }
  static Complex eval(const ConductivitySum& m, double w) {
    const double lambda = units::rad_per_s_to_wavelength(w);
    Complex sum = 0.0;
    for (const auto& t : m.terms) sum += t.sigma / Complex(t.lambda_r, lambda);
    return 1.0 - lambda * lambda / (2.0 * kPi * kSpeedOfLight * kVacuumPermittivity) * sum;
  }
  static Complex eval(const LowFrequencyExpansion& m, double w) {
    return {m.eps0, m.lambda_in * w / kSpeedOfLight};
  }

  void validate() const {
    std::visit([](const auto& m) { check(m); }, model_);
  }
  static void check(const Vacuum&) {}
  static void check(const Lorentz& l) {
    if (!(l.omega_lo > l.omega_to && l.omega_to > 0.0 && l.gamma > 0.0 && l.eps_inf > 0.0))
      throw DomainError("Lorentz model needs omega_LO > omega_TO > 0, gamma > 0, eps_inf > 0");
  }
  static void check(const ConductivitySum& s) {
    if (s.terms.empty()) throw DomainError("conductivity sum without terms");
    for (const auto& t : s.terms)
      if (!(t.sigma > 0.0 && t.lambda_r > 0.0)) throw DomainError("conductivity terms need sigma > 0, lambda_r > 0");
  }
  static void check(const LowFrequencyExpansion& f) {
    if (!(f.eps0 >= 1.0 && f.lambda_in >= 0.0)) throw DomainError("low-frequency expansion needs eps0 >= 1, lambda_in >= 0");
  }
  static void check(const ConstantPermittivity& c) {
    if (!std::isfinite(c.eps.real()) || !std::isfinite(c.eps.imag()) || c.eps.imag() < 0.0)
      throw DomainError("constant permittivity must be finite with Im eps >= 0");
  }

  Variant model_ = Vacuum{};
  std::string name_ = "vacuum";
};

struct CylinderSpec {
  double radius = 0.0;  // m
  DielectricModel material;
  double temperature = 0.0;  // K

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("cylinder radius must be positive");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw DomainError("temperature must be >= 0");
  }
};

inline Complex epsilon(const DielectricModel& model, double omega) { return model.epsilon(omega); }

/// hbar c / (k_B T)
inline double thermal_wavelength(double temperature) {
  if (!(temperature > 0.0)) throw DomainError("thermal_wavelength: T must be positive");
  return kHbar * kSpeedOfLight / (kBoltzmann * temperature);
}

/// c / (omega Im sqrt(eps)); +inf for lossless media.
inline double skin_depth(Complex eps, double omega) {
  if (!(omega > 0.0)) throw DomainError("skin_depth: omega must be positive");
  const double im = std::sqrt(eps).imag();
  if (!(im > 0.0)) return std::numeric_limits<double>::infinity();
  return kSpeedOfLight / (im * omega);
}

inline double skin_depth(const DielectricModel& model, double omega) { return skin_depth(model.epsilon(omega), omega); }

/// First-order expansion eps(0) + i lambda_in omega / c of a model that has
/// one.  Conductors diverge at omega -> 0 and are rejected.
inline LowFrequencyExpansion low_frequency_fit(const DielectricModel& model) {
  const auto& v = model.variant();
  if (std::holds_alternative<Vacuum>(v)) return {1.0, 0.0};
  if (auto* f = std::get_if<LowFrequencyExpansion>(&v)) return *f;
  if (auto* c = std::get_if<ConstantPermittivity>(&v)) {
    if (c->eps.imag() != 0.0) throw DomainError("low_frequency_fit: lossy constant has no regular expansion");
    return {c->eps.real(), 0.0};
  }
  if (auto* l = std::get_if<Lorentz>(&v)) {
    const double wl2 = l->omega_lo * l->omega_lo, wt2 = l->omega_to * l->omega_to;
    const double eps0 = l->eps_inf * wl2 / wt2;
    return {eps0, kSpeedOfLight * eps0 * l->gamma * (1.0 / wt2 - 1.0 / wl2)};
  }
  throw DomainError("low_frequency_fit: model has no regular expansion at omega -> 0");
}

/// Vacuum wavelength of the lowest resonance, or +inf if the model has none.
inline double lowest_resonance_wavelength(const DielectricModel& model) {
  const auto f = model.feature_frequencies();
  if (f.empty()) return std::numeric_limits<double>::infinity();
  return units::rad_per_s_to_wavelength(f.front());
}

// ---- JSON material files ------------------------------------------------
//
// {"name": "...", "model": "lorentz", "parameters": {...}, "units": {...}}
// Every dimensional parameter must have a unit entry.

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) throw SchemaError(where + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

inline std::string unit_of(const nlohmann::json& units, const std::string& key, const std::string& where) {
  if (!units.is_object() || !units.contains(key) || !units.at(key).is_string())
    throw SchemaError(where + ": missing unit for '" + key + "'");
  return units.at(key).get<std::string>();
}

inline double to_rad_per_s(double v, const std::string& unit, const std::string& where) {
  if (unit == "rad/s") return v;
  if (unit == "eV") return units::ev_to_rad_per_s(v);
  if (unit == "meV") return units::ev_to_rad_per_s(1e-3 * v);
  throw SchemaError(where + ": unknown frequency unit '" + unit + "'");
}

inline double to_metre(double v, const std::string& unit, const std::string& where) {
  if (unit == "m") return v;
  if (unit == "um") return v * units::kMicrometre;
  if (unit == "nm") return v * units::kNanometre;
  throw SchemaError(where + ": unknown length unit '" + unit + "'");
}

inline double to_siemens_per_metre(double v, const std::string& unit, const std::string& where) {
  if (unit == "S/m" || unit == "1/(ohm m)") return v;
  throw SchemaError(where + ": unknown conductivity unit '" + unit + "'");
}

}  // namespace detail

inline DielectricModel material_from_json(const nlohmann::json& j, const std::string& where = "material") {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  if (!j.contains("model") || !j.at("model").is_string()) throw SchemaError(where + ": missing string field 'model'");
  const std::string model = j.at("model").get<std::string>();
  const std::string name = j.value("name", model);
  const nlohmann::json params = j.value("parameters", nlohmann::json::object());
  const nlohmann::json u = j.value("units", nlohmann::json::object());
  const std::string at = where + " '" + name + "'";
  using detail::json_number;
  using detail::unit_of;
  try {
    if (model == "vacuum") return DielectricModel(Vacuum{}, name);
    if (model == "constant")
      return DielectricModel(ConstantPermittivity{{json_number(params, "eps_re", at), params.value("eps_im", 0.0)}}, name);
    if (model == "lorentz") {
      Lorentz l;
      l.eps_inf = json_number(params, "eps_inf", at);
      for (auto [key, dst] : {std::pair{"omega_lo", &l.omega_lo}, {"omega_to", &l.omega_to}, {"gamma", &l.gamma}})
        *dst = detail::to_rad_per_s(json_number(params, key, at), unit_of(u, key, at), at);
      return DielectricModel(l, name);
    }
    if (model == "conductivity_sum") {
      if (!params.contains("terms") || !params.at("terms").is_array())
        throw SchemaError(at + ": 'terms' must be an array");
      ConductivitySum s;
      const std::string su = unit_of(u, "sigma", at), lu = unit_of(u, "lambda_r", at);
      for (const auto& t : params.at("terms"))
        s.terms.push_back({detail::to_siemens_per_metre(json_number(t, "sigma", at), su, at),
                           detail::to_metre(json_number(t, "lambda_r", at), lu, at)});
      return DielectricModel(s, name);
    }
    if (model == "low_frequency") {
      return DielectricModel(
          LowFrequencyExpansion{json_number(params, "eps0", at),
                                detail::to_metre(json_number(params, "lambda_in", at), unit_of(u, "lambda_in", at), at)},
          name);
    }
  } catch (const DomainError& e) {
    throw SchemaError(at + ": " + e.what());
  }
  throw SchemaError(at + ": unknown model '" + model + "'");
}

inline DielectricModel load_material(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open material file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return material_from_json(j, path);
}

/// Parameter sets used in the worked examples.
inline DielectricModel silicon_carbide() {
  return DielectricModel(Lorentz{6.7, units::ev_to_rad_per_s(0.12), units::ev_to_rad_per_s(0.098),
                                 units::ev_to_rad_per_s(5.88e-4)},
                         "SiC");
}

inline DielectricModel tungsten_2400K() {
  return DielectricModel(ConductivitySum{{{1.19e6, 3.66e-6}, {0.25e6, 0.36e-6}}}, "W (2400 K fit)");
}

}  // namespace neqc
