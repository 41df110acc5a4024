#pragma once

#include <numbers>

// SI constants (CODATA 2018 exact values where defined) and unit helpers.
namespace neqc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kElectronVolt = 1.602176634e-19;  // J
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kVacuumPermeability = 1.25663706212e-6;  // N/A^2
inline constexpr double kStandardGravity = 9.80665;    // m/s^2
inline constexpr double kEulerGamma = std::numbers::egamma;

namespace units {

inline constexpr double kMicrometre = 1e-6;
inline constexpr double kNanometre = 1e-9;

/// Photon energy in eV -> angular frequency in rad/s.
constexpr double ev_to_rad_per_s(double ev) { return ev * kElectronVolt / kHbar; }
constexpr double rad_per_s_to_ev(double omega) { return omega * kHbar / kElectronVolt; }

/// Vacuum wavelength in m <-> angular frequency in rad/s.
constexpr double wavelength_to_rad_per_s(double lambda) { return 2.0 * kPi * kSpeedOfLight / lambda; }
constexpr double rad_per_s_to_wavelength(double omega) { return 2.0 * kPi * kSpeedOfLight / omega; }

}  // namespace units
}  // namespace neqc
