#pragma once

#include <stdexcept>
#include <string>

#include "qlat/types.hpp"

namespace qlat {

// Thrown for invalid user-supplied parameters.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a numerical routine cannot deliver the requested accuracy.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LatticeConfig {
  double period = 0.5;               // l / lambda0
  Vec3 dipole = Vec3::UnitX();       // unit vector
  double omega0_over_gamma0 = 1e6;
};

struct DriveConfig {
  cdouble omega{1.0, 0.0};  // driving rate, gamma0
  double delta = 0.0;       // omega_L - omega0, gamma0
  Vec2 k_laser = Vec2::Zero();  // in-plane, units of 2 pi / lambda0

  Vec2 k_laser_rad() const { return k0 * k_laser; }
};

struct UnitContext {
  double k0;        // rad / lambda0
  double omega0;    // gamma0
  double mu2;       // mu^2 with hbar = eps0 = c = 1, gamma0 = lambda0 = 1 scale
  double coupling;  // 3 pi gamma0 c / omega0 in gamma0 * lambda0
};

void validate(const LatticeConfig& cfg);
void validate(const DriveConfig& drive);

UnitContext natural_units(const LatticeConfig& cfg);

struct Dispersion {
  double delta_k;
  double gamma_k;
};

// Delta_k = Delta + 3/2 Re G, gamma_k = 1 + 3 Im G.
inline Dispersion dispersion_from_gbar(cdouble g_bar, double delta = 0.0) {
  return {delta + 1.5 * g_bar.real(), 1.0 + 3.0 * g_bar.imag()};
}

}  // namespace qlat
