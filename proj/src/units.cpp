#include "qlat/units.hpp"

#include <cmath>

namespace qlat {

void validate(const LatticeConfig& cfg) {
  if (!(cfg.period > 0.0) || !std::isfinite(cfg.period))
    throw ConfigError("lattice period must be positive");
  if (std::abs(cfg.dipole.norm() - 1.0) > 1e-12)
    throw ConfigError("dipole orientation must be a unit vector");
  if (!(cfg.omega0_over_gamma0 > 0.0) || !std::isfinite(cfg.omega0_over_gamma0))
    throw ConfigError("omega0/gamma0 must be positive");
}

void validate(const DriveConfig& drive) {
  if (!std::isfinite(drive.omega.real()) || !std::isfinite(drive.omega.imag()) ||
      !std::isfinite(drive.delta))
    throw ConfigError("drive parameters must be finite");
  if (drive.k_laser.norm() > 1.0 + 1e-12)
    throw ConfigError("laser wavevector must lie inside the light circle");
}

UnitContext natural_units(const LatticeConfig& cfg) {
  validate(cfg);
  // gamma0 = omega0^3 mu^2 / (3 pi) in these units, with omega0 = k0 = 2 pi.
  return {k0, cfg.omega0_over_gamma0, 3.0 / (8.0 * pi * pi), 3.0 * pi / k0};
}

}  // namespace qlat
