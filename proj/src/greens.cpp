#include "qlat/greens.hpp"

namespace qlat {

PairCoupling pair_coupling(const Vec3& separation, const LatticeConfig& cfg) {
  const UnitContext u = natural_units(cfg);
  PairCoupling p;
  p.separation = separation;
  if (separation.norm() == 0.0) {
    p.self = true;
    p.gamma = 1.0;
    return p;
  }
  const cdouble gp = projected_green(separation, u.k0, cfg.dipole);
  p.g = -u.coupling * gp.real();
  p.gamma = 2.0 * u.coupling * gp.imag();
  return p;
}

}  // namespace qlat
