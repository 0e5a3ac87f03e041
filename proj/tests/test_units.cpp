#include "doctest.h"
#include "qlat/units.hpp"

using namespace qlat;

TEST_CASE("natural units") {
  const UnitContext u = natural_units(LatticeConfig{});
  CHECK(u.k0 == doctest::Approx(2.0 * pi));
  // gamma0 = omega0^3 mu^2 / (3 pi) = 1 with omega0 = k0.
  CHECK(u.k0 * u.k0 * u.k0 * u.mu2 / (3.0 * pi) == doctest::Approx(1.0).epsilon(1e-15));
  // omega0^2 mu^2 = 3 pi gamma0 c / omega0
  CHECK(u.k0 * u.k0 * u.mu2 == doctest::Approx(u.coupling).epsilon(1e-15));
}

TEST_CASE("dispersion from the lattice sum") {
  // gamma_k - gamma0 = 3 Im G
  const Dispersion d = dispersion_from_gbar({0.2, -0.1}, 0.3);
  CHECK(d.gamma_k - 1.0 == doctest::Approx(3.0 * -0.1));
  CHECK(d.delta_k == doctest::Approx(0.3 + 1.5 * 0.2));
  CHECK(dispersion_from_gbar({0.7, 0.0}).gamma_k == 1.0);
  CHECK(dispersion_from_gbar({0.0, 0.4}, 0.0).delta_k == 0.0);
  const Dispersion z = dispersion_from_gbar({0.0, 0.0}, -1.25);
  CHECK(z.delta_k == -1.25);
  CHECK(z.gamma_k == 1.0);
}

TEST_CASE("config validation") {
  LatticeConfig c;
  c.period = 0.0;
  CHECK_THROWS_AS(natural_units(c), ConfigError);
  c = {};
  c.dipole = Vec3(1.0, 1e-3, 0.0);
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.omega0_over_gamma0 = -1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  DriveConfig d;
  d.k_laser = Vec2(0.8, 0.7);
  CHECK_THROWS_AS(validate(d), ConfigError);
  d.k_laser = Vec2(0.6, 0.8);
  CHECK_NOTHROW(validate(d));
}

TEST_CASE("reduced quantities do not depend on omega0 / gamma0") {
  LatticeConfig a, b;
  b.omega0_over_gamma0 = 1e9;
  const UnitContext ua = natural_units(a), ub = natural_units(b);
  CHECK(ua.k0 == ub.k0);
  CHECK(ua.mu2 == ub.mu2);
  CHECK(ua.coupling == ub.coupling);
}
