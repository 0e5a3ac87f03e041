#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qlat/lattice_sum.hpp"
#include "qlat/observables.hpp"

using namespace qlat;

TEST_CASE("coherent and incoherent parts add up") {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const cdouble w(u(rng), u(rng));
    const double delta = u(rng);
    const PopulationSplit p = population_per_emitter(w, delta);
    CHECK(p.coh + p.incoh == doctest::Approx(p.total).epsilon(1e-14));
    CHECK(p.coh >= 0.0);
    CHECK(p.incoh >= 0.0);
    CHECK(p.total < 0.5);
    CHECK(p.coh <= 0.125 + 1e-15);
  }
}

TEST_CASE("reference populations") {
  const PopulationSplit p = population_per_emitter(1.0, 0.0);
  CHECK(p.total == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(p.coh == doctest::Approx(4.0 / 81.0).epsilon(1e-15));
  CHECK(p.incoh == doctest::Approx(32.0 / 81.0).epsilon(1e-15));
  // coherent part peaks at x = (1 + 4 Delta^2) / 8
  for (double delta : {0.0, 0.7}) {
    const double xs = (1.0 + 4.0 * delta * delta) / 8.0;
    CHECK(population_per_emitter(std::sqrt(xs), delta).coh == doctest::Approx(0.125).epsilon(1e-14));
  }
  CHECK(population_per_emitter(1e4, 0.0).total == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(classical_population(cdouble(0.3, 0.4), 0.0, 1.0) == doctest::Approx(4.0 * 0.25));
}

TEST_CASE("correlators are consistent with the populations") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const cdouble w(u(rng), u(rng));
    const double delta = u(rng);
    const CorrelatorSet c = correlators(w, delta);
    const PopulationSplit p = population_per_emitter(w, delta);
    CHECK(c.pop_ss == doctest::Approx(p.total).epsilon(1e-14));
    CHECK(std::norm(c.sigma_ss) == doctest::Approx(p.coh).epsilon(1e-12));
    CHECK(c.v_ss(0).real() == doctest::Approx(p.incoh).epsilon(1e-12));
    // sigma^dag sigma^dag = 0, so the connected part is -<sigma^dag>^2
    const cdouble sd = std::conj(c.sigma_ss);
    CHECK(std::abs(c.v_ss(1) + sd * sd) < 1e-12);
    // sigma^dag sigma^dag sigma = 0 as well
    CHECK(std::abs(c.v_ss(2) + sd * c.pop_ss) < 1e-12);
  }
}

TEST_CASE("broadened zone map integrates to the population") {
  LatticeConfig cfg;
  for (double l : {0.5, 0.8}) {
    cfg.period = l;
    for (Vec2 kl : {Vec2(0.0, 0.0), Vec2(0.3, -0.1)}) {
      DriveConfig drive;
      drive.k_laser = kl;
      const cdouble w(1.3, 0.2);
      const BZPopulation pop = bz_population(w, 0.2, cfg, drive);
      const BZGrid g = broadened_bz_map(pop, 201, {});
      const double integral = bz_map_integral(g, l);
      CAPTURE(l);
      CHECK(integral == doctest::Approx(population_per_emitter(w, 0.2).total).epsilon(1e-4));
      // the peak sits at the laser wavevector
      std::size_t best = 0;
      for (std::size_t i = 1; i < g.values.size(); ++i)
        if (g.values[i] > g.values[best]) best = i;
      const Vec2 at(g.kx[best % 201], g.ky[best / 201]);
      CHECK((at - drive.k_laser_rad()).norm() <= 2.0 * pi / l / 200 * 1.5);
    }
  }
  CHECK_THROWS_AS(broadened_bz_map(bz_population(1.0, 0.0, cfg, {}), 11, {}), ConfigError);
}
