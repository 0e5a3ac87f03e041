#pragma once

#include <functional>
#include <vector>

#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

struct PopulationSplit {
  double coh;
  double incoh;
  double total;
};

// Per-emitter populations for x = |Omega_eff|^2.
PopulationSplit population_per_emitter(cdouble omega_eff, double delta);

struct BZPopulation {
  double coh_weight = 0.0;    // k-integrated weight of the delta peak at k_L
  double incoh_density = 0.0; // flat part of n(k): incoherent population times l / 2 pi
  Vec2 k_laser = Vec2::Zero();  // rad / lambda0
  double period = 0.5;
};

BZPopulation bz_population(cdouble omega_eff, double delta, const LatticeConfig& cfg,
                           const DriveConfig& drive);

// Classical (bosonic) lattice: coherent weight only.
double classical_population(cdouble omega, double delta_k, double gamma_k);

struct CorrelatorSet {
  cdouble sigma_ss;   // <sigma> at r = 0
  double pop_ss;      // <sigma^dag sigma>
  cdouble sdag_sdag;  // amplitude of the two-raising-operator correlator
  cdouble sdag_O;     // amplitude of the raising / exchange correlator
  Vec3c v_ss;         // connected steady-state vector for the regression
};

CorrelatorSet correlators(cdouble omega_eff, double delta);

struct BZMapOptions {
  double length_over_period = 25.0;  // display length L in units of l
  int images = 1;                    // periodic images of the Gaussian per axis
};

// n(k) with the delta peak smeared by a normalized Gaussian of width 2 pi / L,
// normalized so that (l / 2 pi) times its integral over the zone is the
// per-emitter population.  k in rad / lambda0.
double broadened_population(const BZPopulation& pop, const Vec2& k, const BZMapOptions& opt = {});

struct BZGrid {
  int n = 201;
  std::vector<double> kx, ky;  // rad / lambda0
  std::vector<double> values;  // row-major, ky outer
};

// Uniform n x n grid over the first zone.  Throws ConfigError if the grid is
// coarser than the Gaussian width.
BZGrid broadened_bz_map(const BZPopulation& pop, int n, const BZMapOptions& opt = {},
                        int threads = 0);

// Integral over the first zone of n(k) times l / 2 pi, trapezoid on the map.
double bz_map_integral(const BZGrid& grid, double period);

}  // namespace qlat
