#pragma once

#include <span>
#include <vector>

#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

enum class SumMethod { ewald, direct_damped };

struct LatticeSumResult {
  cdouble g_bar;        // lambda0 * sum_{j != 0} mu.G(r_j).mu exp(-i k.r_j)
  double delta_k = 0;   // collective shift for Delta = 0, gamma0
  double gamma_k = 1;   // gamma0
  SumMethod method = SumMethod::ewald;
  double err_estimate = 0;
  bool converged = true;
};

struct EwaldOptions {
  double split = 0.0;        // 0 selects sqrt(pi) / l
  double tol = 1e-8;         // relative split-consistency tolerance
  double check_ratio = 0.75; // second split used for the consistency check
};

struct DirectOptions {
  // Damping ladder for k -> k (1 + i eta); extrapolated with a polynomial
  // through all points.
  std::vector<double> eta{2e-2, 1e-2, 5e-3, 2.5e-3};
  int min_shells = 10;
  double cutoff = 30.0;        // truncate where exp(-k eta R) = exp(-cutoff)
  double anomaly_radius = 0.5; // subtract Weyl orders with | |q|/k - 1 | below this
  double tol = 1e-5;           // relative, on |g_bar| floored at 1e-3
  int threads = 0;
};

// k_par and k in rad / lambda0.  k defaults to k0, i.e. omega0.
LatticeSumResult lattice_sum_ewald(const LatticeConfig& cfg, const Vec2& k_par,
                                   double k = k0, const EwaldOptions& opt = {});

LatticeSumResult lattice_sum_direct(const LatticeConfig& cfg, const Vec2& k_par,
                                    double k = k0, const DirectOptions& opt = {});

// Shares every kernel evaluation across the batch.
std::vector<LatticeSumResult> lattice_sum_direct(const LatticeConfig& cfg,
                                                 std::span<const Vec2> k_pars, double k,
                                                 const DirectOptions& opt = {});

// Converged Ewald result or NumericalError.
LatticeSumResult lattice_sum(const LatticeConfig& cfg, const Vec2& k_par, double k = k0);

// Delta_k, gamma_k for detuning delta.  Throws if the sum did not converge.
Dispersion collective_dispersion(const LatticeSumResult& sum, double delta);
Dispersion collective_dispersion(const LatticeConfig& cfg, const Vec2& k_par, double delta);

// gamma_k from the propagating Weyl orders alone, zero outside every light circle.
double radiative_gamma(const LatticeConfig& cfg, const Vec2& k_par, double k = k0);

// Distance from k_par to the nearest Rayleigh anomaly |k_par + g| = k, relative to k.
double anomaly_distance(const LatticeConfig& cfg, const Vec2& k_par, double k = k0);

}  // namespace qlat
