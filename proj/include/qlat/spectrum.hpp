#pragma once

#include <array>
#include <vector>

#include "qlat/observables.hpp"
#include "qlat/types.hpp"

namespace qlat {

Eigen::Matrix3cd regression_matrix(cdouble omega_eff, double delta);

struct MollowPeak {
  double omega_p = 0.0;  // offset from omega_L, gamma0
  double gamma_p = 0.0;  // FWHM, -2 Re lambda_p
  double L_p = 0.0;
  double K_p = 0.0;
  cdouble lambda;
};

struct MollowTriplet {
  // peaks[0] is the central peak (smallest |omega_p|), then the sidebands
  // in ascending omega_p.
  std::array<MollowPeak, 3> peaks;
  double coherent_weight = 0.0;
  double condition = 1.0;  // eigenvector matrix condition number

  const MollowPeak& central() const { return peaks[0]; }
};

struct SpectrumOptions {
  double max_condition = 1e8;
};

// Throws NumericalError near an exceptional point of M.
MollowTriplet mollow_parameters(const Eigen::Matrix3cd& M, const CorrelatorSet& corr,
                                const SpectrumOptions& opt = {});
MollowTriplet mollow_triplet(cdouble omega_eff, double delta, const SpectrumOptions& opt = {});

double incoherent_spectrum(const MollowTriplet& t, double omega, bool include_dispersive = false);
std::vector<double> incoherent_spectrum(const MollowTriplet& t, const std::vector<double>& omega,
                                        bool include_dispersive = false);

// Exact integral of the incoherent spectrum over [lo, hi]; either end may be infinite.
double incoherent_window(const MollowTriplet& t, double lo, double hi,
                         bool include_dispersive = false);

// Classical lattice: a single coherent line at omega_L.
struct ClassicalSpectrum {
  double coherent_weight;
};

ClassicalSpectrum classical_spectrum(cdouble omega, double delta_k, double gamma_k);

}  // namespace qlat
