#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qlat/greens.hpp"
#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline constexpr int max_oracle_emitters = 3;

struct EmitterEnsemble {
  std::vector<Vec3> positions;  // lambda0
  DriveConfig drive;
  bool interactions_enabled = true;
  Eigen::MatrixXd g;      // coherent couplings, zero diagonal
  Eigen::MatrixXd gamma;  // dissipative couplings, unit diagonal

  int size() const { return int(positions.size()); }
};

// Coupling tables from pair_coupling; zero off-diagonal if interactions are off.
EmitterEnsemble make_ensemble(const std::vector<Vec3>& positions, const DriveConfig& drive,
                              const LatticeConfig& cfg, bool interactions = true);

// Lowering operator of site i in the 2^N Hilbert space, site 0 most significant.
MatrixXcd lowering(int n_sites, int site);

// Column-major vectorization: vec(A X B) = (B^T kron A) vec(X).
MatrixXcd build_liouvillian(const EmitterEnsemble& e);

struct DensityState {
  MatrixXcd rho;
  double null_gap = 0.0;  // second smallest singular value of the Liouvillian
};

DensityState steady_state(const MatrixXcd& liouvillian);

cdouble expectation(const DensityState& s, const MatrixXcd& op);

struct QrtResult {
  std::vector<cdouble> samples;   // <A(0) B(tau)> on the tau grid
  std::vector<cdouble> poles;     // Liouvillian eigenvalues
  std::vector<cdouble> residues;  // matching amplitudes
};

// <A(0) B(tau)> = Tr[B exp(L tau)(rho A)], decomposed over the eigenmodes of L.
QrtResult qrt_correlator(const MatrixXcd& liouvillian, const DensityState& s, const MatrixXcd& A,
                         const MatrixXcd& B, const std::vector<double>& tau,
                         double max_condition = 1e10);

struct MeanFieldComparison {
  std::vector<double> pop_exact, pop_mf;
  MatrixXcd coherence_exact;   // <sigma_i^dag sigma_j>
  MatrixXcd coherence_mf;      // <sigma_i^dag><sigma_j> off the diagonal
  MatrixXcd connected;         // inter-site part of the exact coherences, zero diagonal
  VectorXcd sigma_exact, sigma_mf;
  double max_pop_rel_diff = 0.0;
  int iterations = 0;
};

// Dense solve against the finite-ensemble mean-field fixed point.
MeanFieldComparison mf_vs_exact(const EmitterEnsemble& e);

// Fixed point of s_i = sigma(Omega_i) with Omega_i = Omega e^{i k.r_i} + sum_j (g_ij - i gamma_ij/2) s_j,
// reached by continuation in the coupling strength from independent emitters.
VectorXcd finite_mean_field(const EmitterEnsemble& e, int* iterations = nullptr);

struct OscillatorResult {
  double population;  // <a^dag a>
  double coherent;    // |<a>|^2
  int n_max;
};

// Driven damped oscillator in a truncated Fock space, n_max grown until the
// population moves by less than tol.
OscillatorResult oscillator_steady_state(cdouble omega, double delta_k, double gamma_k,
                                         double tol = 1e-10, int n_start = 20, int n_limit = 400);

}  // namespace qlat
