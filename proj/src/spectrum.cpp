#include "qlat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlat/units.hpp"

namespace qlat {

Eigen::Matrix3cd regression_matrix(cdouble w, double delta) {
  Eigen::Matrix3cd M;
  M << cdouble(-0.5, delta), 0.0, 2.0 * I * w,
       0.0, cdouble(-0.5, -delta), -2.0 * I * std::conj(w),
       I * std::conj(w), -I * w, -1.0;
  return M;
}

MollowTriplet mollow_parameters(const Eigen::Matrix3cd& M, const CorrelatorSet& corr,
                                const SpectrumOptions& opt) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(M);
  if (es.info() != Eigen::Success) throw NumericalError("regression matrix: eigensolver failed");
  Eigen::Matrix3cd E = es.eigenvectors();
  Eigen::Vector3cd lam = es.eigenvalues();

  // One inverse-iteration step per eigenpair.
  const double shift = 1e-9 * std::max(1.0, M.norm());
  for (int p = 0; p < 3; ++p) {
    const Eigen::Matrix3cd A = M - (lam(p) + shift) * Eigen::Matrix3cd::Identity();
    Eigen::Vector3cd y = A.partialPivLu().solve(E.col(p));
    if (y.allFinite() && y.norm() > 0.0) {
      y.normalize();
      E.col(p) = y;
      lam(p) = y.dot(M * y);
    }
  }

  const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(E);
  const auto& s = svd.singularValues();
  const double cond = s(2) > 0.0 ? s(0) / s(2) : std::numeric_limits<double>::infinity();
  if (!(cond <= opt.max_condition))
    throw NumericalError("regression matrix is near an exceptional point (eigenvector condition " +
                         std::to_string(cond) + ")");

  const Eigen::Vector3cd c = E.partialPivLu().solve(corr.v_ss);
  std::array<MollowPeak, 3> peaks;
  for (int p = 0; p < 3; ++p) {
    const cdouble lp = E(0, p) * c(p);
    peaks[p] = {-lam(p).imag(), -2.0 * lam(p).real(), lp.real(), lp.imag(), lam(p)};
  }
  std::sort(peaks.begin(), peaks.end(), [](const MollowPeak& a, const MollowPeak& b) {
    return std::abs(a.omega_p) < std::abs(b.omega_p);
  });
  if (peaks[1].omega_p > peaks[2].omega_p) std::swap(peaks[1], peaks[2]);

  MollowTriplet t;
  t.peaks = peaks;
  t.coherent_weight = std::norm(corr.sigma_ss);
  t.condition = cond;
  return t;
}

MollowTriplet mollow_triplet(cdouble omega_eff, double delta, const SpectrumOptions& opt) {
  return mollow_parameters(regression_matrix(omega_eff, delta), correlators(omega_eff, delta), opt);
}

double incoherent_spectrum(const MollowTriplet& t, double omega, bool include_dispersive) {
  double s = 0.0;
  for (const auto& p : t.peaks) {
    const double d = omega - p.omega_p;
    const double h = 0.5 * p.gamma_p;
    double num = p.L_p * h;
    if (include_dispersive) num -= p.K_p * d;
    s += num / (d * d + h * h);
  }
  return s / pi;
}

std::vector<double> incoherent_spectrum(const MollowTriplet& t, const std::vector<double>& omega,
                                        bool include_dispersive) {
  std::vector<double> out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i)
    out[i] = incoherent_spectrum(t, omega[i], include_dispersive);
  return out;
}

double incoherent_window(const MollowTriplet& t, double lo, double hi, bool include_dispersive) {
  double s = 0.0;
  for (const auto& p : t.peaks) {
    const double h = 0.5 * p.gamma_p;
    s += p.L_p * (std::atan((hi - p.omega_p) / h) - std::atan((lo - p.omega_p) / h));
    if (include_dispersive && std::isfinite(lo) && std::isfinite(hi)) {
      const double a = (hi - p.omega_p) * (hi - p.omega_p) + h * h;
      const double b = (lo - p.omega_p) * (lo - p.omega_p) + h * h;
      s -= 0.5 * p.K_p * std::log(a / b);
    }
  }
  return s / pi;
}

ClassicalSpectrum classical_spectrum(cdouble omega, double delta_k, double gamma_k) {
  return {classical_population(omega, delta_k, gamma_k)};
}

}  // namespace qlat
