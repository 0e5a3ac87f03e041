#include "qlat/oracle.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

namespace qlat {
namespace {

cdouble local_drive(const EmitterEnsemble& e, int i) {
  const Vec2 k = e.drive.k_laser_rad();
  const Vec3& r = e.positions[i];
  return e.drive.omega * std::exp(I * (k.x() * r.x() + k.y() * r.y()));
}

cdouble two_level_sigma(cdouble omega, double delta) {
  const double a = 1.0 + 4.0 * delta * delta;
  return -2.0 * I * cdouble(1.0, 2.0 * delta) * omega / (a + 8.0 * std::norm(omega));
}

}  // namespace

EmitterEnsemble make_ensemble(const std::vector<Vec3>& positions, const DriveConfig& drive,
                              const LatticeConfig& cfg, bool interactions) {
  validate(cfg);
  validate(drive);
  const int n = int(positions.size());
  if (n < 1) throw ConfigError("ensemble needs at least one emitter");
  if (n > max_oracle_emitters) throw ConfigError("oracle supports at most 3 emitters");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if ((positions[i] - positions[j]).norm() == 0.0)
        throw ConfigError("ensemble positions must be distinct");
  EmitterEnsemble e;
  e.positions = positions;
  e.drive = drive;
  e.interactions_enabled = interactions;
  e.g = Eigen::MatrixXd::Zero(n, n);
  e.gamma = Eigen::MatrixXd::Identity(n, n);
  if (interactions)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const PairCoupling p = pair_coupling(positions[i] - positions[j], cfg);
        e.g(i, j) = p.g;
        e.gamma(i, j) = p.gamma;
      }
  return e;
}

MatrixXcd lowering(int n_sites, int site) {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 1) = 1.0;  // |g><e| with |g> = 0, |e> = 1
  MatrixXcd op = MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n_sites; ++k) {
    const MatrixXcd f = k == site ? MatrixXcd(s) : MatrixXcd::Identity(2, 2);
    op = Eigen::kroneckerProduct(op, f).eval();
  }
  return op;
}

MatrixXcd build_liouvillian(const EmitterEnsemble& e) {
  const int n = e.size();
  if (n < 1 || n > max_oracle_emitters) throw ConfigError("oracle supports 1 to 3 emitters");
  const int d = 1 << n;
  std::vector<MatrixXcd> s(n);
  for (int i = 0; i < n; ++i) s[i] = lowering(n, i);
  const MatrixXcd id = MatrixXcd::Identity(d, d);

  MatrixXcd H = MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    H -= e.drive.delta * s[i].adjoint() * s[i];
    const cdouble w = local_drive(e, i);
    H += w * s[i].adjoint() + std::conj(w) * s[i];
    for (int j = 0; j < n; ++j)
      if (i != j && e.g(i, j) != 0.0) H += e.g(i, j) * s[i].adjoint() * s[j];
  }

  MatrixXcd L = -I * (Eigen::kroneckerProduct(id, H) -
                      Eigen::kroneckerProduct(H.transpose(), id)).eval();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double gij = e.gamma(i, j);
      if (gij == 0.0) continue;
      const MatrixXcd sds = s[i].adjoint() * s[j];
      L += 0.5 * gij *
           (2.0 * Eigen::kroneckerProduct(s[i].adjoint().transpose(), s[j]).eval() -
            Eigen::kroneckerProduct(id, sds).eval() -
            Eigen::kroneckerProduct(sds.transpose(), id).eval());
    }
  return L;
}

DensityState steady_state(const MatrixXcd& L) {
  const int m = int(L.rows());
  const int d = int(std::lround(std::sqrt(double(m))));
  Eigen::JacobiSVD<MatrixXcd> svd(L, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  DensityState out;
  out.null_gap = sv(m - 2);
  if (!(sv(m - 2) > 1e-8)) throw NumericalError("steady state: degenerate null space");
  const VectorXcd v = svd.matrixV().col(m - 1);
  MatrixXcd rho = Eigen::Map<const MatrixXcd>(v.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  out.rho = rho;
  return out;
}

cdouble expectation(const DensityState& s, const MatrixXcd& op) { return (op * s.rho).trace(); }

QrtResult qrt_correlator(const MatrixXcd& L, const DensityState& s, const MatrixXcd& A,
                         const MatrixXcd& B, const std::vector<double>& tau,
                         double max_condition) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(L);
  if (es.info() != Eigen::Success) throw NumericalError("qrt: eigensolver failed");
  const MatrixXcd& V = es.eigenvectors();
  const Eigen::JacobiSVD<MatrixXcd> svd(V);
  const auto& sv = svd.singularValues();
  if (!(sv(0) <= max_condition * sv(sv.size() - 1)))
    throw NumericalError("qrt: Liouvillian is near defective");

  const MatrixXcd X = s.rho * A;
  const VectorXcd x = Eigen::Map<const VectorXcd>(X.data(), X.size());
  const VectorXcd c = V.partialPivLu().solve(x);
  const MatrixXcd Bt = B.transpose();
  const VectorXcd b = Eigen::Map<const VectorXcd>(Bt.data(), Bt.size());

  QrtResult r;
  const int m = int(V.cols());
  for (int k = 0; k < m; ++k) {
    r.poles.push_back(es.eigenvalues()(k));
    r.residues.push_back((b.transpose() * V.col(k)).value() * c(k));
  }
  for (double t : tau) {
    cdouble acc = 0.0;
    for (int k = 0; k < m; ++k) acc += r.residues[k] * std::exp(r.poles[k] * t);
    r.samples.push_back(acc);
  }
  return r;
}

VectorXcd finite_mean_field(const EmitterEnsemble& e, int* iterations) {
  const int n = e.size();
  const double delta = e.drive.delta;
  // Couplings scaled by lambda for continuation from independent emitters.
  auto residual = [&](const Eigen::VectorXd& u, double lambda) {
    VectorXcd s(n);
    for (int i = 0; i < n; ++i) s(i) = cdouble(u(2 * i), u(2 * i + 1));
    Eigen::VectorXd f(2 * n);
    for (int i = 0; i < n; ++i) {
      cdouble w = local_drive(e, i);
      for (int j = 0; j < n; ++j)
        if (i != j) w += lambda * cdouble(e.g(i, j), -0.5 * e.gamma(i, j)) * s(j);
      const cdouble r = s(i) - two_level_sigma(w, delta);
      f(2 * i) = r.real();
      f(2 * i + 1) = r.imag();
    }
    return f;
  };

  int total = 0;
  auto newton = [&](Eigen::VectorXd& u, double lambda) {
    Eigen::VectorXd f = residual(u, lambda);
    for (int it = 0; it < 50 && f.norm() > 1e-14; ++it, ++total) {
      Eigen::MatrixXd J(2 * n, 2 * n);
      for (int k = 0; k < 2 * n; ++k) {
        Eigen::VectorXd up = u;
        const double h = 1e-7 * std::max(1.0, std::abs(u(k)));
        up(k) += h;
        J.col(k) = (residual(up, lambda) - f) / h;
      }
      const Eigen::VectorXd step = J.fullPivLu().solve(-f);
      double t = 1.0;
      Eigen::VectorXd trial = u + step;
      Eigen::VectorXd ft = residual(trial, lambda);
      while (ft.norm() >= f.norm() && t > 1e-6) {
        t *= 0.5;
        trial = u + t * step;
        ft = residual(trial, lambda);
      }
      if (ft.norm() >= f.norm()) break;
      u = trial;
      f = ft;
    }
    return f.norm() <= 1e-10;
  };

  Eigen::VectorXd u(2 * n);
  for (int i = 0; i < n; ++i) {
    const cdouble s0 = two_level_sigma(local_drive(e, i), delta);
    u(2 * i) = s0.real();
    u(2 * i + 1) = s0.imag();
  }
  double lambda = 0.0, step = 1.0;
  while (lambda < 1.0) {
    const double next = std::min(1.0, lambda + step);
    Eigen::VectorXd trial = u;
    if (newton(trial, next)) {
      u = trial;
      lambda = next;
      step *= 2.0;
    } else {
      step *= 0.5;
      if (step < 1e-4) throw NumericalError("mean-field fixed point did not converge");
    }
  }
  if (iterations) *iterations = total;
  VectorXcd s(n);
  for (int i = 0; i < n; ++i) s(i) = cdouble(u(2 * i), u(2 * i + 1));
  return s;
}

MeanFieldComparison mf_vs_exact(const EmitterEnsemble& e) {
  const int n = e.size();
  const DensityState ss = steady_state(build_liouvillian(e));
  MeanFieldComparison c;
  c.sigma_mf = finite_mean_field(e, &c.iterations);

  std::vector<MatrixXcd> s(n);
  for (int i = 0; i < n; ++i) s[i] = lowering(n, i);
  c.sigma_exact.resize(n);
  c.coherence_exact.resize(n, n);
  c.coherence_mf.resize(n, n);
  c.connected.resize(n, n);
  for (int i = 0; i < n; ++i) c.sigma_exact(i) = expectation(ss, s[i]);

  const double a = 1.0 + 4.0 * e.drive.delta * e.drive.delta;
  VectorXcd w(n);
  for (int i = 0; i < n; ++i) {
    w(i) = local_drive(e, i);
    for (int j = 0; j < n; ++j)
      if (i != j) w(i) += cdouble(e.g(i, j), -0.5 * e.gamma(i, j)) * c.sigma_mf(j);
  }
  for (int i = 0; i < n; ++i) {
    const double x = std::norm(w(i));
    c.pop_mf.push_back(4.0 * x / (a + 8.0 * x));
    c.pop_exact.push_back(expectation(ss, s[i].adjoint() * s[i]).real());
    const double scale = std::max(std::abs(c.pop_exact.back()), 1e-300);
    c.max_pop_rel_diff = std::max(c.max_pop_rel_diff, std::abs(c.pop_mf.back() - c.pop_exact.back()) / scale);
    for (int j = 0; j < n; ++j) {
      c.coherence_exact(i, j) = expectation(ss, s[i].adjoint() * s[j]);
      c.coherence_mf(i, j) = i == j ? cdouble(c.pop_mf.back()) : std::conj(c.sigma_mf(i)) * c.sigma_mf(j);
      c.connected(i, j) =
          i == j ? cdouble(0.0) : c.coherence_exact(i, j) - std::conj(c.sigma_exact(i)) * c.sigma_exact(j);
    }
  }
  return c;
}

namespace {

struct FockSolution {
  double population;
  cdouble amplitude;
};

FockSolution solve_fock(cdouble omega, double delta_k, double gamma_k, int nmax) {
  const int D = nmax + 1;
  auto idx = [D](int m, int n) { return m + n * D; };
  std::vector<Eigen::Triplet<cdouble>> t;
  for (int m = 0; m < D; ++m)
    for (int n = 0; n < D; ++n) {
      const int r = idx(m, n);
      if (r == 0) continue;  // replaced by the trace condition
      t.emplace_back(r, r, -I * (-delta_k * (m - n)) - 0.5 * gamma_k * (m + n));
      if (m > 0) t.emplace_back(r, idx(m - 1, n), -I * omega * std::sqrt(double(m)));
      if (m + 1 < D) t.emplace_back(r, idx(m + 1, n), -I * std::conj(omega) * std::sqrt(m + 1.0));
      if (n + 1 < D) t.emplace_back(r, idx(m, n + 1), I * omega * std::sqrt(n + 1.0));
      if (n > 0) t.emplace_back(r, idx(m, n - 1), I * std::conj(omega) * std::sqrt(double(n)));
      if (m + 1 < D && n + 1 < D)
        t.emplace_back(r, idx(m + 1, n + 1), gamma_k * std::sqrt((m + 1.0) * (n + 1.0)));
    }
  for (int k = 0; k < D; ++k) t.emplace_back(0, idx(k, k), 1.0);
  Eigen::SparseMatrix<cdouble> L(D * D, D * D);
  L.setFromTriplets(t.begin(), t.end());
  Eigen::SparseLU<Eigen::SparseMatrix<cdouble>> lu;
  lu.compute(L);
  if (lu.info() != Eigen::Success) throw NumericalError("oscillator: factorization failed");
  VectorXcd rhs = VectorXcd::Zero(D * D);
  rhs(0) = 1.0;
  const VectorXcd rho = lu.solve(rhs);
  FockSolution s{0.0, 0.0};
  for (int k = 0; k < D; ++k) {
    s.population += k * rho(idx(k, k)).real();
    if (k + 1 < D) s.amplitude += std::sqrt(k + 1.0) * rho(idx(k + 1, k));
  }
  return s;
}

}  // namespace

OscillatorResult oscillator_steady_state(cdouble omega, double delta_k, double gamma_k, double tol,
                                         int n_start, int n_limit) {
  if (!(gamma_k > 0.0)) throw ConfigError("oscillator: gamma_k must be positive");
  FockSolution prev = solve_fock(omega, delta_k, gamma_k, n_start);
  for (int n = n_start + 5; n <= n_limit; n += 5) {
    const FockSolution cur = solve_fock(omega, delta_k, gamma_k, n);
    if (std::abs(cur.population - prev.population) < tol)
      return {cur.population, std::norm(cur.amplitude), n};
    prev = cur;
  }
  throw NumericalError("oscillator: truncation did not converge");
}

}  // namespace qlat
