#include "qlat/lattice_sum.hpp"

#include <algorithm>
#include <cmath>

#include "qlat/parallel.hpp"
#include "qlat/special.hpp"

namespace qlat {
namespace {

constexpr double inv_sqrt_pi = 0.56418958354775628;

template <typename F>
void for_reciprocal(double l, const Vec2& k_par, double radius, F&& f) {
  const double G = 2.0 * pi / l;
  const int m0 = int(std::ceil((-radius - k_par.x()) / G));
  const int m1 = int(std::floor((radius - k_par.x()) / G));
  const int n0 = int(std::ceil((-radius - k_par.y()) / G));
  const int n1 = int(std::floor((radius - k_par.y()) / G));
  for (int m = m0; m <= m1; ++m)
    for (int n = n0; n <= n1; ++n) {
      const Vec2 q = k_par + G * Vec2(m, n);
      if (q.norm() <= radius) f(q);
    }
}

// Scalar sum g0 and its in-plane Hessian, combined into mu.G.mu through
// G = (1 + grad grad / k^2) g and the Helmholtz relation for the zz part.
cdouble project(const Vec3& mu, double k, cdouble g0, cdouble gxx, cdouble gyy, cdouble gxy) {
  const double k2 = k * k;
  return mu.x() * mu.x() * (g0 + gxx / k2) + mu.y() * mu.y() * (g0 + gyy / k2) +
         2.0 * mu.x() * mu.y() * gxy / k2 - mu.z() * mu.z() * (gxx + gyy) / k2;
}

cdouble ewald_once(const LatticeConfig& cfg, const Vec2& kp, double k, double E) {
  const double l = cfg.period;
  const double b = k / (2.0 * E);
  const double area = l * l;

  // Screened real-space part.  The kernel Re[exp(ikr) erfc(rE + ib)] / (4 pi r)
  // is real, so only its phase factor is complex.
  cdouble g0 = 0.0, gxx = 0.0, gyy = 0.0, gxy = 0.0;
  const double rmax = std::sqrt(b * b + 45.0) / E;
  const int N = int(std::ceil(rmax / l));
  for (int i = -N; i <= N; ++i)
    for (int j = -N; j <= N; ++j) {
      if (i == 0 && j == 0) continue;
      const double x = i * l, y = j * l;
      const double r = std::hypot(x, y);
      if (r > rmax) continue;
      const double gauss = 2.0 * E * inv_sqrt_pi * std::exp(b * b - r * r * E * E);
      const cdouble h = std::exp(I * (k * r)) * erfc(cdouble(r * E, b));
      const cdouble h1 = I * k * h - gauss;
      const cdouble h2 = -k * k * h - I * k * gauss + 2.0 * r * E * E * gauss;
      const double u = h.real() / (4.0 * pi);
      const double u1 = h1.real() / (4.0 * pi);
      const double u2 = h2.real() / (4.0 * pi);
      const double f = u / r;
      const double f1 = u1 / r - u / (r * r);
      const double f2 = u2 / r - 2.0 * u1 / (r * r) + 2.0 * u / (r * r * r);
      const double nx = x / r, ny = y / r;
      const double t = f1 / r;
      const cdouble ph = std::exp(-I * (kp.x() * x + kp.y() * y));
      g0 += f * ph;
      gxx += (f2 * nx * nx + t * (1.0 - nx * nx)) * ph;
      gyy += (f2 * ny * ny + t * (1.0 - ny * ny)) * ph;
      gxy += ((f2 - t) * nx * ny) * ph;
    }

  // Spectral part.  Propagating orders take gamma = -i sqrt(k^2 - q^2).
  cdouble s0 = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for_reciprocal(l, kp, std::sqrt(k * k + 180.0 * E * E), [&](const Vec2& q) {
    const double q2 = q.squaredNorm();
    const cdouble gam = q2 >= k * k ? cdouble(std::sqrt(q2 - k * k), 0.0)
                                    : cdouble(0.0, -std::sqrt(k * k - q2));
    const cdouble term = erfc(gam / (2.0 * E)) / gam;
    s0 += term;
    sxx -= q.x() * q.x() * term;
    syy -= q.y() * q.y() * term;
    sxy -= q.x() * q.y() * term;
  });
  const double norm = 1.0 / (2.0 * area);
  g0 += s0 * norm;
  gxx += sxx * norm;
  gyy += syy * norm;
  gxy += sxy * norm;

  // Remove the origin, i.e. the r -> 0 limit of the full kernel minus 1/(4 pi r).
  const double eb = std::exp(b * b);
  const double f1 = -k * erfi(b) + 2.0 * E * inv_sqrt_pi * eb;
  const double f3 = -k * k * f1 - 4.0 * E * E * E * inv_sqrt_pi * eb;
  const cdouble self0 = f1 / (4.0 * pi) + I * k / (4.0 * pi);
  const cdouble self2 = f3 / (12.0 * pi) - I * k * k * k / (12.0 * pi);
  g0 -= self0;
  gxx -= self2;
  gyy -= self2;

  return project(cfg.dipole, k, g0, gxx, gyy, gxy);
}

LatticeSumResult finish(cdouble g, SumMethod method, double err, bool ok) {
  LatticeSumResult r;
  r.g_bar = g;
  const Dispersion d = dispersion_from_gbar(g, 0.0);
  r.delta_k = d.delta_k;
  r.gamma_k = d.gamma_k;
  r.method = method;
  r.err_estimate = err;
  r.converged = ok;
  return r;
}

// Singular part of the lattice sum from the Weyl order q, complex k allowed.
cdouble weyl_order(const Vec3& mu, double area, const Vec2& q, cdouble kappa) {
  const cdouble kz = [&] {
    cdouble s = std::sqrt(kappa * kappa - q.squaredNorm());
    return s.imag() < 0.0 ? -s : s;
  }();
  const double qm = q.x() * mu.x() + q.y() * mu.y();
  const cdouble k2 = kappa * kappa;
  return I / (2.0 * area) * ((k2 - qm * qm) / (k2 * kz) - mu.z() * mu.z() * kz / k2);
}

// Neville evaluation at zero of the interpolant through (x_i, y_i).
cdouble extrapolate_to_zero(std::span<const double> x, std::span<const cdouble> y) {
  std::vector<cdouble> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
  return p[0];
}

}  // namespace

LatticeSumResult lattice_sum_ewald(const LatticeConfig& cfg, const Vec2& k_par, double k,
                                   const EwaldOptions& opt) {
  validate(cfg);
  if (opt.split < 0.0 || !(opt.tol > 0.0) || !(opt.check_ratio > 0.0))
    throw ConfigError("ewald: split must be positive and tol > 0");
  const double E = opt.split > 0.0 ? opt.split : std::sqrt(pi) / cfg.period;
  const cdouble g1 = ewald_once(cfg, k_par, k, E);
  const cdouble g2 = ewald_once(cfg, k_par, k, E * opt.check_ratio);
  const double err = std::abs(g1 - g2) / std::max(std::abs(g1), 1e-3);
  const bool ok = std::isfinite(g1.real()) && std::isfinite(g1.imag()) && err <= opt.tol;
  return finish(g1, SumMethod::ewald, err, ok);
}

std::vector<LatticeSumResult> lattice_sum_direct(const LatticeConfig& cfg,
                                                 std::span<const Vec2> k_pars, double k,
                                                 const DirectOptions& opt) {
  validate(cfg);
  if (opt.eta.size() < 2) throw ConfigError("direct sum: need at least two eta values");
  for (double e : opt.eta)
    if (!(e > 0.0)) throw ConfigError("direct sum: eta must be positive");
  if (opt.min_shells < 10) throw ConfigError("direct sum: at least 10 shells");

  const double l = cfg.period;
  const double area = l * l;
  const Vec3& mu = cfg.dipole;
  const std::size_t nk = k_pars.size();
  const std::size_t ne = opt.eta.size();

  // u[p][e]: damped sum minus the near-anomalous Weyl orders.
  std::vector<std::vector<cdouble>> u(nk, std::vector<cdouble>(ne));
  for (std::size_t e = 0; e < ne; ++e) {
    const double eta = opt.eta[e];
    const cdouble kappa = k * cdouble(1.0, eta);
    const double R = std::max(opt.min_shells * l, opt.cutoff / (k * eta));
    const int rows = int(std::floor(R / l));

    // Inversion symmetry: sum the half plane i > 0 or (i = 0, j > 0) with
    // weight 2 cos(k.r).  Rows are reduced in index order for determinism.
    std::vector<std::vector<cdouble>> row_sum(rows + 1, std::vector<cdouble>(nk));
    parallel_for(std::size_t(rows + 1), opt.threads, [&](std::size_t ir) {
      const int i = int(ir);
      const double x = i * l;
      const int J = int(std::floor(std::sqrt(std::max(0.0, R * R - x * x)) / l));
      const int j0 = i == 0 ? 1 : -J;
      std::vector<cdouble> z(nk), step(nk);
      std::vector<cdouble>& acc = row_sum[ir];
      for (std::size_t p = 0; p < nk; ++p) {
        z[p] = std::exp(I * (k_pars[p].x() * x + k_pars[p].y() * j0 * l));
        step[p] = std::exp(I * (k_pars[p].y() * l));
      }
      for (int j = j0; j <= J; ++j) {
        const double y = j * l;
        const double r = std::hypot(x, y);
        const double c = (mu.x() * x + mu.y() * y) / r;
        const cdouble inv = 1.0 / (kappa * r);
        const cdouble d = 2.0 * std::exp(I * kappa * r) / (4.0 * pi * r) *
                          ((1.0 + I * inv - inv * inv) +
                           (-1.0 - 3.0 * I * inv + 3.0 * inv * inv) * c * c);
        for (std::size_t p = 0; p < nk; ++p) {
          acc[p] += d * z[p].real();
          z[p] *= step[p];
        }
      }
    });
    for (std::size_t p = 0; p < nk; ++p) {
      cdouble s = 0.0;
      for (const auto& row : row_sum) s += row[p];
      for_reciprocal(l, k_pars[p], (1.0 + opt.anomaly_radius) * k, [&](const Vec2& q) {
        if (std::abs(q.norm() / k - 1.0) < opt.anomaly_radius) s -= weyl_order(mu, area, q, kappa);
      });
      u[p][e] = s;
    }
  }

  std::vector<LatticeSumResult> out;
  out.reserve(nk);
  for (std::size_t p = 0; p < nk; ++p) {
    const cdouble full = extrapolate_to_zero(opt.eta, u[p]);
    const cdouble sub = extrapolate_to_zero(std::span(opt.eta).subspan(1),
                                            std::span<const cdouble>(u[p]).subspan(1));
    cdouble g = full;
    bool on_anomaly = false;
    for_reciprocal(l, k_pars[p], (1.0 + opt.anomaly_radius) * k, [&](const Vec2& q) {
      if (std::abs(q.norm() / k - 1.0) >= opt.anomaly_radius) return;
      if (std::abs(q.norm() - k) < 1e-9 * k) on_anomaly = true;
      else g += weyl_order(mu, area, q, cdouble(k));
    });
    const double err = std::abs(full - sub) / std::max(std::abs(g), 1e-3);
    const bool ok = !on_anomaly && std::isfinite(g.real()) && err <= opt.tol;
    out.push_back(finish(g, SumMethod::direct_damped, err, ok));
  }
  return out;
}

LatticeSumResult lattice_sum_direct(const LatticeConfig& cfg, const Vec2& k_par, double k,
                                    const DirectOptions& opt) {
  return lattice_sum_direct(cfg, std::span(&k_par, 1), k, opt).front();
}

LatticeSumResult lattice_sum(const LatticeConfig& cfg, const Vec2& k_par, double k) {
  LatticeSumResult r = lattice_sum_ewald(cfg, k_par, k);
  if (!r.converged)
    throw NumericalError("lattice sum did not converge (split mismatch " +
                         std::to_string(r.err_estimate) + ")");
  return r;
}

Dispersion collective_dispersion(const LatticeSumResult& sum, double delta) {
  if (!sum.converged) throw NumericalError("collective dispersion from an unconverged lattice sum");
  return dispersion_from_gbar(sum.g_bar, delta);
}

Dispersion collective_dispersion(const LatticeConfig& cfg, const Vec2& k_par, double delta) {
  return collective_dispersion(lattice_sum(cfg, k_par), delta);
}

double radiative_gamma(const LatticeConfig& cfg, const Vec2& k_par, double k) {
  validate(cfg);
  const Vec3& mu = cfg.dipole;
  double s = 0.0;
  for_reciprocal(cfg.period, k_par, k, [&](const Vec2& q) {
    const double kz = std::sqrt(std::max(0.0, k * k - q.squaredNorm()));
    if (kz <= 0.0) return;
    const double qm = q.x() * mu.x() + q.y() * mu.y();
    s += (k * k - qm * qm - mu.z() * mu.z() * kz * kz) / kz;
  });
  return 3.0 * pi * s / (cfg.period * cfg.period * k * k * k);
}

double anomaly_distance(const LatticeConfig& cfg, const Vec2& k_par, double k) {
  double best = 1e300;
  for_reciprocal(cfg.period, k_par, 3.0 * k, [&](const Vec2& q) {
    best = std::min(best, std::abs(q.norm() - k) / k);
  });
  return best;
}

}  // namespace qlat
