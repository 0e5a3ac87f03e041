#include "qlat/observables.hpp"

#include <cmath>

#include "qlat/parallel.hpp"

namespace qlat {

PopulationSplit population_per_emitter(cdouble omega_eff, double delta) {
  const double x = std::norm(omega_eff);
  const double a = 1.0 + 4.0 * delta * delta;
  const double d = a + 8.0 * x;
  return {4.0 * x * a / (d * d), 32.0 * x * x / (d * d), 4.0 * x / d};
}

BZPopulation bz_population(cdouble omega_eff, double delta, const LatticeConfig& cfg,
                           const DriveConfig& drive) {
  validate(cfg);
  const PopulationSplit p = population_per_emitter(omega_eff, delta);
  BZPopulation out;
  out.coh_weight = p.coh;
  out.incoh_density = p.incoh * cfg.period / (2.0 * pi);
  out.k_laser = drive.k_laser_rad();
  out.period = cfg.period;
  return out;
}

double classical_population(cdouble omega, double delta_k, double gamma_k) {
  return std::norm(omega) / (delta_k * delta_k + 0.25 * gamma_k * gamma_k);
}

CorrelatorSet correlators(cdouble omega_eff, double delta) {
  const double x = std::norm(omega_eff);
  const double a = 1.0 + 4.0 * delta * delta;
  const double d = a + 8.0 * x;
  const cdouble w = std::conj(omega_eff);
  const cdouble m = cdouble(1.0, -2.0 * delta);  // gamma0 - 2 i Delta
  CorrelatorSet c;
  c.sigma_ss = -2.0 * I * cdouble(1.0, 2.0 * delta) * omega_eff / d;
  c.pop_ss = 4.0 * x / d;
  c.sdag_sdag = -4.0 * m * m * w * w / (d * d);
  c.sdag_O = 8.0 * I * m * w * x / (d * d);
  // <c^dag c> - <c^dag><c> for c = (sigma, sigma^dag, sigma^dag sigma).
  c.v_ss << 32.0 * x * x / (d * d), 4.0 * w * w * m * m / (d * d), -8.0 * I * w * x * m / (d * d);
  return c;
}

double broadened_population(const BZPopulation& pop, const Vec2& k, const BZMapOptions& opt) {
  const double l = pop.period;
  const double G = 2.0 * pi / l;
  const double sigma = G / opt.length_over_period;  // 2 pi / L
  const double norm = 1.0 / (2.0 * pi * sigma * sigma);
  double gauss = 0.0;
  for (int m = -opt.images; m <= opt.images; ++m)
    for (int n = -opt.images; n <= opt.images; ++n) {
      const Vec2 d = k - pop.k_laser - G * Vec2(m, n);
      gauss += norm * std::exp(-0.5 * d.squaredNorm() / (sigma * sigma));
    }
  return pop.coh_weight * G * gauss + pop.incoh_density;
}

BZGrid broadened_bz_map(const BZPopulation& pop, int n, const BZMapOptions& opt, int threads) {
  if (n < 2) throw ConfigError("bz map: need at least 2 points per axis");
  const double G = 2.0 * pi / pop.period;
  const double h = G / (n - 1);
  if (h > G / opt.length_over_period)
    throw ConfigError("bz map: grid spacing coarser than the Gaussian width");
  BZGrid g;
  g.n = n;
  g.kx.resize(n);
  g.ky.resize(n);
  for (int i = 0; i < n; ++i) g.kx[i] = g.ky[i] = -0.5 * G + i * h;
  g.values.assign(std::size_t(n) * n, 0.0);
  parallel_for(std::size_t(n), threads, [&](std::size_t j) {
    for (int i = 0; i < n; ++i)
      g.values[j * n + i] = broadened_population(pop, Vec2(g.kx[i], g.ky[j]), opt);
  });
  return g;
}

double bz_map_integral(const BZGrid& grid, double period) {
  const int n = grid.n;
  const double h = (grid.kx.back() - grid.kx.front()) / (n - 1);
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      const double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      s += wx * wy * grid.values[std::size_t(j) * n + i];
    }
  return s * h * h * period / (2.0 * pi);
}

}  // namespace qlat
