#include "qlat/emission.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qlat {
namespace {

using boost::math::quadrature::gauss_kronrod;

// (k^2 - (k_g . mu)^2) for the upward wavevector k_g = (q, k_z).
double transverse(const Vec2& q, double kz, const Vec3& mu, double k) {
  const double kg_mu = q.x() * mu.x() + q.y() * mu.y() + kz * mu.z();
  return k * k - kg_mu * kg_mu;
}

double omega_laser(const DriveConfig& drive, const LatticeConfig& cfg) {
  return cfg.omega0_over_gamma0 + drive.delta;
}

double freq_factor(double nu, const DriveConfig& drive, const LatticeConfig& cfg,
                   const EmissionOptions& opt) {
  if (opt.narrowband) return 1.0;
  const double r = 1.0 + nu / omega_laser(drive, cfg);
  return r * r * r * r;
}

// Integral over [lo, hi] of (1 + nu / omega_L)^4 times the incoherent
// spectrum, from the moments F_m = int u^m / (u^2 + h^2) du of each line.
double broadband_window(const MollowTriplet& t, double lo, double hi, double wl) {
  double s = 0.0;
  for (const auto& p : t.peaks) {
    const double h = 0.5 * p.gamma_p;
    const double a = lo - p.omega_p, b = hi - p.omega_p;
    std::array<double, 5> F;
    F[0] = (std::atan(b / h) - std::atan(a / h)) / h;
    F[1] = 0.5 * std::log((b * b + h * h) / (a * a + h * h));
    for (int m = 2; m < 5; ++m)
      F[m] = (std::pow(b, m - 1) - std::pow(a, m - 1)) / (m - 1) - h * h * F[m - 2];
    // (A + u / omega_L)^4 with A = 1 + omega_p / omega_L
    const double A = 1.0 + p.omega_p / wl;
    const std::array<double, 5> binom{1, 4, 6, 4, 1};
    for (int m = 0; m < 5; ++m) s += binom[m] * std::pow(A, 4 - m) * std::pow(wl, -m) * p.L_p * h * F[m];
  }
  return s / pi;
}

double weighted_window(const MollowTriplet& t, double lo, double hi, const DriveConfig& drive,
                       const LatticeConfig& cfg, const EmissionOptions& opt) {
  if (opt.narrowband) return hi > lo ? incoherent_window(t, lo, hi) : 0.0;
  lo = std::max(lo, -opt.band);
  hi = std::min(hi, opt.band);
  if (!(hi > lo)) return 0.0;
  return broadband_window(t, lo, hi, omega_laser(drive, cfg));
}

}  // namespace

OrderList radiative_orders(const Vec2& k_par, const LatticeConfig& cfg, double k, double eps) {
  validate(cfg);
  const double G = 2.0 * pi / cfg.period;
  const int m0 = int(std::ceil((-k - k_par.x()) / G)), m1 = int(std::floor((k - k_par.x()) / G));
  const int n0 = int(std::ceil((-k - k_par.y()) / G)), n1 = int(std::floor((k - k_par.y()) / G));
  OrderList out;
  for (int m = m0; m <= m1; ++m)
    for (int n = n0; n <= n1; ++n) {
      const Vec2 g = G * Vec2(m, n);
      const Vec2 q = k_par + g;
      if (q.norm() > k) continue;
      const double kz = std::sqrt(std::max(0.0, k * k - q.squaredNorm()));
      if (kz < eps * k) {
        out.grazing.push_back(g);
        continue;
      }
      const double l = cfg.period;
      const double w = 3.0 * pi * transverse(q, kz, cfg.dipole, k) / (k * k * k * l * l * kz * kz);
      out.orders.push_back({g, q, kz, w});
    }
  return out;
}

double coherent_outcoupling(const Vec2& k_par, const LatticeConfig& cfg, double k) {
  double s = 0.0;
  for (const auto& o : radiative_orders(k_par, cfg, k).orders) s += o.k_z * o.m_weight;
  return s;
}

double incoherent_weight(const Vec2& k_par, const LatticeConfig& cfg, double k, double eps) {
  const double q2 = k_par.squaredNorm();
  if (q2 > k * k) return 0.0;
  const double kz = std::sqrt(k * k - q2);
  if (kz < eps * k) return 0.0;
  return 3.0 * transverse(k_par, kz, cfg.dipole, k) / (4.0 * pi * k * k * k * kz);
}

IntensityRecord intensity_bz(const Vec2& k_par, double omega, const MollowTriplet& t,
                             const DriveConfig& drive, const LatticeConfig& cfg) {
  IntensityRecord r;
  r.coherent = t.coherent_weight * coherent_outcoupling(drive.k_laser_rad(), cfg);
  r.incoherent_density = incoherent_weight(k_par, cfg) * incoherent_spectrum(t, omega);
  return r;
}

IntensitySpectrum intensity_spectrum(const std::vector<double>& omega, const MollowTriplet& t,
                                     const DriveConfig& drive, const LatticeConfig& cfg,
                                     const EmissionOptions& opt) {
  IntensitySpectrum s;
  s.coherent = t.coherent_weight * coherent_outcoupling(drive.k_laser_rad(), cfg);
  s.incoherent.resize(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i)
    s.incoherent[i] = incoherent_spectrum(t, omega[i]) * freq_factor(omega[i], drive, cfg, opt);
  const double inf = std::numeric_limits<double>::infinity();
  s.incoherent_total = weighted_window(t, -inf, inf, drive, cfg, opt);
  return s;
}

WindowIntegrals window_integrals(const MollowTriplet& t, const WindowSpec& w,
                                 const DriveConfig& drive, const LatticeConfig& cfg,
                                 const EmissionOptions& opt) {
  const auto [c_lo, c_hi] = w.central;
  if (!(c_hi > c_lo)) throw ConfigError("central window must have positive width");

  std::vector<Window> side;
  if (w.sidebands.empty()) {
    for (int p = 1; p < 3; ++p) {
      double lo = t.peaks[p].omega_p - w.sideband_half_width;
      double hi = t.peaks[p].omega_p + w.sideband_half_width;
      if (p == 1) hi = std::min(hi, c_lo);
      else lo = std::max(lo, c_hi);
      side.emplace_back(lo, hi);
    }
  } else {
    std::vector<Window> all = w.sidebands;
    all.push_back(w.central);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
      if (all[i].second > all[i + 1].first) throw ConfigError("frequency windows overlap");
    side = w.sidebands;
  }

  WindowIntegrals r;
  if (c_lo <= 0.0 && 0.0 <= c_hi)
    r.central_coh = t.coherent_weight * coherent_outcoupling(drive.k_laser_rad(), cfg);
  r.central_incoh = weighted_window(t, c_lo, c_hi, drive, cfg, opt);
  for (const auto& [lo, hi] : side) r.sidebands += weighted_window(t, lo, hi, drive, cfg, opt);
  return r;
}

IdentityCheck integral_identity_check(double k, const LatticeConfig& cfg, double tol) {
  validate(cfg);
  const double l = cfg.period;
  const Vec3& mu = cfg.dipole;
  // q = k sin(theta): the 1/k_z rim singularity cancels against the Jacobian.
  auto inner = [&](double theta) {
    auto f = [&](double phi) {
      const Vec2 q = k * std::sin(theta) * Vec2(std::cos(phi), std::sin(phi));
      const double kz = k * std::cos(theta);
      // k_z |E_0|^2 dq^2 with |E_0|^2 = k^2 T / (4 l^4 k_z^2)
      return k * k * transverse(q, kz, mu, k) / (4.0 * l * l * l * l) * k * std::sin(theta);
    };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, 2.0 * pi, 10, tol);
  };
  double err = 0.0;
  const double integral = gauss_kronrod<double, 31>::integrate(inner, 0.0, 0.5 * pi, 10, tol, &err);
  if (!(err <= 1e3 * tol * std::abs(integral)))
    throw NumericalError("integral identity: quadrature did not converge");
  IdentityCheck r;
  r.quadrature = l * l / (4.0 * pi * pi) * integral;
  r.closed_form = std::pow(k, 5) / (12.0 * pi * l * l);
  r.relative_error = std::abs(r.quadrature - r.closed_form) / r.closed_form;
  return r;
}

double incoherent_weight_integral(const LatticeConfig& cfg, double k, double tol) {
  auto inner = [&](double theta) {
    auto f = [&](double phi) {
      const Vec2 q = k * std::sin(theta) * Vec2(std::cos(phi), std::sin(phi));
      const double kz = k * std::cos(theta);
      // weight * q dq dphi with q dq = k_z k sin(theta) dtheta
      return 3.0 * transverse(q, kz, cfg.dipole, k) / (4.0 * pi * k * k * k) * k * std::sin(theta);
    };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, 2.0 * pi, 10, tol);
  };
  return gauss_kronrod<double, 31>::integrate(inner, 0.0, 0.5 * pi, 10, tol);
}

}  // namespace qlat
