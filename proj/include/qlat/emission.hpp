#pragma once

#include <utility>
#include <vector>

#include "qlat/spectrum.hpp"
#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

struct DiffractionOrder {
  Vec2 g;           // reciprocal vector, rad / lambda0
  Vec2 q;           // k_par + g
  double k_z = 0;   // out-of-plane wavevector
  double m_weight = 0;  // M_g in units of I_L per (rad/lambda0)
};

struct OrderList {
  std::vector<DiffractionOrder> orders;
  std::vector<Vec2> grazing;  // excluded orders with k_z < eps k
};

// Propagating orders |k_par + g| <= k.  k defaults to k0 (narrowband).
OrderList radiative_orders(const Vec2& k_par, const LatticeConfig& cfg, double k = k0,
                           double eps = 1e-9);

// Sum over propagating orders of k_z M_g, in units of I_L.  Equals gamma_k for
// an in-plane dipole.
double coherent_outcoupling(const Vec2& k_par, const LatticeConfig& cfg, double k = k0);

// (l^2 / 4 pi^2) k_z M_0(k_par) / I_L; zero outside the light circle and on
// its grazing rim.
double incoherent_weight(const Vec2& k_par, const LatticeConfig& cfg, double k = k0,
                         double eps = 1e-9);

struct IntensityRecord {
  double coherent = 0;            // delta(omega - omega_L) delta(k - k_L) weight, I_L
  double incoherent_density = 0;  // per unit omega and k-area, I_L
};

IntensityRecord intensity_bz(const Vec2& k_par, double omega, const MollowTriplet& t,
                             const DriveConfig& drive, const LatticeConfig& cfg);

struct EmissionOptions {
  bool narrowband = true;  // drop the (omega / omega_L)^4 factor
  // Broadband integrals are cut at |omega - omega_L| <= band (gamma0); the
  // weighted Lorentzian tails do not converge.
  double band = 1e4;
};

struct IntensitySpectrum {
  double coherent = 0;                 // delta weight at omega_L, I_L
  std::vector<double> incoherent;      // per unit omega, I_L
  double incoherent_total = 0;         // integrated over all omega, I_L
};

IntensitySpectrum intensity_spectrum(const std::vector<double>& omega, const MollowTriplet& t,
                                     const DriveConfig& drive, const LatticeConfig& cfg,
                                     const EmissionOptions& opt = {});

using Window = std::pair<double, double>;

struct WindowSpec {
  Window central{-1.0, 1.0};
  double sideband_half_width = 1.0;
  // Explicit sideband windows; empty selects omega_p +- half width for both
  // sidebands, clipped against the central window.
  std::vector<Window> sidebands;
};

struct WindowIntegrals {
  double central_coh = 0;
  double central_incoh = 0;
  double sidebands = 0;

  double central() const { return central_coh + central_incoh; }
};

// Throws ConfigError on overlapping explicit windows.
WindowIntegrals window_integrals(const MollowTriplet& t, const WindowSpec& w,
                                 const DriveConfig& drive, const LatticeConfig& cfg,
                                 const EmissionOptions& opt = {});

struct IdentityCheck {
  double quadrature;
  double closed_form;
  double relative_error;
};

// (l^2 / 4 pi^2) * integral over the light circle of k_z |E_0|^2 against its
// closed form, with c = eps0 = |mu| = 1 and omega = k.
IdentityCheck integral_identity_check(double k, const LatticeConfig& cfg, double tol = 1e-12);

// Integral over the light circle of incoherent_weight; 1 by construction.
double incoherent_weight_integral(const LatticeConfig& cfg, double k = k0, double tol = 1e-12);

}  // namespace qlat
