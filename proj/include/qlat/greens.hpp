#pragma once

#include <stdexcept>

#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

// Free-space dyadic Green tensor at separation r for wavenumber k.  K may be
// real or complex; a complex k is how the damped direct sum enters.
template <typename K>
Mat3c dyadic_green(const Vec3& r, K k) {
  const double d = r.norm();
  if (!(d > 0.0)) throw std::domain_error("dyadic_green: r = 0");
  const Vec3 n = r / d;
  const cdouble kr = cdouble(k) * d;
  const cdouble inv = 1.0 / kr;
  const cdouble pref = std::exp(I * kr) / (4.0 * pi * d);
  const cdouble a = 1.0 + I * inv - inv * inv;
  const cdouble b = -1.0 - 3.0 * I * inv + 3.0 * inv * inv;
  Mat3c g = (b * pref) * (n * n.transpose()).cast<cdouble>();
  g.diagonal().array() += a * pref;
  return g;
}

// mu . G(r) . mu without building the tensor.
template <typename K>
cdouble projected_green(const Vec3& r, K k, const Vec3& mu) {
  const double d = r.norm();
  if (!(d > 0.0)) throw std::domain_error("projected_green: r = 0");
  const double c = mu.dot(r) / d;
  const cdouble kr = cdouble(k) * d;
  const cdouble inv = 1.0 / kr;
  return std::exp(I * kr) / (4.0 * pi * d) *
         ((1.0 + I * inv - inv * inv) + (-1.0 - 3.0 * I * inv + 3.0 * inv * inv) * c * c);
}

// Limit of Im[mu.G(r).mu] for r -> 0.
inline double self_green_imag(double k) { return k / (6.0 * pi); }

struct PairCoupling {
  double g = 0.0;       // coherent exchange, gamma0
  double gamma = 0.0;   // dissipative coupling, gamma0
  Vec3 separation = Vec3::Zero();
  bool self = false;
};

// Couplings evaluated at omega0.  A zero separation is the self pair
// (gamma_ii = gamma0, g_ii excluded).
PairCoupling pair_coupling(const Vec3& separation, const LatticeConfig& cfg);

}  // namespace qlat
