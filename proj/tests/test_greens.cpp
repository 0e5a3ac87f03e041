#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qlat/greens.hpp"

using namespace qlat;

namespace {

// Small-argument expansion of Im[mu.G(r).mu] for |mu| = 1 and r along n:
// k/(6 pi) [1 + x^2 (c^2 - 2)/10 + x^4 (3 - 2 c^2)/280 + x^6 (3 c^2 - 4)/15120]
// with x = kr and c = mu.n.
double im_series(double k, double r, double c) {
  const double x = k * r;
  const double x2 = x * x;
  return k / (6.0 * pi) *
         (1.0 + x2 * (c * c - 2.0) / 10.0 + x2 * x2 * (3.0 - 2.0 * c * c) / 280.0 +
          x2 * x2 * x2 * (3.0 * c * c - 4.0) / 15120.0);
}

}  // namespace

TEST_CASE("self term limit reproduces gamma_ii") {
  const Vec3 mu = Vec3::UnitX();
  for (double r : {3e-2, 1e-2, 1e-3}) {
    const Vec3 sep(r * 0.6, r * 0.8, 0.0);
    const double im = projected_green(sep, k0, mu).imag();
    CHECK(rel_err(im, im_series(k0, r, 0.6)) < 1e-9);
  }
  CHECK(rel_err(projected_green(Vec3(1e-3, 0, 0), k0, mu).imag(), self_green_imag(k0)) < 1e-4);
  // 2 * coupling * k0 / (6 pi) = 1
  LatticeConfig cfg;
  CHECK(pair_coupling(Vec3::Zero(), cfg).gamma == 1.0);
  CHECK(pair_coupling(Vec3::Zero(), cfg).self);
}

TEST_CASE("dyadic Green tensor is symmetric and matches the projection") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 r(u(rng), u(rng), u(rng));
    const Mat3c G = dyadic_green(r, k0);
    CHECK((G - G.transpose()).norm() < 1e-14 * G.norm());
    const Vec3 mu = Vec3(u(rng), u(rng), u(rng)).normalized();
    const cdouble p = mu.cast<cdouble>().dot(G * mu.cast<cdouble>());
    CHECK(rel_err(projected_green(r, k0, mu), p) < 1e-12);
    const Mat3c Gc = dyadic_green(r, cdouble(k0, 0.01));
    CHECK((Gc - Gc.transpose()).norm() < 1e-14 * Gc.norm());
  }
  CHECK_THROWS(dyadic_green(Vec3::Zero(), k0));
}

TEST_CASE("far field is transverse") {
  const Vec3 n = Vec3(0.3, -0.5, 0.8).normalized();
  const Vec3 mu = Vec3(0.6, 0.8, 0.0);
  const Vec3 r = n * (1e4 / k0);
  const Mat3c G = dyadic_green(r, k0);
  const cdouble radial = n.cast<cdouble>().dot(G * mu.cast<cdouble>());
  const double transverse_scale = G.norm();
  CHECK(std::abs(radial) < 1e-3 * transverse_scale);
}

TEST_CASE("pair couplings decay and are exchange symmetric") {
  LatticeConfig cfg;
  const Vec3 far(1e3, 0.0, 0.0);
  const PairCoupling p = pair_coupling(far, cfg);
  CHECK(std::abs(p.g) < 1e-3);
  CHECK(std::abs(p.gamma) < 1e-3);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const Vec3 r(u(rng), u(rng), 0.0);
    const PairCoupling a = pair_coupling(r, cfg), b = pair_coupling(-r, cfg);
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-14));
    CHECK(a.g == doctest::Approx(b.g).epsilon(1e-14));
    CHECK(std::abs(a.gamma) <= 1.0);
  }
}
