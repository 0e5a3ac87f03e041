#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qlat/lattice_sum.hpp"
#include "qlat/meanfield.hpp"

using namespace qlat;

namespace {

cdouble gamma_point_gbar(double l) {
  LatticeConfig c;
  c.period = l;
  return lattice_sum_ewald(c, Vec2::Zero()).g_bar;
}

double cubic(const std::array<double, 4>& c, double x) {
  return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

// Positive roots counted by sign changes on a fine grid up to the Cauchy bound.
int count_positive_roots(const std::array<double, 4>& c) {
  double bound = 1.0;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, 1.0 + std::abs(c[i] / c[3]));
  const int n = 200000;
  int changes = 0;
  double prev = cubic(c, 0.0);
  for (int i = 1; i <= n; ++i) {
    // quadratic spacing resolves the small-x region
    const double t = double(i) / n;
    const double v = cubic(c, bound * t * t);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace

TEST_CASE("roots satisfy the self-consistency condition") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.0, 8.0);
  for (int i = 0; i < 300; ++i) {
    const cdouble g(u(rng) * 5.0, -std::abs(u(rng)) * 0.2);
    const double delta = u(rng);
    const cdouble omega = std::polar(w(rng), u(rng));
    const RootSet rs = self_consistency_roots(omega, delta, g);
    REQUIRE(!rs.branches.empty());
    const auto c = self_consistency_cubic(omega, delta, g);
    if (!rs.ill_conditioned) CHECK(int(rs.branches.size()) == count_positive_roots(c));
    for (const auto& b : rs.branches) {
      CHECK(b.x >= 0.0);
      CHECK(std::norm(b.omega_eff) == doctest::Approx(b.x).epsilon(1e-9));
      CHECK(rel_err(b.omega_eff, effective_drive(omega, delta, g, b.x)) < 1e-12);
      CHECK(drive_squared_on_curve(b.x, delta, g) == doctest::Approx(std::norm(omega)).epsilon(1e-8));
    }
  }
}

TEST_CASE("no lattice coupling means no renormalization") {
  for (double w : {0.1, 1.0, 7.0}) {
    const RootSet rs = self_consistency_roots(cdouble(w, 0.0), 0.3, 0.0);
    REQUIRE(rs.branches.size() == 1);
    CHECK(rs.branches[0].x == doctest::Approx(w * w).epsilon(1e-12));
  }
  CHECK(self_consistency_roots(0.0, 0.0, gamma_point_gbar(0.5)).branches[0].x == 0.0);
}

TEST_CASE("weak drive reduces to the linear collective response") {
  for (double l : {0.5, 0.8}) {
    const cdouble g = gamma_point_gbar(l);
    for (double delta : {0.0, 0.4, -1.1}) {
      const Dispersion d = dispersion_from_gbar(g, delta);
      const cdouble omega(1e-4, 0.0);
      const cdouble lin = omega * cdouble(delta, 0.5) / cdouble(d.delta_k, 0.5 * d.gamma_k);
      const RootSet rs = self_consistency_roots(omega, delta, g);
      REQUIRE(rs.branches.size() == 1);
      CHECK(rel_err(rs.branches[0].omega_eff, lin) < 1e-6);
    }
  }
}

TEST_CASE("strong drive saturates to the bare drive") {
  const cdouble g = gamma_point_gbar(0.5);
  double prev = 1.0;
  for (double w : {10.0, 30.0, 100.0, 300.0}) {
    const auto b = self_consistency_roots(cdouble(w, 0.0), 0.0, g).branches.back();
    const double dev = std::abs(std::sqrt(b.x) / w - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("folds and stability near the first anomaly") {
  const cdouble g = gamma_point_gbar(0.9999);
  const auto folds = fold_points(0.0, g);
  REQUIRE(folds.size() == 2);
  // the lower fold in x is the upper fold in drive
  CHECK(folds[0].x < folds[1].x);
  CHECK(folds[0].omega > folds[1].omega);
  CHECK(fold_points(0.0, gamma_point_gbar(0.5)).empty());

  const double mid = 0.5 * (folds[0].omega + folds[1].omega);
  const RootSet rs = self_consistency_roots(cdouble(mid, 0.0), 0.0, g);
  REQUIRE(rs.branches.size() == 3);
  CHECK(rs.branches[0].branch_id == BranchId::lower);
  CHECK(rs.branches[1].branch_id == BranchId::middle);
  CHECK(rs.branches[2].branch_id == BranchId::upper);
  CHECK(rs.branches[0].stability == Stability::stable);
  CHECK(rs.branches[1].stability == Stability::metastable);
  CHECK(rs.branches[2].stability == Stability::stable);

  CHECK(self_consistency_roots(cdouble(0.5 * folds[1].omega, 0.0), 0.0, g).branches.size() == 1);
  CHECK(self_consistency_roots(cdouble(1.5 * folds[0].omega, 0.0), 0.0, g).branches.size() == 1);
}

TEST_CASE("hysteresis jumps sit at the folds and converge under refinement") {
  const cdouble g = gamma_point_gbar(0.9999);
  const auto folds = fold_points(0.0, g);
  REQUIRE(folds.size() == 2);
  for (int n : {101, 401, 1601}) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = 10.0 * i / (n - 1);
    const double h = grid[1];
    const HysteresisTrace t = hysteresis_sweep(grid, 0.0, g);
    REQUIRE(t.up_jumps.size() == 1);
    REQUIRE(t.down_jumps.size() == 1);
    CHECK(t.coarse.empty());
    // up sweep leaves the lower branch past the high-drive fold
    const double up = grid[t.up_jumps[0]];
    CHECK(up >= folds[0].omega);
    CHECK(up - folds[0].omega <= h + 1e-12);
    const double down = grid[t.down_jumps[0]];
    CHECK(down <= folds[1].omega);
    CHECK(folds[1].omega - down <= h + 1e-12);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(t.up_branch[i].stability == Stability::stable);
      CHECK(t.down_branch[i].x >= t.up_branch[i].x - 1e-12);
    }
  }
}
