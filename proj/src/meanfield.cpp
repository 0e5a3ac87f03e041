#include "qlat/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/Polynomials>

namespace qlat {
namespace {

cdouble coupling_c(double delta, cdouble g_bar) {
  return I * 2.0 * cdouble(1.0, 2.0 * delta) * 1.5 * g_bar;
}

double eval(const std::array<double, 4>& c, double x) {
  return ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
}

double polish(const std::array<double, 4>& c, double x) {
  const double d = (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1];
  if (d != 0.0) {
    const double next = x - eval(c, x) / d;
    if (std::isfinite(next) && std::abs(eval(c, next)) <= std::abs(eval(c, x))) return next;
  }
  return x;
}

// Real roots of a cubic via the companion matrix, with the imaginary parts
// of any complex pair, both ascending.
void cubic_roots(const std::array<double, 4>& c, std::vector<double>& real,
                 std::vector<cdouble>& complex) {
  Eigen::Vector4d coeffs(c[0], c[1], c[2], c[3]);
  Eigen::PolynomialSolver<double, 3> solver(coeffs);
  real.clear();
  complex.clear();
  for (const cdouble& z : solver.roots()) {
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)))
      real.push_back(polish(c, z.real()));
    else if (z.imag() > 0.0)
      complex.push_back(z);
  }
  std::sort(real.begin(), real.end());
}

MeanFieldBranch make_branch(cdouble omega, double delta, cdouble g_bar, double x) {
  MeanFieldBranch b;
  b.x = std::max(x, 0.0);
  b.omega_eff = effective_drive(omega, delta, g_bar, b.x);
  return b;
}

}  // namespace

std::string to_string(Stability s) { return s == Stability::stable ? "stable" : "metastable"; }

std::string to_string(BranchId b) {
  switch (b) {
    case BranchId::lower: return "lower";
    case BranchId::middle: return "middle";
    default: return "upper";
  }
}

std::array<double, 4> self_consistency_cubic(cdouble omega, double delta, cdouble g_bar) {
  const double a = 1.0 + 4.0 * delta * delta;
  const cdouble C = coupling_c(delta, g_bar);
  const double w2 = std::norm(omega);
  const double b = a - C.real();
  return {-a * a * w2, b * b + C.imag() * C.imag() - 16.0 * a * w2, 16.0 * b - 64.0 * w2, 64.0};
}

cdouble effective_drive(cdouble omega, double delta, cdouble g_bar, double x) {
  const double a = 1.0 + 4.0 * delta * delta;
  return omega / (1.0 - coupling_c(delta, g_bar) / (a + 8.0 * x));
}

double drive_squared_on_curve(double x, double delta, cdouble g_bar) {
  const double a = 1.0 + 4.0 * delta * delta;
  const cdouble C = coupling_c(delta, g_bar);
  const double b = a - C.real();
  const double s = 8.0 * x + b;
  return x * (s * s + C.imag() * C.imag()) / ((a + 8.0 * x) * (a + 8.0 * x));
}

std::vector<FoldPoint> fold_points(double delta, cdouble g_bar) {
  const double a = 1.0 + 4.0 * delta * delta;
  const cdouble C = coupling_c(delta, g_bar);
  const double b = a - C.real();
  const double B = b * b + C.imag() * C.imag();
  const std::array<double, 4> c{a * B, 32.0 * a * b - 8.0 * B, 192.0 * a, 512.0};
  std::vector<double> real;
  std::vector<cdouble> cplx;
  cubic_roots(c, real, cplx);
  std::vector<FoldPoint> out;
  for (double x : real)
    if (x > 0.0) out.push_back({x, std::sqrt(drive_squared_on_curve(x, delta, g_bar))});
  // A tangency (double root) is not a fold.
  if (out.size() != 2) out.clear();
  return out;
}

void classify_stability(std::vector<MeanFieldBranch>& branches, double delta, cdouble g_bar) {
  std::sort(branches.begin(), branches.end(),
            [](const auto& l, const auto& r) { return l.x < r.x; });
  if (branches.size() == 3) {
    branches[0].branch_id = BranchId::lower;
    branches[1].branch_id = BranchId::middle;
    branches[2].branch_id = BranchId::upper;
    branches[0].stability = branches[2].stability = Stability::stable;
    branches[1].stability = Stability::metastable;
    return;
  }
  const auto folds = fold_points(delta, g_bar);
  for (auto& b : branches) {
    b.stability = Stability::stable;
    b.branch_id = BranchId::lower;
    if (folds.size() == 2 && b.x > folds[1].x) b.branch_id = BranchId::upper;
  }
}

RootSet self_consistency_roots(cdouble omega, double delta, cdouble g_bar) {
  RootSet out;
  if (omega == 0.0) {
    out.branches.push_back(make_branch(omega, delta, g_bar, 0.0));
    classify_stability(out.branches, delta, g_bar);
    return out;
  }
  const auto c = self_consistency_cubic(omega, delta, g_bar);
  std::vector<double> real;
  std::vector<cdouble> cplx;
  cubic_roots(c, real, cplx);
  std::erase_if(real, [](double x) { return x < 0.0; });

  const double scale = std::max(1.0, real.empty() ? 1.0 : real.back());
  const double near = 1e-6 * scale;
  auto to_branches = [&](const std::vector<double>& xs) {
    std::vector<MeanFieldBranch> v;
    for (double x : xs) v.push_back(make_branch(omega, delta, g_bar, x));
    classify_stability(v, delta, g_bar);
    return v;
  };

  if (real.size() == 3) {
    const double gap_lo = real[1] - real[0], gap_hi = real[2] - real[1];
    if (gap_lo < near || gap_hi < near) {
      out.ill_conditioned = true;
      out.alternative = to_branches(real);
      out.branches = to_branches({gap_lo < near ? real[2] : real[0]});
      return out;
    }
  }
  if (real.size() == 1 && cplx.size() == 1 && std::abs(cplx[0].imag()) < near &&
      cplx[0].real() > 0.0) {
    out.ill_conditioned = true;
    std::vector<double> all{real[0], cplx[0].real(), cplx[0].real()};
    std::sort(all.begin(), all.end());
    out.alternative = to_branches(all);
  }
  if (real.size() == 2) {
    // Only possible through rounding at a tangency: keep the far root.
    out.ill_conditioned = true;
    out.alternative = to_branches({real[0], real[1], real[1]});
    real = {real[0]};
  }
  out.branches = to_branches(real);
  return out;
}

std::vector<MeanFieldBranch> sweep(const std::vector<double>& grid, double delta, cdouble g_bar,
                                   SweepDirection dir, std::vector<std::size_t>* jumps,
                                   std::vector<std::size_t>* coarse, const SweepOptions& opt) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be ascending");
  const std::size_t n = grid.size();
  std::vector<MeanFieldBranch> out(n);
  std::optional<MeanFieldBranch> prev;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t i = dir == SweepDirection::up ? s : n - 1 - s;
    const RootSet roots = self_consistency_roots(cdouble(grid[i], 0.0), delta, g_bar);
    std::vector<MeanFieldBranch> stable;
    for (const auto& b : roots.branches)
      if (b.stability == Stability::stable) stable.push_back(b);

    if (!prev) {
      out[i] = dir == SweepDirection::up ? stable.front() : stable.back();
      prev = out[i];
      continue;
    }
    const MeanFieldBranch* pick = nullptr;
    for (const auto& b : stable)
      if (b.branch_id == prev->branch_id &&
          (!pick || std::abs(b.x - prev->x) < std::abs(pick->x - prev->x)))
        pick = &b;
    bool jumped = false;
    if (!pick) {
      // Followed branch ended at a fold; continue on the nearest stable one.
      for (const auto& b : stable)
        if (!pick || std::abs(b.x - prev->x) < std::abs(pick->x - prev->x)) pick = &b;
      jumped = true;
      if (jumps) jumps->push_back(i);
    }
    if (!jumped && coarse && prev->x > 0.0 && pick->x > 0.0) {
      const double w_prev = grid[dir == SweepDirection::up ? i - 1 : i + 1];
      const double r_prev = prev->x / (w_prev * w_prev);
      const double r = pick->x / (grid[i] * grid[i]);
      if (std::abs(std::log(r / r_prev)) > opt.max_log_jump) coarse->push_back(i);
    }
    out[i] = *pick;
    prev = *pick;
  }
  return out;
}

HysteresisTrace hysteresis_sweep(const std::vector<double>& grid, double delta, cdouble g_bar,
                                 const SweepOptions& opt) {
  HysteresisTrace t;
  t.omega_grid = grid;
  t.up_branch = sweep(grid, delta, g_bar, SweepDirection::up, &t.up_jumps, &t.coarse, opt);
  t.down_branch = sweep(grid, delta, g_bar, SweepDirection::down, &t.down_jumps, &t.coarse, opt);
  std::sort(t.coarse.begin(), t.coarse.end());
  t.coarse.erase(std::unique(t.coarse.begin(), t.coarse.end()), t.coarse.end());
  return t;
}

}  // namespace qlat
