#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlat/types.hpp"

namespace qlat {

enum class Stability { stable, metastable };
enum class BranchId { lower, middle, upper };

std::string to_string(Stability s);
std::string to_string(BranchId b);

struct MeanFieldBranch {
  double x = 0.0;  // |Omega_eff|^2, gamma0^2
  cdouble omega_eff;
  Stability stability = Stability::stable;
  BranchId branch_id = BranchId::lower;
};

// Coefficients (c0, c1, c2, c3) of the self-consistency cubic in x.
std::array<double, 4> self_consistency_cubic(cdouble omega, double delta, cdouble g_bar);

struct RootSet {
  std::vector<MeanFieldBranch> branches;  // ascending x, 1 or 3 entries
  bool ill_conditioned = false;
  std::vector<MeanFieldBranch> alternative;  // the other reading of a near-double root
};

RootSet self_consistency_roots(cdouble omega, double delta, cdouble g_bar);

// Omega_eff = Omega / (1 - C / (a + 8x)) for a root x.
cdouble effective_drive(cdouble omega, double delta, cdouble g_bar, double x);

// |Omega|^2 as a function of x along the S-curve and its x-derivative sign.
double drive_squared_on_curve(double x, double delta, cdouble g_bar);

struct FoldPoint {
  double x;
  double omega;  // |Omega| at the fold
};

// Turning points of the S-curve with x > 0, ascending in x.  Empty when the
// response is single valued.
std::vector<FoldPoint> fold_points(double delta, cdouble g_bar);

// Relabels branches in place by the slope of |Omega|^2(x).
void classify_stability(std::vector<MeanFieldBranch>& branches, double delta, cdouble g_bar);

enum class SweepDirection { up, down };

struct SweepOptions {
  double max_log_jump = 2.302585092994046;  // ln 10 on x / |Omega|^2
};

struct HysteresisTrace {
  std::vector<double> omega_grid;  // ascending |Omega|
  std::vector<MeanFieldBranch> up_branch;
  std::vector<MeanFieldBranch> down_branch;
  std::vector<std::size_t> up_jumps;    // indices where the up sweep changed branch
  std::vector<std::size_t> down_jumps;
  std::vector<std::size_t> coarse;      // unexplained jumps, grid too coarse
};

// Follows one stable branch along an ascending grid of |Omega| (real drive).
// The result is indexed like the grid regardless of direction.
std::vector<MeanFieldBranch> sweep(const std::vector<double>& omega_grid, double delta,
                                   cdouble g_bar, SweepDirection dir,
                                   std::vector<std::size_t>* jumps = nullptr,
                                   std::vector<std::size_t>* coarse = nullptr,
                                   const SweepOptions& opt = {});

HysteresisTrace hysteresis_sweep(const std::vector<double>& omega_grid, double delta,
                                 cdouble g_bar, const SweepOptions& opt = {});

}  // namespace qlat
