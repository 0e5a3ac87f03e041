#include <cmath>
#include <functional>
#include <map>

#include "commands.hpp"
#include "qlat/emission.hpp"
#include "qlat/lattice_sum.hpp"
#include "qlat/observables.hpp"

namespace qlat::cli {
namespace {

using Builder = std::function<void(Context&)>;

RunConfig with_period(const RunConfig& base, double l) {
  RunConfig c = base;
  c.lattice.period = l;
  c.drive.delta = 0.0;
  c.drive.k_laser = Vec2::Zero();
  return c;
}

std::vector<double> omega_axis(const Context& ctx, double hi) {
  return linspace(0.0, hi, ctx.cfg.sweep_points);
}

void fig1b(Context& ctx) {
  const RunConfig cfg = with_period(ctx.cfg, 0.5);
  const cdouble gbar = laser_gbar(cfg);
  const Dispersion d = dispersion_from_gbar(gbar, 0.0);
  CsvTable t({"omega", "n_coh", "n_incoh", "n_total", "n_classical"});
  for (double w : omega_axis(ctx, 5.0)) {
    const auto b = self_consistency_roots(cdouble(w, 0.0), 0.0, gbar).branches.front();
    const auto p = population_per_emitter(b.omega_eff, 0.0);
    t.add_row({w, p.coh, p.incoh, p.total, classical_population(w, d.delta_k, d.gamma_k)});
  }
  ctx.write_csv("fig1b.csv", t);
}

void fig1b_inset(Context& ctx) {
  RunConfig cfg = with_period(ctx.cfg, 0.5);
  cfg.drive.omega = 2.0;
  cfg.broadening_length = 25.0;
  const auto b = self_consistency_roots(cfg.drive.omega, 0.0, laser_gbar(cfg)).branches.front();
  ctx.write_csv("fig1b_inset.csv", bz_population_table(cfg, b.omega_eff, ctx.threads));

  const BZPopulation pop = bz_population(b.omega_eff, 0.0, cfg.lattice, cfg.drive);
  BZPopulation coh = pop;
  coh.incoh_density = 0.0;
  BZMapOptions opt;
  CsvTable cut({"kx", "n_coh", "n_incoh", "n_total"});
  const double h = pi / cfg.lattice.period;
  for (double kx : linspace(-h, h, cfg.grid)) {
    const double c = broadened_population(coh, Vec2(kx, 0.0), opt);
    cut.add_row({kx / k0, c, pop.incoh_density, c + pop.incoh_density});
  }
  ctx.write_csv("fig1b_inset_cut.csv", cut);
}

void fig2a(Context& ctx) {
  RunConfig cfg = with_period(ctx.cfg, 0.5);
  cfg.drive.omega = 4.0;
  cfg.broadening_length = 25.0;
  const cdouble gbar = laser_gbar(cfg);
  const auto b = self_consistency_roots(cfg.drive.omega, 0.0, gbar).branches.front();
  const MollowTriplet tr = safe_triplet(b.omega_eff, 0.0, ctx);
  const WindowIntegrals w = window_integrals(tr, window_spec(cfg), cfg.drive, cfg.lattice);
  const Dispersion d = dispersion_from_gbar(gbar, 0.0);
  const double coh = tr.coherent_weight * coherent_outcoupling(Vec2::Zero(), cfg.lattice);
  const double classical =
      classical_population(cfg.drive.omega, d.delta_k, d.gamma_k) * coherent_outcoupling(Vec2::Zero(), cfg.lattice);
  const double sigma = 2.0 * pi / (cfg.broadening_length * cfg.lattice.period);
  auto gauss = [&](const Vec2& k) {
    return std::exp(-0.5 * k.squaredNorm() / (sigma * sigma)) / (2.0 * pi * sigma * sigma);
  };

  // Gamma -> X -> M -> Gamma, parametrized by path length in 2 pi / lambda0.
  const double h = pi / cfg.lattice.period;
  const std::vector<Vec2> corners{{0.0, 0.0}, {h, 0.0}, {h, h}, {0.0, 0.0}};
  CsvTable t({"s", "kx", "ky", "i_central", "i_central_classical"});
  double s0 = 0.0;
  for (std::size_t seg = 0; seg + 1 < corners.size(); ++seg) {
    const Vec2 a = corners[seg], e = corners[seg + 1];
    const int n = cfg.grid;
    for (int i = seg == 0 ? 0 : 1; i < n; ++i) {
      const double f = double(i) / (n - 1);
      const Vec2 k = a + f * (e - a);
      const double s = s0 + f * (e - a).norm();
      t.add_row({s / k0, k.x() / k0, k.y() / k0,
                 coh * gauss(k) + incoherent_weight(k, cfg.lattice) * w.central_incoh,
                 classical * gauss(k)});
    }
    s0 += (e - a).norm();
  }
  ctx.write_csv("fig2a.csv", t);
  ctx.write_csv("fig2a_map.csv", intensity_map_table(cfg, tr, ctx.threads));
}

void fig2b(Context& ctx) {
  const RunConfig cfg = with_period(ctx.cfg, 0.5);
  const cdouble gbar = laser_gbar(cfg);
  const Dispersion d = dispersion_from_gbar(gbar, 0.0);
  const double out = coherent_outcoupling(Vec2::Zero(), cfg.lattice);
  CsvTable t({"omega", "i_central", "i_central_coh", "i_central_incoh", "i_sidebands", "i_classical"});
  for (double w : omega_axis(ctx, 10.0)) {
    const auto b = self_consistency_roots(cdouble(w, 0.0), 0.0, gbar).branches.front();
    const MollowTriplet tr = safe_triplet(b.omega_eff, 0.0, ctx);
    const WindowIntegrals wi = window_integrals(tr, window_spec(cfg), cfg.drive, cfg.lattice);
    t.add_row({w, wi.central(), wi.central_coh, wi.central_incoh, wi.sidebands,
               classical_population(w, d.delta_k, d.gamma_k) * out});
  }
  ctx.write_csv("fig2b.csv", t);

  const auto b = self_consistency_roots(cdouble(4.0, 0.0), 0.0, gbar).branches.front();
  const MollowTriplet tr = safe_triplet(b.omega_eff, 0.0, ctx);
  const double span = 4.0 * std::abs(b.omega_eff) + 10.0;
  CsvTable inset({"omega", "s_incoherent", "s_incoherent_dispersive"});
  for (double w : linspace(-span, span, cfg.spectrum_points))
    inset.add_row({w, incoherent_spectrum(tr, w, false), incoherent_spectrum(tr, w, true)});
  ctx.write_csv("fig2b_inset.csv", inset);
}

// One row per root for l in {0.5, 0.999, 0.9999}.
void fig3_periods(Context& ctx, const std::string& name, std::vector<std::string> cols,
                  const std::function<std::vector<CsvTable::Cell>(const MollowTriplet&,
                                                                  const MeanFieldBranch&)>& row) {
  std::vector<std::string> header{"period", "omega", "branch_id", "stable"};
  header.insert(header.end(), cols.begin(), cols.end());
  CsvTable t(header);
  for (double l : {0.5, 0.999, 0.9999}) {
    const RunConfig cfg = with_period(ctx.cfg, l);
    const cdouble gbar = laser_gbar(cfg);
    for (double w : omega_axis(ctx, 10.0))
      for (const auto& b : self_consistency_roots(cdouble(w, 0.0), 0.0, gbar).branches) {
        const MollowTriplet tr = safe_triplet(b.omega_eff, 0.0, ctx);
        std::vector<CsvTable::Cell> r{l, w, to_string(b.branch_id),
                                      long(b.stability == Stability::stable)};
        for (auto& c : row(tr, b)) r.push_back(c);
        t.add_row(r);
      }
  }
  ctx.write_csv(name, t);
}

// Up and down sweeps plus the metastable branch at l = 0.9999.
void fig3_hysteresis(Context& ctx, const std::string& name, std::vector<std::string> cols,
                     const std::function<std::vector<CsvTable::Cell>(const MeanFieldBranch&)>& row) {
  const RunConfig cfg = with_period(ctx.cfg, 0.9999);
  const cdouble gbar = laser_gbar(cfg);
  const auto grid = omega_axis(ctx, 10.0);
  const HysteresisTrace h = hysteresis_sweep(grid, 0.0, gbar);
  std::vector<std::string> header{"omega", "sweep", "branch_id"};
  header.insert(header.end(), cols.begin(), cols.end());
  CsvTable t(header);
  auto emit = [&](double w, const char* sweep, const MeanFieldBranch& b) {
    std::vector<CsvTable::Cell> r{w, std::string(sweep), to_string(b.branch_id)};
    for (auto& c : row(b)) r.push_back(c);
    t.add_row(r);
  };
  for (std::size_t i = 0; i < grid.size(); ++i) emit(grid[i], "up", h.up_branch[i]);
  for (std::size_t i = 0; i < grid.size(); ++i) emit(grid[i], "down", h.down_branch[i]);
  for (double w : grid)
    for (const auto& b : self_consistency_roots(cdouble(w, 0.0), 0.0, gbar).branches)
      if (b.stability == Stability::metastable) emit(w, "metastable", b);
  ctx.write_csv(name, t);
}

const std::map<std::string, Builder>& presets() {
  static const std::map<std::string, Builder> table{
      {"fig1b", fig1b},
      {"fig1b-inset", fig1b_inset},
      {"fig2a", fig2a},
      {"fig2b", fig2b},
      {"fig3a",
       [](Context& ctx) {
         fig3_periods(ctx, "fig3a.csv", {"abs_omega_eff"},
                      [](const MollowTriplet&, const MeanFieldBranch& b) {
                        return std::vector<CsvTable::Cell>{std::abs(b.omega_eff)};
                      });
       }},
      {"fig3b",
       [](Context& ctx) {
         fig3_periods(ctx, "fig3b.csv", {"omega_central", "omega_minus", "omega_plus"},
                      [](const MollowTriplet& t, const MeanFieldBranch&) {
                        return std::vector<CsvTable::Cell>{t.peaks[0].omega_p, t.peaks[1].omega_p,
                                                           t.peaks[2].omega_p};
                      });
       }},
      {"fig3c",
       [](Context& ctx) {
         fig3_periods(ctx, "fig3c.csv", {"gamma_central", "gamma_minus", "gamma_plus"},
                      [](const MollowTriplet& t, const MeanFieldBranch&) {
                        return std::vector<CsvTable::Cell>{t.peaks[0].gamma_p, t.peaks[1].gamma_p,
                                                           t.peaks[2].gamma_p};
                      });
       }},
      {"fig3d",
       [](Context& ctx) {
         fig3_hysteresis(ctx, "fig3d.csv", {"n_coh", "n_incoh", "n_total"},
                         [](const MeanFieldBranch& b) {
                           const auto p = population_per_emitter(b.omega_eff, 0.0);
                           return std::vector<CsvTable::Cell>{p.coh, p.incoh, p.total};
                         });
       }},
      {"fig3e",
       [](Context& ctx) {
         const RunConfig cfg = with_period(ctx.cfg, 0.9999);
         fig3_hysteresis(ctx, "fig3e.csv",
                         {"i_central", "i_central_coh", "i_central_incoh", "i_sidebands"},
                         [&](const MeanFieldBranch& b) {
                           const MollowTriplet t = safe_triplet(b.omega_eff, 0.0, ctx);
                           const WindowIntegrals w =
                               window_integrals(t, window_spec(cfg), cfg.drive, cfg.lattice);
                           return std::vector<CsvTable::Cell>{w.central(), w.central_coh,
                                                              w.central_incoh, w.sidebands};
                         });
       }},
  };
  return table;
}

}  // namespace

bool cmd_fig(Context& ctx) {
  const auto& table = presets();
  const auto it = table.find(ctx.preset);
  if (it == table.end()) return false;
  it->second(ctx);
  return true;
}

}  // namespace qlat::cli
