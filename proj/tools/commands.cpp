#include "commands.hpp"

#include <cmath>

#include "qlat/emission.hpp"
#include "qlat/lattice_sum.hpp"
#include "qlat/observables.hpp"
#include "qlat/oracle.hpp"
#include "qlat/parallel.hpp"

namespace qlat::cli {
namespace {

using nlohmann::json;

json complex_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(complex_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

// Centered Gaussian of width 2 pi / L, normalized over the plane.
double display_gauss(const Vec2& d, double sigma) {
  return std::exp(-0.5 * d.squaredNorm() / (sigma * sigma)) / (2.0 * pi * sigma * sigma);
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
  return linspace(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
}

}  // namespace

void cmd_lattice_sum(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  std::vector<Vec2> ks;
  if (!cfg.k_points.empty()) {
    for (const auto& k : cfg.k_points) ks.push_back(k0 * k);
  } else {
    const double h = pi / cfg.lattice.period;
    for (double ky : linspace(-h, h, cfg.grid))
      for (double kx : linspace(-h, h, cfg.grid)) ks.emplace_back(kx, ky);
  }
  std::vector<LatticeSumResult> res(ks.size());
  if (cfg.sum_method == "direct") {
    if (ks.size() > 64)
      throw ConfigError("the direct sum is a reference evaluator; give at most 64 k points");
    DirectOptions opt;
    opt.threads = ctx.threads;
    res = lattice_sum_direct(cfg.lattice, ks, k0, opt);
  } else {
    parallel_for(ks.size(), ctx.threads,
                 [&](std::size_t i) { res[i] = lattice_sum_ewald(cfg.lattice, ks[i]); });
  }
  CsvTable t({"kx", "ky", "re_gbar", "im_gbar", "delta_k", "gamma_k", "err"});
  int failed = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto d = dispersion_from_gbar(res[i].g_bar, cfg.drive.delta);
    t.add_row({ks[i].x() / k0, ks[i].y() / k0, res[i].g_bar.real(), res[i].g_bar.imag(),
               d.delta_k, d.gamma_k, res[i].err_estimate});
    failed += !res[i].converged;
  }
  if (failed) ctx.notes.push_back({{"unconverged_points", failed}});
  ctx.write_csv("lattice_sum.csv", t);
}

void cmd_meanfield_sweep(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const cdouble gbar = laser_gbar(cfg);
  const auto grid = sweep_grid(cfg);
  CsvTable t({"omega", "branch_id", "x", "re_omega_eff", "im_omega_eff", "stable"});
  json ill = json::array();
  for (double w : grid) {
    const RootSet roots = self_consistency_roots(cdouble(w, 0.0), cfg.drive.delta, gbar);
    if (roots.ill_conditioned) ill.push_back(w);
    for (const auto& b : roots.branches)
      t.add_row({w, to_string(b.branch_id), b.x, b.omega_eff.real(), b.omega_eff.imag(),
                 long(b.stability == Stability::stable)});
  }
  ctx.write_csv("meanfield_sweep.csv", t);

  const HysteresisTrace h = hysteresis_sweep(grid, cfg.drive.delta, gbar);
  json folds = json::array();
  for (const auto& f : fold_points(cfg.drive.delta, gbar)) folds.push_back({{"x", f.x}, {"omega", f.omega}});
  auto at = [&](const std::vector<std::size_t>& idx) {
    json a = json::array();
    for (auto i : idx) a.push_back(grid[i]);
    return a;
  };
  json side{{"g_bar", complex_json(gbar)},
            {"folds", folds},
            {"up_jumps", at(h.up_jumps)},
            {"down_jumps", at(h.down_jumps)},
            {"coarse_grid_points", at(h.coarse)},
            {"ill_conditioned", ill}};
  if (folds.size() == 2) side["bistable_interval"] = {folds[1]["omega"], folds[0]["omega"]};
  ctx.write_json("meanfield_folds.json", side);
}

CsvTable bz_population_table(const RunConfig& cfg, cdouble omega_eff, int threads) {
  const BZPopulation pop = bz_population(omega_eff, cfg.drive.delta, cfg.lattice, cfg.drive);
  BZMapOptions opt;
  opt.length_over_period = cfg.broadening_length;
  BZPopulation coh = pop, inc = pop;
  coh.incoh_density = 0.0;
  inc.coh_weight = 0.0;
  const BZGrid g = broadened_bz_map(coh, cfg.grid, opt, threads);
  CsvTable t({"kx", "ky", "n_coh", "n_incoh", "n_total"});
  for (int j = 0; j < g.n; ++j)
    for (int i = 0; i < g.n; ++i) {
      const double c = g.values[std::size_t(j) * g.n + i];
      t.add_row({g.kx[i] / k0, g.ky[j] / k0, c, inc.incoh_density, c + inc.incoh_density});
    }
  return t;
}

void cmd_bz_population(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RootSet roots = self_consistency_roots(cfg.drive.omega, cfg.drive.delta, laser_gbar(cfg));
  const MeanFieldBranch b = pick_branch(roots, cfg.branch);
  ctx.write_csv("bz_population.csv", bz_population_table(cfg, b.omega_eff, ctx.threads));
}

void cmd_population_sweep(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const cdouble gbar = laser_gbar(cfg);
  CsvTable t({"omega", "branch_id", "n_coh", "n_incoh", "n_total"});
  for (double w : sweep_grid(cfg))
    for (const auto& b : self_consistency_roots(cdouble(w, 0.0), cfg.drive.delta, gbar).branches) {
      const auto p = population_per_emitter(b.omega_eff, cfg.drive.delta);
      t.add_row({w, to_string(b.branch_id), p.coh, p.incoh, p.total});
    }
  ctx.write_csv("population_sweep.csv", t);
}

json spectrum_json(const MollowTriplet& t) {
  json peaks = json::array();
  for (const auto& p : t.peaks)
    peaks.push_back({{"omega_p", p.omega_p}, {"gamma_p", p.gamma_p}, {"L_p", p.L_p}, {"K_p", p.K_p}});
  return {{"peaks", peaks}, {"coherent_weight", t.coherent_weight}, {"condition", t.condition}};
}

void cmd_spectrum(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RootSet roots = self_consistency_roots(cfg.drive.omega, cfg.drive.delta, laser_gbar(cfg));
  const MeanFieldBranch b = pick_branch(roots, cfg.branch);
  const MollowTriplet tr = safe_triplet(b.omega_eff, cfg.drive.delta, ctx);
  const double span = 4.0 * std::abs(b.omega_eff) + 10.0;
  CsvTable t({"omega", "s_incoherent"});
  for (double w : linspace(-span, span, cfg.spectrum_points))
    t.add_row({w, incoherent_spectrum(tr, w, cfg.include_dispersive)});
  ctx.write_csv("spectrum.csv", t);
  json j = spectrum_json(tr);
  j["omega_eff"] = complex_json(b.omega_eff);
  j["branch_id"] = to_string(b.branch_id);
  ctx.write_json("spectrum.json", j);
}

CsvTable intensity_map_table(const RunConfig& cfg, const MollowTriplet& tr, int threads) {
  const LatticeConfig& lat = cfg.lattice;
  const WindowIntegrals w = window_integrals(tr, window_spec(cfg), cfg.drive, lat);
  const double all = incoherent_window(tr, -INFINITY, INFINITY);
  const double coh = tr.coherent_weight * coherent_outcoupling(cfg.drive.k_laser_rad(), lat);
  const double sigma = 2.0 * pi / (cfg.broadening_length * lat.period);
  const double K = std::max(pi / lat.period, k0);
  const auto axis = linspace(-K, K, cfg.grid);
  const int n = cfg.grid;
  std::vector<std::array<double, 3>> vals(std::size_t(n) * n);
  parallel_for(std::size_t(n), threads, [&](std::size_t j) {
    for (int i = 0; i < n; ++i) {
      const Vec2 k(axis[i], axis[j]);
      const double m = incoherent_weight(k, lat);
      const double c = coh * display_gauss(k - cfg.drive.k_laser_rad(), sigma);
      const double c_central = w.central_coh > 0.0 ? c : 0.0;
      vals[j * n + i] = {c_central + m * w.central_incoh, m * w.sidebands, c + m * all};
    }
  });
  CsvTable t({"kx", "ky", "i_central", "i_sidebands", "i_total"});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto& v = vals[std::size_t(j) * n + i];
      t.add_row({axis[i] / k0, axis[j] / k0, v[0], v[1], v[2]});
    }
  return t;
}

void cmd_intensity_map(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const RootSet roots = self_consistency_roots(cfg.drive.omega, cfg.drive.delta, laser_gbar(cfg));
  const MeanFieldBranch b = pick_branch(roots, cfg.branch);
  const MollowTriplet tr = safe_triplet(b.omega_eff, cfg.drive.delta, ctx);
  ctx.write_csv("intensity_map.csv", intensity_map_table(cfg, tr, ctx.threads));
}

void cmd_intensity_sweep(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const cdouble gbar = laser_gbar(cfg);
  EmissionOptions eo;
  eo.narrowband = cfg.narrowband;
  CsvTable t({"omega_drive", "branch_id", "i_central_coh", "i_central_incoh", "i_sidebands"});
  for (double w : sweep_grid(cfg))
    for (const auto& b : self_consistency_roots(cdouble(w, 0.0), cfg.drive.delta, gbar).branches) {
      const MollowTriplet tr = safe_triplet(b.omega_eff, cfg.drive.delta, ctx);
      const WindowIntegrals wi = window_integrals(tr, window_spec(cfg), cfg.drive, cfg.lattice, eo);
      t.add_row({w, to_string(b.branch_id), wi.central_coh, wi.central_incoh, wi.sidebands});
    }
  ctx.write_csv("intensity_sweep.csv", t);
}

void cmd_oracle(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const EmitterEnsemble e = make_ensemble(cfg.positions, cfg.drive, cfg.lattice, cfg.interactions);
  const MatrixXcd L = build_liouvillian(e);
  const DensityState ss = steady_state(L);
  const MeanFieldComparison c = mf_vs_exact(e);
  const MatrixXcd s0 = lowering(e.size(), 0);
  const QrtResult q = qrt_correlator(L, ss, s0.adjoint(), s0, {});
  json poles = json::array();
  for (std::size_t k = 0; k < q.poles.size(); ++k)
    poles.push_back({{"pole", complex_json(q.poles[k])}, {"residue", complex_json(q.residues[k])}});
  json sig_exact = json::array(), sig_mf = json::array();
  for (int i = 0; i < e.size(); ++i) {
    sig_exact.push_back(complex_json(c.sigma_exact(i)));
    sig_mf.push_back(complex_json(c.sigma_mf(i)));
  }
  ctx.write_json("oracle.json",
                 {{"populations", c.pop_exact},
                  {"populations_mean_field", c.pop_mf},
                  {"sigma", sig_exact},
                  {"sigma_mean_field", sig_mf},
                  {"coherences", matrix_json(c.coherence_exact)},
                  {"coherences_mean_field", matrix_json(c.coherence_mf)},
                  {"connected", matrix_json(c.connected)},
                  {"max_population_rel_diff", c.max_pop_rel_diff},
                  {"null_gap", ss.null_gap},
                  {"site0_emission_poles", poles}});
}

}  // namespace qlat::cli
