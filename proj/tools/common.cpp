#include "common.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>

#include "qlat/lattice_sum.hpp"

#ifndef QLAT_VERSION
#define QLAT_VERSION "dev"
#endif

namespace qlat::cli {

std::string Context::path(const std::string& name) const {
  return (std::filesystem::path(out_dir) / name).string();
}

void Context::write_csv(const std::string& name, const CsvTable& t) {
  write_text(path(name), t.str());
  outputs.push_back(name);
}

void Context::write_json(const std::string& name, const nlohmann::json& j) {
  write_text(path(name), j.dump(2) + "\n");
  outputs.push_back(name);
}

void Context::write_manifest() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::json m{{"command", command},
                   {"config", to_json(cfg)},
                   {"outputs", outputs},
                   {"version", QLAT_VERSION},
                   {"timestamp", stamp},
                   {"threads", threads}};
  if (!preset.empty()) m["preset"] = preset;
  if (!notes.empty()) m["notes"] = notes;
  write_text(path("manifest.json"), m.dump(2) + "\n");
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

cdouble laser_gbar(const RunConfig& cfg) {
  return lattice_sum(cfg.lattice, cfg.drive.k_laser_rad()).g_bar;
}

MeanFieldBranch pick_branch(const RootSet& roots, const std::string& name) {
  for (const auto& b : roots.branches)
    if (to_string(b.branch_id) == name) return b;
  for (const auto& b : roots.branches)
    if (b.stability == Stability::stable) return b;
  return roots.branches.front();
}

MollowTriplet safe_triplet(cdouble omega_eff, double delta, Context& ctx) {
  try {
    return mollow_triplet(omega_eff, delta);
  } catch (const NumericalError&) {
    const cdouble nudged = omega_eff * (1.0 + 1e-9);
    ctx.notes.push_back({{"exceptional_point_nudge",
                          {{"re_omega_eff", omega_eff.real()},
                           {"im_omega_eff", omega_eff.imag()},
                           {"delta", delta}}}});
    return mollow_triplet(nudged, delta);
  }
}

WindowSpec window_spec(const RunConfig& cfg) {
  WindowSpec w;
  w.central = {cfg.central_lo, cfg.central_hi};
  w.sideband_half_width = cfg.sideband_half_width;
  w.sidebands = cfg.sidebands;
  return w;
}

}  // namespace qlat::cli
