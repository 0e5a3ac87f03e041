#pragma once

#include "common.hpp"

namespace qlat::cli {

void cmd_lattice_sum(Context& ctx);
void cmd_meanfield_sweep(Context& ctx);
void cmd_bz_population(Context& ctx);
void cmd_population_sweep(Context& ctx);
void cmd_spectrum(Context& ctx);
void cmd_intensity_map(Context& ctx);
void cmd_intensity_sweep(Context& ctx);
void cmd_oracle(Context& ctx);

// Returns false for an unknown preset.
bool cmd_fig(Context& ctx);

// Shared table builders, also used by the presets.
CsvTable bz_population_table(const RunConfig& cfg, cdouble omega_eff, int threads);
CsvTable intensity_map_table(const RunConfig& cfg, const MollowTriplet& t, int threads);
nlohmann::json spectrum_json(const MollowTriplet& t);

}  // namespace qlat::cli
