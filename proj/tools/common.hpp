#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qlat/config.hpp"
#include "qlat/csv.hpp"
#include "qlat/emission.hpp"
#include "qlat/meanfield.hpp"
#include "qlat/spectrum.hpp"

namespace qlat::cli {

struct Context {
  std::string command;
  std::string preset;
  std::string out_dir = ".";
  RunConfig cfg;
  int threads = 0;
  std::vector<std::string> outputs;
  nlohmann::json notes = nlohmann::json::array();

  std::string path(const std::string& name) const;
  void write_csv(const std::string& name, const CsvTable& t);
  void write_json(const std::string& name, const nlohmann::json& j);
  void write_manifest();
};

std::vector<double> linspace(double lo, double hi, int n);

// Mean-field roots with the lattice sum at k_L and omega0.
cdouble laser_gbar(const RunConfig& cfg);

// Requested branch if present, otherwise the single stable root.
MeanFieldBranch pick_branch(const RootSet& roots, const std::string& name);

// Mollow triplet, nudging |Omega_eff| by 1e-9 relative at an exceptional point.
MollowTriplet safe_triplet(cdouble omega_eff, double delta, Context& ctx);

WindowSpec window_spec(const RunConfig& cfg);

}  // namespace qlat::cli
