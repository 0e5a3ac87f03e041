#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlat/types.hpp"
#include "qlat/units.hpp"

namespace qlat {

// Every key is optional; see README for the schema.
struct RunConfig {
  LatticeConfig lattice;
  DriveConfig drive;

  double sweep_min = 0.0;   // |Omega|, gamma0
  double sweep_max = 5.0;
  int sweep_points = 201;

  int grid = 201;                  // BZ map points per axis
  double broadening_length = 25.0; // L in units of l
  std::string branch = "upper";    // lower | middle | upper, when several roots exist

  int spectrum_points = 2001;
  bool include_dispersive = false;
  bool narrowband = true;

  double central_lo = -1.0, central_hi = 1.0;
  double sideband_half_width = 1.0;
  std::vector<std::pair<double, double>> sidebands;

  std::string sum_method = "ewald";  // ewald | direct
  std::vector<Vec2> k_points;        // units of 2 pi / lambda0; empty -> grid over the zone

  std::vector<Vec3> positions{Vec3::Zero()};
  bool interactions = true;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

// Throws ConfigError for unreadable files, bad JSON, or invalid values.
RunConfig load_config(const std::string& path);

}  // namespace qlat
