#include "qlat/config.hpp"

#include <fstream>
#include <set>

namespace qlat {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <typename T>
void get(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

cdouble get_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("complex values are a number or [re, im]");
}

Vec2 get_vec2(const json& v) {
  if (!v.is_array() || v.size() != 2) throw ConfigError("expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

Vec3 get_vec3(const json& v) {
  if (!v.is_array() || v.size() != 3) throw ConfigError("expected [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json vec(const Vec2& v) { return json::array({v.x(), v.y()}); }
json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    only_keys(j, {"lattice", "drive", "sweep", "grid", "broadening_length", "branch", "spectrum",
                  "emission", "windows", "lattice_sum", "ensemble"},
              "config");
    if (j.contains("lattice")) {
      const json& l = j["lattice"];
      only_keys(l, {"period", "dipole", "omega0_over_gamma0"}, "lattice");
      get(l, "period", c.lattice.period);
      if (l.contains("dipole")) c.lattice.dipole = get_vec3(l["dipole"]);
      get(l, "omega0_over_gamma0", c.lattice.omega0_over_gamma0);
    }
    if (j.contains("drive")) {
      const json& d = j["drive"];
      only_keys(d, {"omega", "delta", "k_laser"}, "drive");
      if (d.contains("omega")) c.drive.omega = get_complex(d["omega"]);
      get(d, "delta", c.drive.delta);
      if (d.contains("k_laser")) c.drive.k_laser = get_vec2(d["k_laser"]);
    }
    if (j.contains("sweep")) {
      const json& s = j["sweep"];
      only_keys(s, {"omega_min", "omega_max", "points"}, "sweep");
      get(s, "omega_min", c.sweep_min);
      get(s, "omega_max", c.sweep_max);
      get(s, "points", c.sweep_points);
    }
    get(j, "grid", c.grid);
    get(j, "broadening_length", c.broadening_length);
    get(j, "branch", c.branch);
    if (j.contains("spectrum")) {
      const json& s = j["spectrum"];
      only_keys(s, {"points", "include_dispersive"}, "spectrum");
      get(s, "points", c.spectrum_points);
      get(s, "include_dispersive", c.include_dispersive);
    }
    if (j.contains("emission")) {
      only_keys(j["emission"], {"narrowband"}, "emission");
      get(j["emission"], "narrowband", c.narrowband);
    }
    if (j.contains("windows")) {
      const json& w = j["windows"];
      only_keys(w, {"central", "sideband_half_width", "sidebands"}, "windows");
      if (w.contains("central")) {
        const Vec2 v = get_vec2(w["central"]);
        c.central_lo = v.x();
        c.central_hi = v.y();
      }
      get(w, "sideband_half_width", c.sideband_half_width);
      if (w.contains("sidebands"))
        for (const auto& s : w["sidebands"]) {
          const Vec2 v = get_vec2(s);
          c.sidebands.emplace_back(v.x(), v.y());
        }
    }
    if (j.contains("lattice_sum")) {
      const json& s = j["lattice_sum"];
      only_keys(s, {"method", "k_points"}, "lattice_sum");
      get(s, "method", c.sum_method);
      if (s.contains("k_points"))
        for (const auto& k : s["k_points"]) c.k_points.push_back(get_vec2(k));
    }
    if (j.contains("ensemble")) {
      const json& e = j["ensemble"];
      only_keys(e, {"positions", "interactions"}, "ensemble");
      if (e.contains("positions")) {
        c.positions.clear();
        for (const auto& p : e["positions"]) c.positions.push_back(get_vec3(p));
      }
      get(e, "interactions", c.interactions);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  validate(c.lattice);
  validate(c.drive);
  if (c.sweep_points < 2 || !(c.sweep_max > c.sweep_min) || c.sweep_min < 0.0)
    throw ConfigError("sweep needs omega_max > omega_min >= 0 and at least 2 points");
  if (c.grid < 2) throw ConfigError("grid must be at least 2");
  if (!(c.broadening_length >= 1.0)) throw ConfigError("broadening_length must be >= 1 (units of l)");
  if (c.branch != "lower" && c.branch != "middle" && c.branch != "upper")
    throw ConfigError("branch must be lower, middle or upper");
  if (c.spectrum_points < 2) throw ConfigError("spectrum points must be at least 2");
  if (!(c.central_hi > c.central_lo)) throw ConfigError("central window must have positive width");
  if (!(c.sideband_half_width > 0.0)) throw ConfigError("sideband_half_width must be positive");
  if (c.sum_method != "ewald" && c.sum_method != "direct")
    throw ConfigError("lattice_sum.method must be ewald or direct");
  return c;
}

json to_json(const RunConfig& c) {
  json sides = json::array();
  for (const auto& [lo, hi] : c.sidebands) sides.push_back({lo, hi});
  json ks = json::array();
  for (const auto& k : c.k_points) ks.push_back(vec(k));
  json pos = json::array();
  for (const auto& p : c.positions) pos.push_back(vec(p));
  return {
      {"lattice",
       {{"period", c.lattice.period},
        {"dipole", vec(c.lattice.dipole)},
        {"omega0_over_gamma0", c.lattice.omega0_over_gamma0}}},
      {"drive",
       {{"omega", {c.drive.omega.real(), c.drive.omega.imag()}},
        {"delta", c.drive.delta},
        {"k_laser", vec(c.drive.k_laser)}}},
      {"sweep", {{"omega_min", c.sweep_min}, {"omega_max", c.sweep_max}, {"points", c.sweep_points}}},
      {"grid", c.grid},
      {"broadening_length", c.broadening_length},
      {"branch", c.branch},
      {"spectrum", {{"points", c.spectrum_points}, {"include_dispersive", c.include_dispersive}}},
      {"emission", {{"narrowband", c.narrowband}}},
      {"windows",
       {{"central", {c.central_lo, c.central_hi}},
        {"sideband_half_width", c.sideband_half_width},
        {"sidebands", sides}}},
      {"lattice_sum", {{"method", c.sum_method}, {"k_points", ks}}},
      {"ensemble", {{"positions", pos}, {"interactions", c.interactions}}},
  };
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace qlat
