#include "cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qlat/parallel.hpp"

namespace qlat::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::function<void(Context&)>> commands{
      {"lattice-sum", cmd_lattice_sum},         {"meanfield-sweep", cmd_meanfield_sweep},
      {"bz-population", cmd_bz_population},     {"population-sweep", cmd_population_sweep},
      {"spectrum", cmd_spectrum},               {"intensity-map", cmd_intensity_map},
      {"intensity-sweep", cmd_intensity_sweep}, {"oracle", cmd_oracle},
  };

  CLI::App app{"Steady-state optics of driven two-level emitter lattices", "qlat"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".", preset;
  int grid = 0, threads = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid", grid, "grid points (sweeps and maps)")->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  };
  for (const auto& [name, fn] : commands) common(app.add_subcommand(name));
  CLI::App* fig = app.add_subcommand("fig", "figure data presets");
  common(fig);
  fig->add_option("preset,--preset", preset, "fig1b, fig1b-inset, fig2a, fig2b, fig3a ... fig3e");

  std::vector<const char*> argv{"qlat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  Context ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.out_dir = out_dir;
  ctx.threads = resolve_threads(threads);
  ctx.preset = preset;
  try {
    if (!config_path.empty()) ctx.cfg = load_config(config_path);
    if (grid > 0) {
      ctx.cfg.grid = grid;
      ctx.cfg.sweep_points = std::max(grid, 2);
    }
    if (ctx.command == "fig" && preset.empty()) {
      err << "fig: missing preset\n";
      return usage_error;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!std::filesystem::is_directory(out_dir)) throw OutputError("cannot create " + out_dir);

    if (ctx.command == "fig") {
      if (!cmd_fig(ctx)) {
        err << "fig: unknown preset '" << preset << "'\n";
        return usage_error;
      }
    } else {
      commands.at(ctx.command)(ctx);
    }
    ctx.write_manifest();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << '\n';
    return output_error;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return numerical_error;
  }
  for (const auto& o : ctx.outputs) out << ctx.path(o) << '\n';
  return ok;
}

}  // namespace qlat::cli
