// Command line front end: simulate | sweep | strichartz | layer | verify | plot.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "zak/commands.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string output_dir;
  std::optional<long long> seed;
  std::string alphas_csv;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Configuration file (key = value lines)");
  cmd->add_option("--output", opts.output_dir, "Output directory (overrides output.dir)");
  cmd->add_option("--seed", opts.seed, "Seed override (overrides data.seed)");
  cmd->add_option("--alphas", opts.alphas_csv,
                  "Comma-separated alpha list (overrides sweep.alphas)");
  cmd->add_flag("--quiet", opts.quiet, "Suppress progress output");
}

zak::RunConfig build_config(const CommonOpts& opts) {
  zak::RunConfig config;
  if (!opts.config_path.empty()) config = zak::load_config_file(opts.config_path);
  if (!opts.output_dir.empty()) config.output.dir = opts.output_dir;
  if (opts.seed) {
    if (*opts.seed < 0) throw zak::ConfigError("--seed must be nonnegative");
    config.data.seed = static_cast<std::uint64_t>(*opts.seed);
  }
  if (!opts.alphas_csv.empty()) {
    // reuse the config parser for validation and error wording
    zak::RunConfig patch = zak::parse_config("sweep.alphas = " + opts.alphas_csv + "\n");
    config.sweep.alphas = patch.sweep.alphas;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral lab for the 3D vectorial Zakharov system and its "
               "electrostatic limit"};
  app.require_subcommand(1);

  CommonOpts sim_opts, sweep_opts, str_opts, layer_opts;
  bool verify_quiet = false;
  std::string plot_csv, plot_out = ".";
  bool plot_quiet = false;

  CLI::App* sim = app.add_subcommand("simulate", "Run one trajectory and write diagnostics");
  add_common(sim, sim_opts);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Alpha sweep of the full system against the limit system");
  add_common(sweep, sweep_opts);

  CLI::App* strich = app.add_subcommand(
      "strichartz", "Fast-group space-time norm decay measurement");
  add_common(strich, str_opts);

  CLI::App* layer = app.add_subcommand(
      "layer", "Initial-layer demonstration on ill-prepared data");
  add_common(layer, layer_opts);

  CLI::App* verify = app.add_subcommand("verify", "Run the built-in invariant suites");
  verify->add_flag("--quiet", verify_quiet, "Only report failures");

  CLI::App* plot = app.add_subcommand("plot", "Render a sweep CSV as a log-log SVG");
  plot->add_option("csv", plot_csv, "results.csv produced by sweep")->required();
  plot->add_option("--output", plot_out, "Output directory");
  plot->add_flag("--quiet", plot_quiet, "Suppress progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return zak::cmd_simulate(build_config(sim_opts), sim_opts.quiet);
    if (sweep->parsed()) return zak::cmd_sweep(build_config(sweep_opts), sweep_opts.quiet);
    if (strich->parsed()) return zak::cmd_strichartz(build_config(str_opts), str_opts.quiet);
    if (layer->parsed()) return zak::cmd_layer(build_config(layer_opts), layer_opts.quiet);
    if (verify->parsed()) return zak::cmd_verify(verify_quiet);
    if (plot->parsed()) return zak::cmd_plot(plot_csv, plot_out, plot_quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
