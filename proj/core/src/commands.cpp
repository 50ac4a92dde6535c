#include "zak/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "zak/report.hpp"
#include "zak/snapshot.hpp"
#include "zak/verify.hpp"
#include "zak/version.hpp"

namespace zak {

namespace {

namespace fs = std::filesystem;

bool has_format(const RunConfig& config, const std::string& token) {
  for (const auto& f : config.output.formats) {
    if (f == token) return true;
  }
  return false;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Plain structured metadata; wall time and version are informational and
// excluded from determinism guarantees.
std::string metadata_json(const std::string& command, const RunConfig& config,
                          double wall_seconds, const std::string& extra_fields) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"command\": \"" << json_escape(command) << "\",\n";
  os << "  \"seed\": " << config.data.seed << ",\n";
  os << "  \"grid\": {\"n\": " << config.grid.n << ", \"length\": " << num(config.grid.length)
     << "},\n";
  os << "  \"solver\": {\"alpha\": "
     << (std::isinf(config.solver.alpha) ? std::string("\"inf\"") : num(config.solver.alpha))
     << ", \"dt\": " << num(config.solver.dt) << ", \"t_final\": " << num(config.solver.t_final)
     << ", \"save_every\": ";
  if (config.solver.save_every == SolverParams::kSaveEndsOnly) {
    os << "\"inf\"";
  } else {
    os << config.solver.save_every;
  }
  os << "},\n";
  os << "  \"data\": {\"kind\": \""
     << (config.data.kind == DataRecipe::Kind::well_prepared ? "well_prepared"
                                                             : "ill_prepared")
     << "\", \"n_modes\": " << config.data.n_modes
     << ", \"eps_solenoidal\": " << num(config.data.eps_solenoidal)
     << ", \"alpha_coupling\": " << (config.data.alpha_coupling ? "true" : "false") << "},\n";
  os << "  \"alphas\": [";
  for (std::size_t i = 0; i < config.sweep.alphas.size(); ++i) {
    if (i) os << ", ";
    os << num(config.sweep.alphas[i]);
  }
  os << "],\n";
  if (!extra_fields.empty()) os << extra_fields;
  os << "  \"threads\": " << worker_count() << ",\n";
  os << "  \"version\": \"" << json_escape(kGitDescribe) << "\",\n";
  os << "  \"wall_time_s\": " << num(wall_seconds) << "\n";
  os << "}\n";
  return os.str();
}

fs::path ensure_output_dir(const RunConfig& config) {
  fs::path dir(config.output.dir);
  fs::create_directories(dir);
  return dir;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int fail_with(const std::string& what, bool quiet) {
  if (!quiet) std::cerr << "error: " << what << "\n";
  return 1;
}

}  // namespace

int cmd_simulate(const RunConfig& config, bool quiet) {
  Timer timer;
  try {
    const fs::path dir = ensure_output_dir(config);
    const GridPtr grid = make_grid(config.grid.n, config.grid.length);
    const SolverParams params = config.solver_params();
    const SystemState initial = gen_initial(config.recipe(), grid, params.alpha);

    const Trajectory traj = run(initial, params);

    // per-sample diagnostics table
    std::ostringstream csv;
    csv << "t,mass,hamiltonian,residual\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%.12e,%.12e,%.12e,%.12e\n", traj.sample_time(i),
                    traj.diagnostics[i].mass, traj.diagnostics[i].hamiltonian,
                    traj.diagnostics[i].residual);
      csv << buf;
    }
    if (has_format(config, "csv")) {
      write_text_file((dir / "diagnostics.csv").string(), csv.str());
    }

    if (has_format(config, "snapshots")) {
      const double alpha = config.solver.alpha;
      for (std::size_t i = 0; i < traj.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06zu_u.zkf", i);
        write_snapshot((dir / name).string(), traj.samples[i].u, traj.sample_time(i), alpha);
      }
    }

    write_text_file((dir / "metadata.json").string(),
                    metadata_json("simulate", config, timer.seconds(), ""));
    if (!quiet) {
      std::cout << "simulate: " << traj.size() << " samples to " << dir.string() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    return fail_with(e.what(), quiet);
  }
}

int cmd_sweep(const RunConfig& config, bool quiet) {
  Timer timer;
  fs::path dir;
  try {
    dir = ensure_output_dir(config);
  } catch (const std::exception& e) {
    return fail_with(e.what(), quiet);
  }

  std::vector<SweepRecord> records;
  bool diverged = false;
  try {
    const GridPtr grid = make_grid(config.grid.n, config.grid.length);
    records = alpha_sweep(config.recipe(), grid, config.solver_params(1.0),
                          config.sweep.alphas);
    for (const auto& r : records) diverged = diverged || r.diverged;

    write_text_file((dir / "results.csv").string(), sweep_csv(records));

    std::string rate_note;
    try {
      const RateFit fit = fit_rate(records);
      write_text_file((dir / "rate.txt").string(), rate_txt(fit));
      if (has_format(config, "svg")) {
        const CsvTable table = parse_csv(sweep_csv(records));
        write_text_file((dir / "plot.svg").string(), plot_svg(table, fit));
      }
      if (!quiet) {
        std::cout << "sweep: slope " << fit.slope << " (r^2 " << fit.r_squared << ") over "
                  << fit.points << " points\n";
      }
    } catch (const std::exception& e) {
      rate_note = e.what();
      if (!quiet) std::cerr << "sweep: rate fit skipped: " << rate_note << "\n";
    }

    std::ostringstream extra;
    extra << "  \"diverged_runs\": " << std::count_if(records.begin(), records.end(),
                                                      [](const SweepRecord& r) {
                                                        return r.diverged;
                                                      })
          << ",\n";
    write_text_file((dir / "metadata.json").string(),
                    metadata_json("sweep", config, timer.seconds(), extra.str()));
    return diverged ? 2 : 0;
  } catch (const std::exception& e) {
    // flush whatever was computed before reporting failure
    if (!records.empty()) {
      write_text_file((dir / "results.csv").string(), sweep_csv(records));
    }
    return fail_with(e.what(), quiet);
  }
}

int cmd_strichartz(const RunConfig& config, bool quiet) {
  Timer timer;
  try {
    const fs::path dir = ensure_output_dir(config);
    const GridPtr grid = make_grid(config.grid.n, config.grid.length);

    // localized packet: free-space dispersive decay is visible pre-wrap
    const VectorField f =
        gen_packet(grid, config.data.seed, config.data.n_modes, 1.0 / 12.0);

    const std::vector<DecayRecord> records =
        strichartz_decay(f, config.sweep.alphas, config.strichartz.q, config.strichartz.r,
                         config.solver.t_final);

    write_text_file((dir / "results.csv").string(), decay_csv(records));

    std::vector<std::pair<double, double>> xy;
    for (const auto& r : records) xy.emplace_back(r.alpha, r.norm);
    std::string fit_text = "fit unavailable\n";
    double slope = 0.0;
    try {
      const RateFit fit = fit_rate(xy);
      fit_text = rate_txt(fit);
      slope = fit.slope;
    } catch (const std::exception&) {
      // constant-in-alpha norms (q = inf) are fit as slope 0 upstream
    }
    write_text_file((dir / "rate.txt").string(), fit_text);

    std::ostringstream extra;
    extra << "  \"strichartz\": {\"q\": "
          << (std::isinf(config.strichartz.q) ? std::string("\"inf\"")
                                              : num(config.strichartz.q))
          << ", \"r\": " << num(config.strichartz.r)
          << ", \"wrap_time\": " << num(wrap_time(*grid)) << "},\n";
    write_text_file((dir / "metadata.json").string(),
                    metadata_json("strichartz", config, timer.seconds(), extra.str()));
    if (!quiet) {
      std::cout << "strichartz: fitted slope " << slope << ", box wrap time "
                << wrap_time(*grid) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    return fail_with(e.what(), quiet);
  }
}

int cmd_layer(const RunConfig& config, bool quiet) {
  Timer timer;
  try {
    const fs::path dir = ensure_output_dir(config);
    const GridPtr grid = make_grid(config.grid.n, config.grid.length);

    DataRecipe recipe = config.recipe();
    recipe.kind = DataRecipe::Kind::ill_prepared;

    const std::vector<LayerRecord> records =
        initial_layer_demo(recipe, grid, config.solver_params(1.0), config.sweep.alphas);
    write_text_file((dir / "results.csv").string(), layer_csv(records));

    bool diverged = false;
    for (const auto& r : records) diverged = diverged || r.diverged;

    write_text_file((dir / "metadata.json").string(),
                    metadata_json("layer", config, timer.seconds(), ""));
    if (!quiet) std::cout << "layer: " << records.size() << " alphas\n";
    return diverged ? 2 : 0;
  } catch (const std::exception& e) {
    return fail_with(e.what(), quiet);
  }
}

int cmd_verify(bool quiet) {
  const std::vector<VerifyResult> results = run_verify();
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    if (!quiet || !r.pass) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.group << " - " << r.detail << "\n";
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_plot(const std::string& csv_path, const std::string& output_dir, bool quiet) {
  try {
    const CsvTable table = parse_csv(read_text_file(csv_path));
    std::vector<std::pair<double, double>> xy;
    const std::size_t cx = table.column("alpha");
    const std::size_t cy = table.column("err_total");
    for (const auto& row : table.rows) xy.emplace_back(row[cx], row[cy]);
    const RateFit fit = fit_rate(xy);

    fs::path dir(output_dir);
    fs::create_directories(dir);
    const fs::path out = dir / "plot.svg";
    write_text_file(out.string(), plot_svg(table, fit));
    if (!quiet) std::cout << "plot: " << out.string() << " (slope " << fit.slope << ")\n";
    return 0;
  } catch (const std::exception& e) {
    return fail_with(e.what(), quiet);
  }
}

}  // namespace zak
