#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>

#include "zak/commands.hpp"
#include "zak/report.hpp"
#include "zak/snapshot.hpp"
#include "zak/verify.hpp"

using namespace zak;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / name;
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str(const std::string& child = "") const {
    return (child.empty() ? path : path / child).string();
  }
};

std::string slurp(const std::string& path) { return read_text_file(path); }

// tiny but nontrivial run for command-level tests
RunConfig tiny_config(const std::string& out_dir) {
  RunConfig c = parse_config(
      "grid.n = 8\n"
      "solver.dt = 0.005\n"
      "solver.t_final = 0.05\n"
      "solver.save_every = 2\n"
      "data.n_modes = 2\n"
      "sweep.alphas = 1,4,16\n");
  c.output.dir = out_dir;
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("parse_config: defaults, overrides, comments") {
  RunConfig defaults = parse_config("");
  CHECK(defaults.grid.n == 32);
  CHECK(defaults.grid.length == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(defaults.solver.dt == 1e-3);
  CHECK(defaults.solver.t_final == 0.5);
  CHECK(defaults.solver.save_every == 10);
  CHECK(std::isinf(defaults.solver.alpha));
  CHECK(defaults.sweep.alphas == std::vector<double>{1, 2, 4, 8, 16, 32, 64});
  CHECK(defaults.data.kind == DataRecipe::Kind::well_prepared);

  RunConfig c = parse_config(
      "# a comment line\n"
      "grid.n = 16   # trailing comment\n"
      "\n"
      "solver.dt = 0.002\n"
      "data.kind = ill_prepared\n"
      "data.alpha_coupling = false\n"
      "sweep.alphas = 1, 3, 9\n"
      "solver.alpha = 8\n");
  CHECK(c.grid.n == 16);
  CHECK(c.solver.dt == 0.002);
  CHECK(c.data.kind == DataRecipe::Kind::ill_prepared);
  CHECK(c.data.alpha_coupling == false);
  CHECK(c.sweep.alphas == std::vector<double>{1, 3, 9});
  CHECK(c.solver.alpha == 8.0);

  // round trip through the serialized form
  RunConfig again = parse_config(config_to_text(c));
  CHECK(again.grid.n == c.grid.n);
  CHECK(again.solver.dt == c.solver.dt);
  CHECK(again.sweep.alphas == c.sweep.alphas);
}

TEST_CASE("parse_config: the documented sample round-trips") {
  // keep in sync with the sample block in README.md
  const std::string sample =
      "grid.n = 32                  # points per dimension, power of two\n"
      "grid.length = 6.283185307179586  # box period L (default 2 pi)\n"
      "solver.alpha = inf           # finite -> full system, inf -> limit system\n"
      "solver.dt = 0.001\n"
      "solver.t_final = 0.5\n"
      "solver.save_every = 10       # sample cadence; \"inf\" = first/last only\n"
      "data.seed = 1\n"
      "data.kind = well_prepared    # or ill_prepared\n"
      "data.n_modes = 3             # band limit of the random data\n"
      "data.eps_solenoidal = 0.25   # size of the solenoidal component of u0\n"
      "data.alpha_coupling = true   # scale that component like 1/alpha\n"
      "sweep.alphas = 1,2,4,8,16,32,64\n"
      "strichartz.q = 2             # admissible pair for the decay experiment\n"
      "strichartz.r = 6\n"
      "output.dir = out\n"
      "output.formats = csv,svg     # csv | svg | snapshots\n";
  RunConfig parsed = parse_config(sample);
  RunConfig defaults;
  CHECK(config_to_text(parsed) == config_to_text(defaults));
}

TEST_CASE("ZAK_THREADS caps the worker count") {
  setenv("ZAK_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("ZAK_THREADS", "not-a-number", 1);
  CHECK(worker_count() == 1);
  unsetenv("ZAK_THREADS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("parse_config: errors carry the line number and key") {
  try {
    parse_config("grid.n = 16\nsolver.dt = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("solver.dt") != std::string::npos);
  }

  try {
    parse_config("no.such.key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config("grid.n = seven\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n 16\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.n = 12\n"), ConfigError);  // not a power of two
  CHECK_THROWS_AS(parse_config("solver.alpha = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("output.formats = csv,bmp\n"), ConfigError);
}

TEST_CASE("snapshot: bit-exact round trip for both kinds") {
  TempDir dir("zak_test_snapshot");
  auto grid = make_grid(8, 2.0 * std::numbers::pi);
  DataRecipe r;
  r.seed = 5;
  r.n_modes = 2;
  SystemState s = gen_initial(r, grid, AlphaParam(2.0));

  const std::string vec_path = dir.str("u.zkf");
  write_snapshot(vec_path, s.u, 0.125, 2.0);
  Snapshot vec = read_snapshot(vec_path);
  REQUIRE(vec.vector.has_value());
  CHECK(vec.time == 0.125);
  CHECK(vec.alpha == 2.0);
  const std::string vec_path2 = dir.str("u2.zkf");
  write_snapshot(vec_path2, *vec.vector, vec.time, vec.alpha);
  CHECK(slurp(vec_path) == slurp(vec_path2));

  const std::string sc_path = dir.str("n.zkf");
  write_snapshot(sc_path, s.n, 0.25, std::numeric_limits<double>::infinity());
  Snapshot sc = read_snapshot(sc_path);
  REQUIRE(sc.scalar.has_value());
  CHECK(sc.alpha == -1.0);  // limit encoding
  const std::string sc_path2 = dir.str("n2.zkf");
  write_snapshot(sc_path2, *sc.scalar, sc.time, sc.alpha);
  CHECK(slurp(sc_path) == slurp(sc_path2));

  // payload length is part of the contract
  const auto vec_size = fs::file_size(vec_path);
  const auto sc_size = fs::file_size(sc_path);
  const std::size_t header = 6 + 2 + 1 + 4 + 8 + 8 + 8;
  CHECK(vec_size == header + 8 * grid->size() * 6);
  CHECK(sc_size == header + 8 * grid->size() * 1);
}

TEST_CASE("snapshot: malformed files surface errors") {
  TempDir dir("zak_test_snapbad");
  auto grid = make_grid(8, 1.0);
  ScalarField f = ScalarField::zeros(grid);
  const std::string path = dir.str("f.zkf");
  write_snapshot(path, f, 0.0, 1.0);

  std::string bytes = slurp(path);

  // truncated payload
  write_text_file(dir.str("trunc.zkf"), bytes.substr(0, bytes.size() - 9));
  CHECK_THROWS_AS(read_snapshot(dir.str("trunc.zkf")), SnapshotError);

  // bad magic
  std::string bad = bytes;
  bad[0] = 'X';
  write_text_file(dir.str("magic.zkf"), bad);
  CHECK_THROWS_AS(read_snapshot(dir.str("magic.zkf")), SnapshotError);

  CHECK_THROWS_AS(read_snapshot(dir.str("absent.zkf")), SnapshotError);
}

TEST_CASE("csv parsing and the rate file") {
  CsvTable t = parse_csv("alpha,err_total\n1,1.0\n2,0.5\n4,0.25\n");
  CHECK(t.rows.size() == 3);
  CHECK(t.column("err_total") == 1);
  CHECK_THROWS_AS(t.column("absent"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("alpha,err_total\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("alpha,err_total\n1,x\n"), std::invalid_argument);

  RateFit fit = fit_rate(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.25}});
  const std::string rate = rate_txt(fit);
  CHECK(rate.find("slope = -1.0") != std::string::npos);
}

TEST_CASE("plot: slope annotation, determinism, error paths") {
  const std::string csv = "alpha,err_total\n1,1.0\n2,0.5\n4,0.25\n";
  CsvTable table = parse_csv(csv);
  RateFit fit = fit_rate(std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.25}});
  const std::string svg_a = plot_svg(table, fit);
  const std::string svg_b = plot_svg(table, fit);
  CHECK(svg_a == svg_b);
  CHECK(svg_a.find("slope=-1.00") != std::string::npos);
  CHECK(svg_a.find("<svg") != std::string::npos);

  TempDir dir("zak_test_plot");
  write_text_file(dir.str("results.csv"), csv);
  CHECK(cmd_plot(dir.str("results.csv"), dir.str(), true) == 0);
  CHECK(fs::exists(dir.str("plot.svg")));

  write_text_file(dir.str("empty.csv"), "");
  CHECK(cmd_plot(dir.str("empty.csv"), dir.str(), true) != 0);
}

TEST_CASE("cmd_sweep writes results, rate and metadata; reruns are byte-identical") {
  TempDir dir_a("zak_test_sweep_a");
  TempDir dir_b("zak_test_sweep_b");

  CHECK(cmd_sweep(tiny_config(dir_a.str()), true) == 0);
  CHECK(fs::exists(dir_a.str("results.csv")));
  CHECK(fs::exists(dir_a.str("rate.txt")));
  CHECK(fs::exists(dir_a.str("metadata.json")));
  CHECK(fs::exists(dir_a.str("plot.svg")));

  const CsvTable table = parse_csv(slurp(dir_a.str("results.csv")));
  CHECK(table.rows.size() == 3);  // one row per alpha
  CHECK(table.header[0] == "alpha");
  CHECK(table.header[5] == "err_total");

  CHECK(cmd_sweep(tiny_config(dir_b.str()), true) == 0);
  CHECK(slurp(dir_a.str("results.csv")) == slurp(dir_b.str("results.csv")));
  CHECK(slurp(dir_a.str("plot.svg")) == slurp(dir_b.str("plot.svg")));
}

TEST_CASE("cmd_simulate: ends-only cadence writes exactly two snapshots") {
  TempDir dir("zak_test_sim");
  RunConfig c = tiny_config(dir.str());
  c.solver.save_every = SolverParams::kSaveEndsOnly;
  c.solver.alpha = 4.0;
  c.output.formats = {"csv", "snapshots"};
  CHECK(cmd_simulate(c, true) == 0);

  std::size_t snaps = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    if (entry.path().extension() == ".zkf") ++snaps;
  }
  CHECK(snaps == 2);
  CHECK(fs::exists(dir.str("diagnostics.csv")));

  Snapshot first = read_snapshot(dir.str("snap_000000_u.zkf"));
  CHECK(first.time == 0.0);
  CHECK(first.alpha == 4.0);

  // rerun: snapshot bytes are identical
  TempDir dir2("zak_test_sim2");
  RunConfig c2 = c;
  c2.output.dir = dir2.str();
  CHECK(cmd_simulate(c2, true) == 0);
  CHECK(slurp(dir.str("snap_000001_u.zkf")) == slurp(dir2.str("snap_000001_u.zkf")));
}

TEST_CASE("cmd_strichartz and cmd_layer produce their tables") {
  TempDir dir("zak_test_str");
  RunConfig c = tiny_config(dir.str());
  c.solver.t_final = 0.2;
  CHECK(cmd_strichartz(c, true) == 0);
  CsvTable t = parse_csv(slurp(dir.str("results.csv")));
  CHECK(t.rows.size() == 3);
  CHECK(t.column("norm") == 1);
  CHECK(slurp(dir.str("metadata.json")).find("wrap_time") != std::string::npos);

  TempDir dir2("zak_test_layer");
  RunConfig c2 = tiny_config(dir2.str());
  c2.data.kind = DataRecipe::Kind::ill_prepared;
  c2.data.eps_solenoidal = 0.5;
  CHECK(cmd_layer(c2, true) == 0);
  CsvTable t2 = parse_csv(slurp(dir2.str("results.csv")));
  CHECK(t2.rows.size() == 3);
  CHECK(t2.column("err_unshifted_LinfL2") == 1);
}

TEST_CASE("verify suites pass clean and catch an injected zero-mode fault") {
  const auto clean = run_verify();
  for (const auto& r : clean) CHECK_MESSAGE(r.pass, r.group, ": ", r.detail);

  VerifyFaults faults;
  faults.projection_zero_mode_identity = true;
  const auto faulted = run_verify(faults);
  bool projection_failed = false;
  for (const auto& r : faulted) {
    if (r.group == "projection-algebra") projection_failed = !r.pass;
  }
  CHECK(projection_failed);
}

TEST_SUITE_END();
