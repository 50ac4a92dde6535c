#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zak/limitlab.hpp"

namespace zak {

/// Thrown by parse_config with the offending line number in the message.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Validated run configuration. Defaults are the desk-scale experiment:
/// 32^3 grid on [0, 2 pi)^3, dt = 1e-3, T = 0.5, alphas 1..64.
struct RunConfig {
  struct {
    std::size_t n = 32;
    double length = 6.283185307179586;
  } grid;

  struct {
    double alpha = std::numeric_limits<double>::infinity();  // "inf" selects the limit system
    double dt = 1e-3;
    double t_final = 0.5;
    std::size_t save_every = 10;  // SolverParams::kSaveEndsOnly for "inf"
  } solver;

  struct {
    std::uint64_t seed = 1;
    DataRecipe::Kind kind = DataRecipe::Kind::well_prepared;
    int n_modes = 3;
    double eps_solenoidal = 0.25;
    bool alpha_coupling = true;
  } data;

  struct {
    std::vector<double> alphas = {1, 2, 4, 8, 16, 32, 64};
  } sweep;

  struct {
    double q = 2.0;  // admissible pair for the decay experiment
    double r = 6.0;
  } strichartz;

  struct {
    std::string dir = "out";
    std::vector<std::string> formats = {"csv", "svg"};  // csv | svg | snapshots
  } output;

  DataRecipe recipe() const;
  SolverParams solver_params() const;
  SolverParams solver_params(double alpha) const;
};

/// Parse "key = value" lines ('#' comments, dotted keys). Unknown keys, type
/// mismatches and out-of-range values raise ConfigError with the line number.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Effective configuration as config-file text (used in metadata and docs).
std::string config_to_text(const RunConfig& config);

}  // namespace zak
