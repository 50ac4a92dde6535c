#pragma once

#include <string>

#include "zak/config.hpp"

namespace zak {

/// Subcommand entry points; each writes its outputs under config.output.dir
/// and returns a process exit status (0 on success). Partial results are
/// flushed before reporting failure.
int cmd_simulate(const RunConfig& config, bool quiet = false);
int cmd_sweep(const RunConfig& config, bool quiet = false);
int cmd_strichartz(const RunConfig& config, bool quiet = false);
int cmd_layer(const RunConfig& config, bool quiet = false);
int cmd_verify(bool quiet = false);
int cmd_plot(const std::string& csv_path, const std::string& output_dir, bool quiet = false);

}  // namespace zak
