#pragma once

#include <string>
#include <vector>

#include "zak/limitlab.hpp"

namespace zak {

/// CSV payloads are deterministic: fixed column order, "%.12e" floats.
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string decay_csv(const std::vector<DecayRecord>& records);
std::string layer_csv(const std::vector<LayerRecord>& records);

std::string rate_txt(const RateFit& fit);

/// Parsed generic CSV with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable parse_csv(const std::string& text);

/// Log-log scatter of err_total against alpha with the fitted line and a
/// "slope=..." annotation. Deterministic bytes for identical input.
std::string plot_svg(const CsvTable& table, const RateFit& fit);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace zak
