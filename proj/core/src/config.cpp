#include "zak/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zak {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << line << ": " << msg;
  throw ConfigError(os.str());
}

double parse_double(int line, const std::string& key, const std::string& value,
                    bool allow_inf = false) {
  if (allow_inf && value == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(line, "expected a number for '" + key + "', got '" + value + "'");
  }
}

long long parse_int(int line, const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(line, "expected an integer for '" + key + "', got '" + value + "'");
  }
}

bool parse_bool(int line, const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(line, "expected true/false for '" + key + "', got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

DataRecipe RunConfig::recipe() const {
  DataRecipe r;
  r.seed = data.seed;
  r.kind = data.kind;
  r.n_modes = data.n_modes;
  r.eps_solenoidal = data.eps_solenoidal;
  r.alpha_coupling = data.alpha_coupling;
  return r;
}

SolverParams RunConfig::solver_params() const { return solver_params(solver.alpha); }

SolverParams RunConfig::solver_params(double alpha) const {
  SolverParams p;
  p.alpha = AlphaParam(alpha);
  p.dt = solver.dt;
  p.t_final = solver.t_final;
  p.save_every = solver.save_every;
  return p;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (value.empty()) fail(line, "empty value for '" + key + "'");

    if (key == "grid.n") {
      const long long v = parse_int(line, key, value);
      if (v < 4 || (v & (v - 1)) != 0) {
        fail(line, "value out of range for 'grid.n' (power of two >= 4)");
      }
      config.grid.n = static_cast<std::size_t>(v);
    } else if (key == "grid.length") {
      const double v = parse_double(line, key, value);
      if (!(v > 0.0)) fail(line, "value out of range for 'grid.length' (must be > 0)");
      config.grid.length = v;
    } else if (key == "solver.alpha") {
      const double v = parse_double(line, key, value, /*allow_inf=*/true);
      if (!(v >= 1.0)) fail(line, "value out of range for 'solver.alpha' (must be >= 1 or inf)");
      config.solver.alpha = v;
    } else if (key == "solver.dt") {
      const double v = parse_double(line, key, value);
      if (!(v > 0.0)) fail(line, "value out of range for 'solver.dt' (must be > 0)");
      config.solver.dt = v;
    } else if (key == "solver.t_final") {
      const double v = parse_double(line, key, value);
      if (!(v >= 0.0)) fail(line, "value out of range for 'solver.t_final' (must be >= 0)");
      config.solver.t_final = v;
    } else if (key == "solver.save_every") {
      if (value == "inf") {
        config.solver.save_every = SolverParams::kSaveEndsOnly;
      } else {
        const long long v = parse_int(line, key, value);
        if (v < 1) fail(line, "value out of range for 'solver.save_every' (must be >= 1)");
        config.solver.save_every = static_cast<std::size_t>(v);
      }
    } else if (key == "data.seed") {
      const long long v = parse_int(line, key, value);
      if (v < 0) fail(line, "value out of range for 'data.seed' (must be >= 0)");
      config.data.seed = static_cast<std::uint64_t>(v);
    } else if (key == "data.kind") {
      if (value == "well_prepared") {
        config.data.kind = DataRecipe::Kind::well_prepared;
      } else if (value == "ill_prepared") {
        config.data.kind = DataRecipe::Kind::ill_prepared;
      } else {
        fail(line, "expected well_prepared or ill_prepared for 'data.kind'");
      }
    } else if (key == "data.n_modes") {
      const long long v = parse_int(line, key, value);
      if (v < 1) fail(line, "value out of range for 'data.n_modes' (must be >= 1)");
      config.data.n_modes = static_cast<int>(v);
    } else if (key == "data.eps_solenoidal") {
      const double v = parse_double(line, key, value);
      if (!(v >= 0.0)) fail(line, "value out of range for 'data.eps_solenoidal' (must be >= 0)");
      config.data.eps_solenoidal = v;
    } else if (key == "data.alpha_coupling") {
      config.data.alpha_coupling = parse_bool(line, key, value);
    } else if (key == "sweep.alphas") {
      std::vector<double> alphas;
      for (const auto& item : split_list(value)) {
        const double v = parse_double(line, key, item);
        if (!(v >= 1.0)) fail(line, "value out of range in 'sweep.alphas' (must be >= 1)");
        alphas.push_back(v);
      }
      if (alphas.empty()) fail(line, "empty list for 'sweep.alphas'");
      config.sweep.alphas = std::move(alphas);
    } else if (key == "strichartz.q") {
      config.strichartz.q = parse_double(line, key, value, /*allow_inf=*/true);
      if (!(config.strichartz.q >= 2.0)) {
        fail(line, "value out of range for 'strichartz.q' (must be >= 2 or inf)");
      }
    } else if (key == "strichartz.r") {
      const double v = parse_double(line, key, value);
      if (!(v >= 2.0 && v <= 6.0)) {
        fail(line, "value out of range for 'strichartz.r' (must be in [2, 6])");
      }
      config.strichartz.r = v;
    } else if (key == "output.dir") {
      config.output.dir = value;
    } else if (key == "output.formats") {
      std::vector<std::string> formats = split_list(value);
      for (const auto& f : formats) {
        if (f != "csv" && f != "svg" && f != "snapshots") {
          fail(line, "unknown output format '" + f + "' (csv, svg, snapshots)");
        }
      }
      config.output.formats = std::move(formats);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string config_to_text(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "grid.n = " << c.grid.n << "\n";
  os << "grid.length = " << c.grid.length << "\n";
  if (std::isinf(c.solver.alpha)) {
    os << "solver.alpha = inf\n";
  } else {
    os << "solver.alpha = " << c.solver.alpha << "\n";
  }
  os << "solver.dt = " << c.solver.dt << "\n";
  os << "solver.t_final = " << c.solver.t_final << "\n";
  if (c.solver.save_every == SolverParams::kSaveEndsOnly) {
    os << "solver.save_every = inf\n";
  } else {
    os << "solver.save_every = " << c.solver.save_every << "\n";
  }
  os << "data.seed = " << c.data.seed << "\n";
  os << "data.kind = "
     << (c.data.kind == DataRecipe::Kind::well_prepared ? "well_prepared" : "ill_prepared")
     << "\n";
  os << "data.n_modes = " << c.data.n_modes << "\n";
  os << "data.eps_solenoidal = " << c.data.eps_solenoidal << "\n";
  os << "data.alpha_coupling = " << (c.data.alpha_coupling ? "true" : "false") << "\n";
  os << "sweep.alphas = ";
  for (std::size_t i = 0; i < c.sweep.alphas.size(); ++i) {
    if (i) os << ",";
    os << c.sweep.alphas[i];
  }
  os << "\n";
  if (std::isinf(c.strichartz.q)) {
    os << "strichartz.q = inf\n";
  } else {
    os << "strichartz.q = " << c.strichartz.q << "\n";
  }
  os << "strichartz.r = " << c.strichartz.r << "\n";
  os << "output.dir = " << c.output.dir << "\n";
  os << "output.formats = ";
  for (std::size_t i = 0; i < c.output.formats.size(); ++i) {
    if (i) os << ",";
    os << c.output.formats[i];
  }
  os << "\n";
  return os.str();
}

}  // namespace zak
