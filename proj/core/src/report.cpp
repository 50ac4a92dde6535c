#include "zak/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zak {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "alpha,err_u_LinfH2,err_u_L2W26,err_n_W1,err_v_L2L6,err_total\n";
  for (const auto& r : records) {
    if (r.diverged) continue;  // flagged runs are excluded from the table
    os << fmt(r.alpha) << ',' << fmt(r.err_u_LinfH2) << ',' << fmt(r.err_u_L2W26) << ','
       << fmt(r.err_n_W1) << ',' << fmt(r.err_v_L2L6) << ',' << fmt(r.err_total()) << "\n";
  }
  return os.str();
}

std::string decay_csv(const std::vector<DecayRecord>& records) {
  std::ostringstream os;
  os << "alpha,norm\n";
  for (const auto& r : records) os << fmt(r.alpha) << ',' << fmt(r.norm) << "\n";
  return os.str();
}

std::string layer_csv(const std::vector<LayerRecord>& records) {
  std::ostringstream os;
  os << "alpha,err_unshifted_LinfL2,err_shifted_L2L6\n";
  for (const auto& r : records) {
    if (r.diverged) continue;
    os << fmt(r.alpha) << ',' << fmt(r.err_unshifted_LinfL2) << ','
       << fmt(r.err_shifted_L2L6) << "\n";
  }
  return os.str();
}

std::string rate_txt(const RateFit& fit) {
  std::ostringstream os;
  os << "slope = " << fmt(fit.slope) << "\n";
  os << "intercept = " << fmt(fit.intercept) << "\n";
  os << "r_squared = " << fmt(fit.r_squared) << "\n";
  os << "points = " << fit.points << "\n";
  return os.str();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("csv: missing column '" + name + "'");
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (...) {
        throw std::invalid_argument("csv: non-numeric cell '" + c + "'");
      }
    }
    if (row.size() != table.header.size()) {
      throw std::invalid_argument("csv: row width differs from header");
    }
    table.rows.push_back(std::move(row));
  }
  if (first) throw std::invalid_argument("csv: empty input");
  if (table.rows.empty()) throw std::invalid_argument("csv: no data rows");
  return table;
}

std::string plot_svg(const CsvTable& table, const RateFit& fit) {
  const std::size_t cx = table.column("alpha");
  const std::size_t cy = table.column("err_total");

  std::vector<std::pair<double, double>> pts;
  for (const auto& row : table.rows) {
    if (row[cx] > 0.0 && row[cy] > 0.0) {
      pts.emplace_back(std::log10(row[cx]), std::log10(row[cy]));
    }
  }
  if (pts.empty()) throw std::invalid_argument("plot: no positive data points");

  double x_min = pts[0].first, x_max = pts[0].first;
  double y_min = pts[0].second, y_max = pts[0].second;
  for (const auto& [x, y] : pts) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double x_pad = 0.08 * (x_max - x_min);
  const double y_pad = 0.12 * (y_max - y_min);
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  const double width = 640, height = 480;
  const double ml = 70, mr = 20, mt = 20, mb = 50;
  auto sx = [&](double x) {
    return ml + (x - x_min) / (x_max - x_min) * (width - ml - mr);
  };
  auto sy = [&](double y) {
    return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (width - ml - mr)
     << "\" height=\"" << (height - mt - mb)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // decade ticks
  for (int d = static_cast<int>(std::ceil(x_min)); d <= static_cast<int>(std::floor(x_max));
       ++d) {
    const double px = sx(d);
    os << "<line x1=\"" << fmt_g(px) << "\" y1=\"" << (height - mb) << "\" x2=\""
       << fmt_g(px) << "\" y2=\"" << (height - mb + 6)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt_g(px) << "\" y=\"" << (height - mb + 22)
       << "\" font-size=\"13\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(y_min)); d <= static_cast<int>(std::floor(y_max));
       ++d) {
    const double py = sy(d);
    os << "<line x1=\"" << (ml - 6) << "\" y1=\"" << fmt_g(py) << "\" x2=\"" << ml
       << "\" y2=\"" << fmt_g(py) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << (ml - 10) << "\" y=\"" << fmt_g(py + 4)
       << "\" font-size=\"13\" text-anchor=\"end\">1e" << d << "</text>\n";
  }

  os << "<text x=\"" << (ml + (width - ml - mr) / 2) << "\" y=\"" << (height - 10)
     << "\" font-size=\"14\" text-anchor=\"middle\">alpha</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + (height - mt - mb) / 2)
     << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (mt + (height - mt - mb) / 2) << ")\">err_total</text>\n";

  // fitted line y = intercept + slope * x in natural logs -> log10 space
  {
    const double ln10 = std::log(10.0);
    auto y_of = [&](double x10) {
      return (fit.intercept + fit.slope * (x10 * ln10)) / ln10;
    };
    const double xa = x_min + x_pad, xb = x_max - x_pad;
    os << "<line x1=\"" << fmt_g(sx(xa)) << "\" y1=\"" << fmt_g(sy(y_of(xa))) << "\" x2=\""
       << fmt_g(sx(xb)) << "\" y2=\"" << fmt_g(sy(y_of(xb)))
       << "\" stroke=\"#c22\" stroke-width=\"1.5\"/>\n";
  }

  for (const auto& [x, y] : pts) {
    os << "<circle cx=\"" << fmt_g(sx(x)) << "\" cy=\"" << fmt_g(sy(y))
       << "\" r=\"4\" fill=\"#226\" />\n";
  }

  os << "<text x=\"" << (width - mr - 10) << "\" y=\"" << (mt + 20)
     << "\" font-size=\"15\" text-anchor=\"end\">slope=" << fmt2(fit.slope)
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace zak
