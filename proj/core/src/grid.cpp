#include "zak/grid.hpp"

#include <numbers>
#include <stdexcept>

namespace zak {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(std::size_t n_per_dim, double length) : n_(n_per_dim), length_(length) {
  if (n_ < 4 || !is_power_of_two(n_)) {
    throw std::invalid_argument("Grid: n_per_dim must be a power of two >= 4");
  }
  if (!(length_ > 0.0)) {
    throw std::invalid_argument("Grid: length must be positive");
  }
  modes_.resize(n_);
  k_.resize(n_);
  k_deriv_.resize(n_);
  const double base = 2.0 * std::numbers::pi / length_;
  for (std::size_t i = 0; i < n_; ++i) {
    const int m = (i <= n_ / 2) ? static_cast<int>(i)
                                : static_cast<int>(i) - static_cast<int>(n_);
    modes_[i] = m;
    k_[i] = base * m;
    k_deriv_[i] = is_nyquist(i) ? 0.0 : k_[i];
  }
}

GridPtr make_grid(std::size_t n_per_dim, double length) {
  return std::make_shared<const Grid>(n_per_dim, length);
}

}  // namespace zak
