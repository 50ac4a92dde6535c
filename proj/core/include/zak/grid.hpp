#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace zak {

/// Periodic cubic grid [0,L)^3 with n points per dimension (a power of two,
/// n >= 4). Spectral modes carry angular wavenumbers k = 2*pi*m/L; the
/// index -> mode map follows DFT layout: m = i for i <= n/2, m = i - n
/// otherwise, so index n/2 is the Nyquist mode. Odd-order derivative
/// multipliers zero the Nyquist planes to keep derivatives of real fields
/// real; even symbols (|k|^2 phases, projections) are sign-unambiguous there.
class Grid {
 public:
  Grid(std::size_t n_per_dim, double length);

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  std::size_t size() const { return n_ * n_ * n_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double cell_volume() const {
    double h = spacing();
    return h * h * h;
  }
  double volume() const { return length_ * length_ * length_; }

  /// Integer mode for a per-axis index (Nyquist index maps to +n/2).
  int mode(std::size_t i) const { return modes_[i]; }
  /// Angular wavenumber 2*pi*mode/L for a per-axis index.
  double wavenumber(std::size_t i) const { return k_[i]; }
  /// Wavenumber with the Nyquist plane zeroed, for odd-order derivatives.
  double wavenumber_deriv(std::size_t i) const { return k_deriv_[i]; }
  bool is_nyquist(std::size_t i) const { return i == n_ / 2; }

  /// x-fastest flattening: index = ix + n*(iy + n*iz).
  std::size_t flat(std::size_t ix, std::size_t iy, std::size_t iz) const {
    return ix + n_ * (iy + n_ * iz);
  }
  /// Physical coordinate of a per-axis index.
  double coord(std::size_t i) const { return spacing() * static_cast<double>(i); }

  /// Largest kept mode of the 2/3 dealiasing rule: |m| <= n/3.
  int dealias_cutoff() const { return static_cast<int>(n_ / 3); }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  std::size_t n_;
  double length_;
  std::vector<int> modes_;
  std::vector<double> k_;
  std::vector<double> k_deriv_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::size_t n_per_dim, double length);

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Visit every mode: f(flat, kx, ky, kz) with angular wavenumbers.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const std::size_t n = g.n();
  std::size_t idx = 0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    const double kz = g.wavenumber(iz);
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double ky = g.wavenumber(iy);
      for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
        f(idx, g.wavenumber(ix), ky, kz);
      }
    }
  }
}

}  // namespace zak
