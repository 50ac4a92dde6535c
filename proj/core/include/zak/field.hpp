#pragma once

#include <array>
#include <complex>
#include <vector>

#include "zak/grid.hpp"

namespace zak {

using cplx = std::complex<double>;

enum class Representation { physical, spectral };

/// Real scalar field on a Grid: real samples in physical representation,
/// complex coefficients (conjugate-symmetric up to round-off) in spectral
/// representation. Fields are immutable values; transforms return new fields.
class ScalarField {
 public:
  static ScalarField zeros(GridPtr grid, Representation rep = Representation::physical);
  static ScalarField from_samples(GridPtr grid, std::vector<double> samples);
  static ScalarField from_spectrum(GridPtr grid, std::vector<cplx> coeffs);

  const GridPtr& grid() const { return grid_; }
  Representation rep() const { return rep_; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  const std::vector<double>& samples() const;
  const std::vector<cplx>& spectrum() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);

 private:
  ScalarField() = default;
  GridPtr grid_;
  Representation rep_ = Representation::physical;
  std::vector<double> phys_;
  std::vector<cplx> spec_;

  friend ScalarField to_spectral(const ScalarField&);
  friend ScalarField to_physical(const ScalarField&);
};

/// Complex 3-component vector field; all components share one grid and one
/// representation.
class VectorField {
 public:
  static VectorField zeros(GridPtr grid, Representation rep = Representation::physical);
  static VectorField from_components(GridPtr grid, Representation rep,
                                     std::array<std::vector<cplx>, 3> components);

  const GridPtr& grid() const { return grid_; }
  Representation rep() const { return rep_; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  const std::vector<cplx>& component(std::size_t c) const { return comp_[c]; }
  std::vector<cplx>& mutable_component(std::size_t c) { return comp_[c]; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);
  VectorField& operator*=(cplx factor);

 private:
  VectorField() = default;
  GridPtr grid_;
  Representation rep_ = Representation::physical;
  std::array<std::vector<cplx>, 3> comp_;

  friend VectorField to_spectral(const VectorField&);
  friend VectorField to_physical(const VectorField&);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);
VectorField operator*(cplx factor, VectorField a);

}  // namespace zak
