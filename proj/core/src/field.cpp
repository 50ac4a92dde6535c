#include "zak/field.hpp"

#include <stdexcept>

namespace zak {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

ScalarField ScalarField::zeros(GridPtr grid, Representation rep) {
  require(static_cast<bool>(grid), "ScalarField: null grid");
  ScalarField f;
  f.grid_ = std::move(grid);
  f.rep_ = rep;
  if (rep == Representation::physical) {
    f.phys_.assign(f.grid_->size(), 0.0);
  } else {
    f.spec_.assign(f.grid_->size(), cplx{0.0, 0.0});
  }
  return f;
}

ScalarField ScalarField::from_samples(GridPtr grid, std::vector<double> samples) {
  require(static_cast<bool>(grid), "ScalarField: null grid");
  require(samples.size() == grid->size(), "ScalarField: sample count mismatch");
  ScalarField f;
  f.grid_ = std::move(grid);
  f.rep_ = Representation::physical;
  f.phys_ = std::move(samples);
  return f;
}

ScalarField ScalarField::from_spectrum(GridPtr grid, std::vector<cplx> coeffs) {
  require(static_cast<bool>(grid), "ScalarField: null grid");
  require(coeffs.size() == grid->size(), "ScalarField: coefficient count mismatch");
  ScalarField f;
  f.grid_ = std::move(grid);
  f.rep_ = Representation::spectral;
  f.spec_ = std::move(coeffs);
  return f;
}

const std::vector<double>& ScalarField::samples() const {
  require(rep_ == Representation::physical, "ScalarField: not in physical representation");
  return phys_;
}

const std::vector<cplx>& ScalarField::spectrum() const {
  require(rep_ == Representation::spectral, "ScalarField: not in spectral representation");
  return spec_;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require(same_grid(grid_, other.grid_) && rep_ == other.rep_,
          "ScalarField: mismatched grid or representation");
  if (rep_ == Representation::physical) {
    for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] += other.phys_[i];
  } else {
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += other.spec_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require(same_grid(grid_, other.grid_) && rep_ == other.rep_,
          "ScalarField: mismatched grid or representation");
  if (rep_ == Representation::physical) {
    for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] -= other.phys_[i];
  } else {
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] -= other.spec_[i];
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  if (rep_ == Representation::physical) {
    for (auto& v : phys_) v *= factor;
  } else {
    for (auto& v : spec_) v *= factor;
  }
  return *this;
}

VectorField VectorField::zeros(GridPtr grid, Representation rep) {
  require(static_cast<bool>(grid), "VectorField: null grid");
  VectorField f;
  f.grid_ = std::move(grid);
  f.rep_ = rep;
  for (auto& c : f.comp_) c.assign(f.grid_->size(), cplx{0.0, 0.0});
  return f;
}

VectorField VectorField::from_components(GridPtr grid, Representation rep,
                                         std::array<std::vector<cplx>, 3> components) {
  require(static_cast<bool>(grid), "VectorField: null grid");
  for (const auto& c : components) {
    require(c.size() == grid->size(), "VectorField: component size mismatch");
  }
  VectorField f;
  f.grid_ = std::move(grid);
  f.rep_ = rep;
  f.comp_ = std::move(components);
  return f;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require(same_grid(grid_, other.grid_) && rep_ == other.rep_,
          "VectorField: mismatched grid or representation");
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += other.comp_[c][i];
  }
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require(same_grid(grid_, other.grid_) && rep_ == other.rep_,
          "VectorField: mismatched grid or representation");
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] -= other.comp_[c][i];
  }
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (auto& comp : comp_) {
    for (auto& v : comp) v *= factor;
  }
  return *this;
}

VectorField& VectorField::operator*=(cplx factor) {
  for (auto& comp : comp_) {
    for (auto& v : comp) v *= factor;
  }
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }
VectorField operator*(cplx factor, VectorField a) { return a *= factor; }

}  // namespace zak
