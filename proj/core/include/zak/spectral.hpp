#pragma once

#include <span>
#include <utility>

#include "zak/field.hpp"

namespace zak {

// -- transforms ------------------------------------------------------------
//
// Discrete transform pair with the plane-wave coefficient convention
//   fhat(m) = (1/n^3) sum_x f(x) exp(-i k_m . x),   f(x) = sum_m fhat(m) exp(i k_m . x),
// so a pure mode exp(i k.x) has coefficient exactly 1 and Parseval reads
// ||f||_L2^2 = L^3 sum_m |fhat(m)|^2. Plans are cached per grid size behind a
// lock; execution is safe from concurrent threads.

ScalarField to_spectral(const ScalarField& f);
ScalarField to_physical(const ScalarField& f);
VectorField to_spectral(const VectorField& f);
VectorField to_physical(const VectorField& f);

/// 2/3-rule dealiasing: zero every mode with 3*|m_i| > n on any axis.
/// Idempotent. Accepts either representation (converts on demand).
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);

// -- norms -------------------------------------------------------------------

/// H^s norm via the multiplier (1 + |k|^2)^(s/2); s = 0 equals the L2 norm.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& f, double s);

/// Spatial L^r norm by grid quadrature ((L/n)^3 sum |f|^r)^(1/r); r may be
/// infinity (max modulus). Vector fields use the pointwise Euclidean modulus.
double lebesgue_norm(const ScalarField& f, double r);
double lebesgue_norm(const VectorField& f, double r);

double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);

/// W^{2,6}-type norm: L6 of the field, its first derivatives and its second
/// derivatives (Frobenius modulus over components), derivatives spectral.
double w26_norm(const VectorField& f);

/// Temporal L^q norm of time-ordered (t, value) samples by trapezoidal
/// quadrature; q = infinity returns the max. Finite q needs >= 2 samples.
double strichartz_norm(std::span<const std::pair<double, double>> samples, double q);

}  // namespace zak
