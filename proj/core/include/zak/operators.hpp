#pragma once

#include <array>
#include <utility>

#include "zak/field.hpp"
#include "zak/spectral.hpp"

namespace zak {

/// Dimensionless oscillation parameter of the two-speed propagator. Finite
/// values select the full system, infinity the electrostatic limit.
class AlphaParam {
 public:
  explicit AlphaParam(double value);
  double value() const { return value_; }
  bool is_limit() const;

 private:
  double value_;
};

/// Zero-mode convention for the Helmholtz symbols. On the torus constant
/// fields are both curl- and divergence-free; the standard convention puts
/// them in the solenoidal sector (Q(0) = 0, P(0) = 1). The identity variant
/// exists only for fault-injection in the verify suites.
enum class ZeroModeConvention { q_zero, q_identity };

/// Per-mode 3x3 symmetric Helmholtz symbols Q(k) = k (.) k / |k|^2 and
/// P(k) = 1 - Q(k).
struct ProjectionSymbol {
  std::array<std::array<double, 3>, 3> q;
  std::array<std::array<double, 3>, 3> p;

  static ProjectionSymbol at(double kx, double ky, double kz,
                             ZeroModeConvention zero_mode = ZeroModeConvention::q_zero);
};

/// Irrotational (curl-free) part of f.
VectorField project_Q(const VectorField& f,
                      ZeroModeConvention zero_mode = ZeroModeConvention::q_zero);
/// Solenoidal (divergence-free) part of f; project_P(f) = f - project_Q(f).
VectorField project_P(const VectorField& f,
                      ZeroModeConvention zero_mode = ZeroModeConvention::q_zero);

/// L2 norms of div f and curl f, evaluated spectrally with Nyquist planes
/// zeroed in the derivative multipliers.
double divergence_l2(const VectorField& f);
double curl_l2(const VectorField& f);

/// Free Schroedinger group: multiplies each coefficient by exp(-i t |k|^2).
ScalarField apply_schrodinger(const ScalarField& f, double t);
VectorField apply_schrodinger(const VectorField& f, double t);

/// Two-speed linear propagator U_Z(t) = U(alpha t) P + U(t) Q, applied as one
/// pass of per-mode multipliers. L2-unitary; solves
/// i du/dt = alpha curl curl u - grad div u.
VectorField apply_UZ(const VectorField& f, double t, const AlphaParam& alpha);

/// Free wave evolution of (n, dn/dt): per mode with w = |k|,
/// n(t) = cos(w t) n0 + sin(w t)/w n1; the zero mode grows linearly, n0 + t n1.
std::pair<ScalarField, ScalarField> wave_homogeneous(const ScalarField& n0,
                                                     const ScalarField& n1, double t);

/// Exact solution of n_tt - lap n = lap g with g frozen in time:
/// n(t) = (n0 + g) cos(w t) + sin(w t)/w n1 - g per mode, homogeneous at k = 0.
std::pair<ScalarField, ScalarField> wave_forced_frozen(const ScalarField& n0,
                                                       const ScalarField& n1,
                                                       const ScalarField& g, double t);

/// Auxiliary variable of the first-order reformulation:
///   finite alpha:  v = -i ( n u + alpha curl curl u - grad div u )
///   limit:         v = -i ( Q(n u) - lap u )
/// The product n u is formed in physical space and dealiased; the linear part
/// uses the single symbol |k|^2 (alpha P + Q).
VectorField compute_v(const VectorField& u, const ScalarField& n, const AlphaParam& alpha);

/// v(0) for given initial data; identical to compute_v at t = 0. Its L2 norm
/// grows linearly in alpha on solenoidal data.
VectorField initial_v(const VectorField& u0, const ScalarField& n0, const AlphaParam& alpha);

/// || i v - alpha curl curl u + grad div u - n u ||_L2 (finite alpha) or the
/// limit-system analogue; zero up to round-off when v = compute_v(u, n).
double state_equation_residual(const VectorField& u, const VectorField& v,
                               const ScalarField& n, const AlphaParam& alpha);

}  // namespace zak
