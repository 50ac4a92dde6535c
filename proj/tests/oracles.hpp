// Test-only reference computations, independent of the implementation paths
// they check: brute-force DFT by direct summation, and 4th-order (classical
// Runge-Kutta) time integration of single modes and of the full semi-discrete
// systems.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "zak/operators.hpp"
#include "zak/solver.hpp"

namespace oracles {

using zak::cplx;

// Direct O(n^6) DFT with the plane-wave coefficient convention; only sane on
// tiny grids.
inline std::vector<cplx> direct_dft(const zak::Grid& g, const std::vector<double>& samples) {
  const std::size_t n = g.n();
  std::vector<cplx> coeffs(g.size(), cplx{0.0, 0.0});
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t mz = 0; mz < n; ++mz) {
    for (std::size_t my = 0; my < n; ++my) {
      for (std::size_t mx = 0; mx < n; ++mx) {
        cplx acc{0.0, 0.0};
        for (std::size_t iz = 0; iz < n; ++iz) {
          for (std::size_t iy = 0; iy < n; ++iy) {
            for (std::size_t ix = 0; ix < n; ++ix) {
              const double phase = g.wavenumber(mx) * g.coord(ix) +
                                   g.wavenumber(my) * g.coord(iy) +
                                   g.wavenumber(mz) * g.coord(iz);
              acc += samples[g.flat(ix, iy, iz)] * std::polar(1.0, -phase);
            }
          }
        }
        coeffs[g.flat(mx, my, mz)] = acc * scale;
      }
    }
  }
  return coeffs;
}

// -- single-mode states ------------------------------------------------------

using Mode3 = std::array<cplx, 3>;

inline Mode3 axpy(const Mode3& y, double a, const Mode3& x) {
  return {y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2]};
}

using WaveMode = std::array<cplx, 2>;  // (n, nt) coefficients of one mode

inline WaveMode axpy(const WaveMode& y, double a, const WaveMode& x) {
  return {y[0] + a * x[0], y[1] + a * x[1]};
}

// Classical RK4 on y' = f(t, y) for any vector-space state with axpy support;
// the axpy overloads must be declared before this point for unqualified
// lookup (std::array states get no ADL into this namespace).
template <class State, class Rhs>
State rk4(State y, double t0, double t1, std::size_t steps, Rhs&& f) {
  const double dt = (t1 - t0) / static_cast<double>(steps);
  double t = t0;
  for (std::size_t s = 0; s < steps; ++s) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const State k3 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const State k4 = f(t + dt, axpy(y, dt, k3));
    State incr = k1;
    incr = axpy(incr, 2.0, k2);
    incr = axpy(incr, 2.0, k3);
    incr = axpy(incr, 1.0, k4);
    y = axpy(y, dt / 6.0, incr);
    t += dt;
  }
  return y;
}

// i u' = |k|^2 (alpha P + Q) u on one mode.
inline Mode3 uz_mode_reference(const Mode3& u0, const std::array<double, 3>& k, double alpha,
                               double t, std::size_t steps) {
  const auto sym = zak::ProjectionSymbol::at(k[0], k[1], k[2]);
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  auto rhs = [&](double, const Mode3& u) {
    Mode3 out{};
    for (int i = 0; i < 3; ++i) {
      cplx acc{0.0, 0.0};
      for (int j = 0; j < 3; ++j) {
        acc += (alpha * sym.p[i][j] + sym.q[i][j]) * u[j];
      }
      out[i] = cplx{0.0, -1.0} * k2 * acc;
    }
    return out;
  };
  return rk4(u0, 0.0, t, steps, rhs);
}

// n'' = -w^2 n - w^2 g with frozen g (the forced oscillator of one mode).
inline WaveMode wave_mode_reference(const WaveMode& y0, double omega, cplx g, double t,
                                    std::size_t steps) {
  auto rhs = [&](double, const WaveMode& y) {
    return WaveMode{y[1], -omega * omega * (y[0] + g)};
  };
  return rk4(y0, 0.0, t, steps, rhs);
}

// -- full semi-discrete system ------------------------------------------------

struct FieldState {
  zak::VectorField u;
  zak::ScalarField n;
  zak::ScalarField nt;
};

inline FieldState axpy(const FieldState& y, double a, const FieldState& x) {
  FieldState out = y;
  zak::VectorField du = x.u;
  du *= a;
  out.u += du;
  zak::ScalarField dn = x.n;
  dn *= a;
  out.n += dn;
  zak::ScalarField dnt = x.nt;
  dnt *= a;
  out.nt += dnt;
  return out;
}

inline zak::ScalarField modulus_squared_dealiased(const zak::VectorField& u) {
  zak::VectorField u_phys = zak::to_physical(u);
  std::vector<double> g(u.grid()->size(), 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& comp = u_phys.component(c);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += std::norm(comp[i]);
  }
  return zak::dealias(zak::ScalarField::from_samples(u.grid(), std::move(g)));
}

inline zak::ScalarField laplacian(const zak::ScalarField& f) {
  zak::ScalarField spec = zak::to_spectral(f);
  std::vector<cplx> out = spec.spectrum();
  zak::for_each_mode(*spec.grid(), [&](std::size_t idx, double kx, double ky, double kz) {
    out[idx] *= -(kx * kx + ky * ky + kz * kz);
  });
  return zak::ScalarField::from_spectrum(spec.grid(), std::move(out));
}

// Semi-discrete right-hand side shared by both systems: du/dt is the
// auxiliary variable, the wave equation is driven by the dealiased |u|^2.
inline FieldState system_rhs(const FieldState& y, const zak::AlphaParam& alpha) {
  FieldState out{zak::compute_v(y.u, y.n, alpha), y.nt,
                 laplacian(y.n + zak::to_spectral(modulus_squared_dealiased(y.u)))};
  return out;
}

inline FieldState rk4_system(FieldState y, const zak::AlphaParam& alpha, double t,
                             std::size_t steps) {
  auto rhs = [&](double, const FieldState& s) { return system_rhs(s, alpha); };
  return rk4(std::move(y), 0.0, t, steps, rhs);
}

}  // namespace oracles
