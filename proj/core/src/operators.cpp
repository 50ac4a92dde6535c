#include "zak/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace zak {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  require(same_grid(a, b), "operators: fields live on different grids");
}

// sin(w t)/w with the analytic limit t at w = 0.
double sinc_wave(double w, double t) {
  if (w == 0.0) return t;
  return std::sin(w * t) / w;
}

// Pointwise product n * u in physical space, dealiased, returned spectral.
VectorField dealiased_product(const ScalarField& n, const VectorField& u) {
  ScalarField n_phys = to_physical(n);
  VectorField u_phys = to_physical(u);
  const auto& ns = n_phys.samples();
  std::array<std::vector<cplx>, 3> comps;
  for (std::size_t c = 0; c < 3; ++c) {
    comps[c] = u_phys.component(c);
    for (std::size_t i = 0; i < comps[c].size(); ++i) comps[c][i] *= ns[i];
  }
  VectorField prod = VectorField::from_components(u.grid(), Representation::physical,
                                                  std::move(comps));
  return dealias(prod);
}

}  // namespace

AlphaParam::AlphaParam(double value) : value_(value) {
  if (!(value >= 1.0)) {  // also rejects NaN
    throw std::invalid_argument("AlphaParam: alpha must be >= 1");
  }
}

bool AlphaParam::is_limit() const { return std::isinf(value_); }

ProjectionSymbol ProjectionSymbol::at(double kx, double ky, double kz,
                                      ZeroModeConvention zero_mode) {
  const double k2 = kx * kx + ky * ky + kz * kz;
  ProjectionSymbol s{};
  const double k[3] = {kx, ky, kz};
  if (k2 == 0.0) {
    const double q0 = (zero_mode == ZeroModeConvention::q_identity) ? 1.0 : 0.0;
    for (int i = 0; i < 3; ++i) {
      s.q[i][i] = q0;
      s.p[i][i] = 1.0 - q0;
    }
    return s;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      s.q[i][j] = k[i] * k[j] / k2;
      s.p[i][j] = (i == j ? 1.0 : 0.0) - s.q[i][j];
    }
  }
  return s;
}

namespace {

// One pass over modes applying coef_fast * P + coef_slow * Q, where the
// coefficients may depend on |k|^2. The irrotational part is k (k.u)/|k|^2.
template <class CoefFast, class CoefSlow>
VectorField apply_split_multiplier(const VectorField& f, CoefFast&& fast, CoefSlow&& slow,
                                   ZeroModeConvention zero_mode) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  std::array<std::vector<cplx>, 3> out = {spec.component(0), spec.component(1),
                                          spec.component(2)};
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    const cplx u0 = out[0][idx], u1 = out[1][idx], u2 = out[2][idx];
    cplx q0, q1, q2;
    if (k2 == 0.0) {
      if (zero_mode == ZeroModeConvention::q_identity) {
        q0 = u0; q1 = u1; q2 = u2;
      } else {
        q0 = q1 = q2 = cplx{0.0, 0.0};
      }
    } else {
      const cplx dot = (kx * u0 + ky * u1 + kz * u2) / k2;
      q0 = kx * dot; q1 = ky * dot; q2 = kz * dot;
    }
    const cplx cf = fast(k2);
    const cplx cs = slow(k2);
    out[0][idx] = cf * (u0 - q0) + cs * q0;
    out[1][idx] = cf * (u1 - q1) + cs * q1;
    out[2][idx] = cf * (u2 - q2) + cs * q2;
  });
  return VectorField::from_components(spec.grid(), Representation::spectral, std::move(out));
}

}  // namespace

VectorField project_Q(const VectorField& f, ZeroModeConvention zero_mode) {
  return apply_split_multiplier(
      f, [](double) { return cplx{0.0, 0.0}; }, [](double) { return cplx{1.0, 0.0}; },
      zero_mode);
}

VectorField project_P(const VectorField& f, ZeroModeConvention zero_mode) {
  return apply_split_multiplier(
      f, [](double) { return cplx{1.0, 0.0}; }, [](double) { return cplx{0.0, 0.0}; },
      zero_mode);
}

double divergence_l2(const VectorField& f) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  const std::size_t n = g.n();
  double acc = 0.0;
  std::size_t idx = 0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    const double kz = g.wavenumber_deriv(iz);
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double ky = g.wavenumber_deriv(iy);
      for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
        const double kx = g.wavenumber_deriv(ix);
        const cplx div = kx * spec.component(0)[idx] + ky * spec.component(1)[idx] +
                         kz * spec.component(2)[idx];  // i omitted: modulus only
        acc += std::norm(div);
      }
    }
  }
  return std::sqrt(g.volume() * acc);
}

double curl_l2(const VectorField& f) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  const std::size_t n = g.n();
  double acc = 0.0;
  std::size_t idx = 0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    const double kz = g.wavenumber_deriv(iz);
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double ky = g.wavenumber_deriv(iy);
      for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
        const double kx = g.wavenumber_deriv(ix);
        const cplx u0 = spec.component(0)[idx];
        const cplx u1 = spec.component(1)[idx];
        const cplx u2 = spec.component(2)[idx];
        acc += std::norm(ky * u2 - kz * u1) + std::norm(kz * u0 - kx * u2) +
               std::norm(kx * u1 - ky * u0);
      }
    }
  }
  return std::sqrt(g.volume() * acc);
}

ScalarField apply_schrodinger(const ScalarField& f, double t) {
  ScalarField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  std::vector<cplx> coeffs = spec.spectrum();
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    coeffs[idx] *= std::polar(1.0, -t * k2);
  });
  return ScalarField::from_spectrum(spec.grid(), std::move(coeffs));
}

VectorField apply_schrodinger(const VectorField& f, double t) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  std::array<std::vector<cplx>, 3> out = {spec.component(0), spec.component(1),
                                          spec.component(2)};
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    const cplx phase = std::polar(1.0, -t * k2);
    out[0][idx] *= phase;
    out[1][idx] *= phase;
    out[2][idx] *= phase;
  });
  return VectorField::from_components(spec.grid(), Representation::spectral, std::move(out));
}

VectorField apply_UZ(const VectorField& f, double t, const AlphaParam& alpha) {
  require(!alpha.is_limit(), "apply_UZ: alpha must be finite");
  const double a = alpha.value();
  return apply_split_multiplier(
      f, [a, t](double k2) { return std::polar(1.0, -a * t * k2); },
      [t](double k2) { return std::polar(1.0, -t * k2); }, ZeroModeConvention::q_zero);
}

std::pair<ScalarField, ScalarField> wave_homogeneous(const ScalarField& n0,
                                                     const ScalarField& n1, double t) {
  require_same_grid(n0.grid(), n1.grid());
  ScalarField s0 = to_spectral(n0);
  ScalarField s1 = to_spectral(n1);
  const Grid& g = *s0.grid();
  std::vector<cplx> n_out(g.size()), nt_out(g.size());
  const auto& c0 = s0.spectrum();
  const auto& c1 = s1.spectrum();
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double w = std::sqrt(kx * kx + ky * ky + kz * kz);
    const double cwt = std::cos(w * t);
    const double swt = sinc_wave(w, t);
    n_out[idx] = cwt * c0[idx] + swt * c1[idx];
    nt_out[idx] = -w * std::sin(w * t) * c0[idx] + cwt * c1[idx];
  });
  return {ScalarField::from_spectrum(s0.grid(), std::move(n_out)),
          ScalarField::from_spectrum(s0.grid(), std::move(nt_out))};
}

std::pair<ScalarField, ScalarField> wave_forced_frozen(const ScalarField& n0,
                                                       const ScalarField& n1,
                                                       const ScalarField& g_src, double t) {
  require_same_grid(n0.grid(), n1.grid());
  require_same_grid(n0.grid(), g_src.grid());
  ScalarField s0 = to_spectral(n0);
  ScalarField s1 = to_spectral(n1);
  ScalarField sg = to_spectral(g_src);
  const Grid& g = *s0.grid();
  std::vector<cplx> n_out(g.size()), nt_out(g.size());
  const auto& c0 = s0.spectrum();
  const auto& c1 = s1.spectrum();
  const auto& cg = sg.spectrum();
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double w = std::sqrt(kx * kx + ky * ky + kz * kz);
    const double cwt = std::cos(w * t);
    if (w == 0.0) {
      // lap g has no zero mode: homogeneous growth
      n_out[idx] = c0[idx] + t * c1[idx];
      nt_out[idx] = c1[idx];
      return;
    }
    const cplx shifted = c0[idx] + cg[idx];
    n_out[idx] = shifted * cwt + (std::sin(w * t) / w) * c1[idx] - cg[idx];
    nt_out[idx] = -w * std::sin(w * t) * shifted + cwt * c1[idx];
  });
  return {ScalarField::from_spectrum(s0.grid(), std::move(n_out)),
          ScalarField::from_spectrum(s0.grid(), std::move(nt_out))};
}

VectorField compute_v(const VectorField& u, const ScalarField& n, const AlphaParam& alpha) {
  require_same_grid(u.grid(), n.grid());
  VectorField prod = dealiased_product(n, u);

  VectorField v = VectorField::zeros(u.grid(), Representation::spectral);
  if (alpha.is_limit()) {
    // v = -i ( Q(n u) - lap u ); -lap has symbol |k|^2 on both sectors
    v = project_Q(prod);
    v += apply_split_multiplier(
        u, [](double k2) { return cplx{k2, 0.0}; },
        [](double k2) { return cplx{k2, 0.0}; }, ZeroModeConvention::q_zero);
  } else {
    // v = -i ( n u + alpha curlcurl u - grad div u ), linear symbol |k|^2 (alpha P + Q)
    const double a = alpha.value();
    v = prod;
    v += apply_split_multiplier(
        u, [a](double k2) { return cplx{a * k2, 0.0}; },
        [](double k2) { return cplx{k2, 0.0}; }, ZeroModeConvention::q_zero);
  }
  v *= cplx{0.0, -1.0};
  return v;
}

VectorField initial_v(const VectorField& u0, const ScalarField& n0, const AlphaParam& alpha) {
  return compute_v(u0, n0, alpha);
}

double state_equation_residual(const VectorField& u, const VectorField& v,
                               const ScalarField& n, const AlphaParam& alpha) {
  VectorField expected = compute_v(u, n, alpha);
  VectorField diff = to_spectral(v);
  diff -= expected;
  return l2_norm(diff);
}

}  // namespace zak
