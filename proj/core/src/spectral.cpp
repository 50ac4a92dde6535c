#include "zak/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace zak {

namespace {

// In-place c2c plans per grid size. FFTW plan creation is not thread-safe,
// execution on distinct buffers is; plans use FFTW_UNALIGNED so they can run
// on any caller buffer via the new-array interface.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

const PlanPair& plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int ni = static_cast<int>(n);
  std::vector<cplx> scratch(n * n * n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair plans;
  plans.forward = fftw_plan_dft_3d(ni, ni, ni, ptr, ptr, FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.backward = fftw_plan_dft_3d(ni, ni, ni, ptr, ptr, FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans.forward || !plans.backward) {
    throw std::runtime_error("fftw plan creation failed");
  }
  return cache.emplace(n, plans).first->second;
}

// buf is transformed in place. Forward applies the 1/n^3 coefficient scaling.
void dft_forward(const Grid& g, std::vector<cplx>& buf) {
  const PlanPair& plans = plans_for(g.n());
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plans.forward, ptr, ptr);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& v : buf) v *= scale;
}

void dft_backward(const Grid& g, std::vector<cplx>& buf) {
  const PlanPair& plans = plans_for(g.n());
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plans.backward, ptr, ptr);
}

bool mode_kept_by_dealias(const Grid& g, std::size_t i) {
  return 3 * std::abs(g.mode(i)) <= static_cast<int>(g.n());
}

double lr_from_modulus_sq(const Grid& g, const std::vector<double>& mod_sq, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : mod_sq) m = std::max(m, v);
    return std::sqrt(m);
  }
  if (r < 1.0) throw std::invalid_argument("lebesgue_norm: r must be >= 1");
  double acc = 0.0;
  if (r == 2.0) {
    for (double v : mod_sq) acc += v;
  } else {
    const double half_r = r / 2.0;
    for (double v : mod_sq) acc += std::pow(v, half_r);
  }
  return std::pow(g.cell_volume() * acc, 1.0 / r);
}

}  // namespace

ScalarField to_spectral(const ScalarField& f) {
  if (f.is_spectral()) return f;
  const Grid& g = *f.grid();
  std::vector<cplx> buf(g.size());
  const auto& samples = f.samples();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = cplx{samples[i], 0.0};
  dft_forward(g, buf);
  return ScalarField::from_spectrum(f.grid(), std::move(buf));
}

ScalarField to_physical(const ScalarField& f) {
  if (!f.is_spectral()) return f;
  const Grid& g = *f.grid();
  std::vector<cplx> buf = f.spectrum();
  dft_backward(g, buf);
  std::vector<double> samples(buf.size());
  // conjugate symmetry of the coefficients makes the imaginary part round-off
  for (std::size_t i = 0; i < buf.size(); ++i) samples[i] = buf[i].real();
  return ScalarField::from_samples(f.grid(), std::move(samples));
}

VectorField to_spectral(const VectorField& f) {
  if (f.is_spectral()) return f;
  const Grid& g = *f.grid();
  std::array<std::vector<cplx>, 3> comps;
  for (std::size_t c = 0; c < 3; ++c) {
    comps[c] = f.component(c);
    dft_forward(g, comps[c]);
  }
  return VectorField::from_components(f.grid(), Representation::spectral, std::move(comps));
}

VectorField to_physical(const VectorField& f) {
  if (!f.is_spectral()) return f;
  const Grid& g = *f.grid();
  std::array<std::vector<cplx>, 3> comps;
  for (std::size_t c = 0; c < 3; ++c) {
    comps[c] = f.component(c);
    dft_backward(g, comps[c]);
  }
  return VectorField::from_components(f.grid(), Representation::physical, std::move(comps));
}

ScalarField dealias(const ScalarField& f) {
  ScalarField out = to_spectral(f);
  const Grid& g = *out.grid();
  std::vector<cplx> coeffs = out.spectrum();
  const std::size_t n = g.n();
  std::size_t idx = 0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    const bool kz = mode_kept_by_dealias(g, iz);
    for (std::size_t iy = 0; iy < n; ++iy) {
      const bool kyz = kz && mode_kept_by_dealias(g, iy);
      for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
        if (!(kyz && mode_kept_by_dealias(g, ix))) coeffs[idx] = cplx{0.0, 0.0};
      }
    }
  }
  return ScalarField::from_spectrum(out.grid(), std::move(coeffs));
}

VectorField dealias(const VectorField& f) {
  VectorField out = to_spectral(f);
  const Grid& g = *out.grid();
  const std::size_t n = g.n();
  std::array<std::vector<cplx>, 3> comps = {out.component(0), out.component(1),
                                            out.component(2)};
  std::size_t idx = 0;
  for (std::size_t iz = 0; iz < n; ++iz) {
    const bool kz = mode_kept_by_dealias(g, iz);
    for (std::size_t iy = 0; iy < n; ++iy) {
      const bool kyz = kz && mode_kept_by_dealias(g, iy);
      for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
        if (!(kyz && mode_kept_by_dealias(g, ix))) {
          comps[0][idx] = comps[1][idx] = comps[2][idx] = cplx{0.0, 0.0};
        }
      }
    }
  }
  return VectorField::from_components(out.grid(), Representation::spectral, std::move(comps));
}

double sobolev_norm(const ScalarField& f, double s) {
  ScalarField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  const auto& coeffs = spec.spectrum();
  double acc = 0.0;
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + k2, s);
    acc += w * std::norm(coeffs[idx]);
  });
  return std::sqrt(g.volume() * acc);
}

double sobolev_norm(const VectorField& f, double s) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  double acc = 0.0;
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + k2, s);
    acc += w * (std::norm(spec.component(0)[idx]) + std::norm(spec.component(1)[idx]) +
                std::norm(spec.component(2)[idx]));
  });
  return std::sqrt(g.volume() * acc);
}

double lebesgue_norm(const ScalarField& f, double r) {
  ScalarField phys = to_physical(f);
  const auto& samples = phys.samples();
  std::vector<double> mod_sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mod_sq[i] = samples[i] * samples[i];
  return lr_from_modulus_sq(*phys.grid(), mod_sq, r);
}

double lebesgue_norm(const VectorField& f, double r) {
  VectorField phys = to_physical(f);
  std::vector<double> mod_sq(phys.grid()->size(), 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& comp = phys.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) mod_sq[i] += std::norm(comp[i]);
  }
  return lr_from_modulus_sq(*phys.grid(), mod_sq, r);
}

double l2_norm(const ScalarField& f) {
  if (f.is_spectral()) {
    const Grid& g = *f.grid();
    double acc = 0.0;
    for (const auto& v : f.spectrum()) acc += std::norm(v);
    return std::sqrt(g.volume() * acc);
  }
  return lebesgue_norm(f, 2.0);
}

double l2_norm(const VectorField& f) {
  if (f.is_spectral()) {
    const Grid& g = *f.grid();
    double acc = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
      for (const auto& v : f.component(c)) acc += std::norm(v);
    }
    return std::sqrt(g.volume() * acc);
  }
  return lebesgue_norm(f, 2.0);
}

double w26_norm(const VectorField& f) {
  VectorField spec = to_spectral(f);
  const Grid& g = *spec.grid();
  const std::size_t n = g.n();
  const std::size_t total = g.size();

  // pointwise squared moduli of f, grad f and hess f (all components)
  std::vector<double> mod0(total, 0.0), mod1(total, 0.0), mod2(total, 0.0);

  auto accumulate_modulus = [&](std::vector<cplx> coeffs, std::vector<double>& target) {
    dft_backward(g, coeffs);
    for (std::size_t i = 0; i < total; ++i) target[i] += std::norm(coeffs[i]);
  };

  auto multiply_ik = [&](const std::vector<cplx>& in, std::size_t axis) {
    std::vector<cplx> out(total);
    std::size_t idx = 0;
    for (std::size_t iz = 0; iz < n; ++iz) {
      for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix, ++idx) {
          const std::size_t i = (axis == 0) ? ix : (axis == 1) ? iy : iz;
          out[idx] = cplx{0.0, g.wavenumber_deriv(i)} * in[idx];
        }
      }
    }
    return out;
  };

  for (std::size_t c = 0; c < 3; ++c) {
    const auto& coeffs = spec.component(c);
    accumulate_modulus(coeffs, mod0);
    for (std::size_t a = 0; a < 3; ++a) {
      std::vector<cplx> da = multiply_ik(coeffs, a);
      accumulate_modulus(da, mod1);
      for (std::size_t b = 0; b < 3; ++b) {
        accumulate_modulus(multiply_ik(da, b), mod2);
      }
    }
  }

  return lr_from_modulus_sq(g, mod0, 6.0) + lr_from_modulus_sq(g, mod1, 6.0) +
         lr_from_modulus_sq(g, mod2, 6.0);
}

double strichartz_norm(std::span<const std::pair<double, double>> samples, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& [t, a] : samples) m = std::max(m, a);
    return m;
  }
  if (samples.size() < 2) {
    throw std::invalid_argument("strichartz_norm: finite q needs at least 2 samples");
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double dt = samples[i].first - samples[i - 1].first;
    if (dt <= 0.0) throw std::invalid_argument("strichartz_norm: samples not time-ordered");
    const double fa = std::pow(samples[i - 1].second, q);
    const double fb = std::pow(samples[i].second, q);
    acc += 0.5 * dt * (fa + fb);
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace zak
