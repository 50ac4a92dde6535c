#include "zak/solver.hpp"

#include <cmath>
#include <sstream>

namespace zak {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

// Pointwise unitary phase kick u <- exp(-i n h) u with the real density n,
// dealiased afterwards (the exponential scatters beyond the kept band).
VectorField phase_kick(const VectorField& u, const std::vector<double>& n_phys, double h) {
  VectorField u_phys = to_physical(u);
  std::array<std::vector<cplx>, 3> comps = {u_phys.component(0), u_phys.component(1),
                                            u_phys.component(2)};
  const std::size_t total = n_phys.size();
  std::vector<cplx> phase(total);
  for (std::size_t i = 0; i < total; ++i) phase[i] = std::polar(1.0, -n_phys[i] * h);
  for (auto& comp : comps) {
    for (std::size_t i = 0; i < total; ++i) comp[i] *= phase[i];
  }
  return dealias(VectorField::from_components(u.grid(), Representation::physical,
                                              std::move(comps)));
}

// |u|^2 on the grid (pointwise Euclidean modulus squared), dealiased spectral.
ScalarField modulus_squared(const VectorField& u) {
  VectorField u_phys = to_physical(u);
  std::vector<double> g(u.grid()->size(), 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto& comp = u_phys.component(c);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += std::norm(comp[i]);
  }
  return dealias(ScalarField::from_samples(u.grid(), std::move(g)));
}

// Explicit midpoint substep of du/dt = -i Q(n u) with n frozen; h is the
// substep size. Operates on physical u for the products.
VectorField zl_kick(const VectorField& u, const ScalarField& n_phys_field, double h) {
  auto rhs = [&](const VectorField& w) {
    ScalarField n = n_phys_field;
    VectorField prod = VectorField::zeros(w.grid(), Representation::physical);
    {
      VectorField w_phys = to_physical(w);
      const auto& ns = n.samples();
      std::array<std::vector<cplx>, 3> comps = {w_phys.component(0), w_phys.component(1),
                                                w_phys.component(2)};
      for (auto& comp : comps) {
        for (std::size_t i = 0; i < ns.size(); ++i) comp[i] *= ns[i];
      }
      prod = VectorField::from_components(w.grid(), Representation::physical,
                                          std::move(comps));
    }
    VectorField projected = project_Q(dealias(prod));
    projected *= cplx{0.0, -1.0};
    return projected;  // spectral
  };

  VectorField u_spec = to_spectral(u);
  VectorField k1 = rhs(u_spec);
  VectorField mid = u_spec;
  {
    VectorField half = k1;
    half *= 0.5 * h;
    mid += half;
  }
  VectorField k2 = rhs(mid);
  k2 *= h;
  VectorField out = u_spec;
  out += k2;
  return out;
}

void check_finite(const SystemState& s, double mass0, double wave0) {
  const double m = l2_norm(s.u);
  const double wn = l2_norm(s.n) + l2_norm(s.nt);
  const bool finite = std::isfinite(m) && std::isfinite(wn);
  // discrete stand-in for the blow-up alternative
  const bool bounded = m <= 1e6 * (mass0 + 1.0) && wn <= 1e6 * (wave0 + 1.0);
  if (!finite || !bounded) {
    std::ostringstream msg;
    msg << "solution norm " << (finite ? "exceeded 1e6 x initial" : "became non-finite")
        << " at t = " << s.t;
    throw DivergenceError(s.t, msg.str());
  }
}

double zero_mode_mean(const ScalarField& f) {
  if (f.is_spectral()) return f.spectrum()[0].real();
  const auto& s = f.samples();
  double acc = 0.0;
  for (double v : s) acc += v;
  return acc / static_cast<double>(s.size());
}

}  // namespace

DivergenceError::DivergenceError(double t, const std::string& what)
    : std::runtime_error(what), t_(t) {}

void SolverParams::validate() const {
  require(dt > 0.0, "SolverParams: dt must be positive");
  require(t_final >= 0.0, "SolverParams: t_final must be nonnegative");
  require(t_final == 0.0 || dt <= t_final, "SolverParams: dt must not exceed t_final");
  require(save_every >= 1, "SolverParams: save_every must be positive");
  if (save_every != kSaveEndsOnly) {
    require(static_cast<double>(save_every) * dt <= 0.1 + 1e-12,
            "SolverParams: save cadence save_every*dt must not exceed 0.1");
  }
}

SystemState step_zg(const SystemState& s, const SolverParams& p) {
  require(!p.alpha.is_limit(), "step_zg: alpha must be finite");
  const double dt = p.dt;

  ScalarField n_phys = to_physical(s.n);

  // half kick with the current density
  VectorField u = phase_kick(s.u, n_phys.samples(), 0.5 * dt);

  // exact linear drift; the wave source is the modulus at the drift midpoint
  VectorField u_mid = apply_UZ(u, 0.5 * dt, p.alpha);
  ScalarField g = modulus_squared(u_mid);
  u = apply_UZ(u_mid, 0.5 * dt, p.alpha);
  auto [n_new, nt_new] = wave_forced_frozen(s.n, s.nt, g, dt);

  // half kick with the updated density
  ScalarField n_new_phys = to_physical(n_new);
  u = phase_kick(u, n_new_phys.samples(), 0.5 * dt);

  return SystemState{std::move(u), std::move(n_new), std::move(nt_new), s.t + dt};
}

SystemState step_zl(const SystemState& s, const SolverParams& p) {
  require(p.alpha.is_limit(), "step_zl: alpha must be the limit value");
  const double dt = p.dt;

  ScalarField n_phys = to_physical(s.n);

  VectorField u = zl_kick(s.u, n_phys, 0.5 * dt);

  VectorField u_mid = apply_schrodinger(u, 0.5 * dt);
  ScalarField g = modulus_squared(u_mid);
  u = apply_schrodinger(u_mid, 0.5 * dt);
  auto [n_new, nt_new] = wave_forced_frozen(s.n, s.nt, g, dt);

  ScalarField n_new_phys = to_physical(n_new);
  u = zl_kick(u, n_new_phys, 0.5 * dt);

  return SystemState{std::move(u), std::move(n_new), std::move(nt_new), s.t + dt};
}

Trajectory run(const SystemState& initial, const SolverParams& p) {
  p.validate();
  require(same_grid(initial.u.grid(), initial.n.grid()) &&
              same_grid(initial.u.grid(), initial.nt.grid()),
          "run: state fields live on different grids");

  const bool limit = p.alpha.is_limit();

  SystemState state{to_spectral(initial.u), to_spectral(initial.n),
                    to_spectral(initial.nt), 0.0};
  if (limit) {
    state.u = project_Q(state.u);  // the limit system lives on irrotational fields
  }

  Trajectory traj;
  traj.params = p;

  const double mass0 = l2_norm(state.u);
  const double wave0 = l2_norm(state.n) + l2_norm(state.nt);
  const bool nt_mean_zero =
      std::abs(zero_mode_mean(state.nt)) <= 1e-10 * (1.0 + l2_norm(state.nt));

  auto record = [&](const SystemState& s) {
    Trajectory::Diagnostics d;
    d.mass = mass(s);
    d.hamiltonian = std::numeric_limits<double>::quiet_NaN();
    if (nt_mean_zero) {
      try {
        d.hamiltonian = hamiltonian(s, p.alpha);
      } catch (const std::invalid_argument&) {
        // a diagnostic must not abort the run; NaN marks it unavailable
      }
    }
    VectorField v = compute_v(s.u, s.n, p.alpha);
    d.residual = state_equation_residual(s.u, v, s.n, p.alpha);
    traj.samples.push_back(s);
    traj.diagnostics.push_back(d);
  };

  record(state);
  if (p.t_final == 0.0) return traj;

  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(p.t_final / p.dt));
  require(n_steps >= 1, "run: t_final shorter than one step");

  for (std::size_t k = 1; k <= n_steps; ++k) {
    state = limit ? step_zl(state, p) : step_zg(state, p);
    state.t = static_cast<double>(k) * p.dt;
    check_finite(state, mass0, wave0);
    const bool is_last = (k == n_steps);
    const bool on_cadence = (p.save_every != SolverParams::kSaveEndsOnly) &&
                            (k % p.save_every == 0);
    if (is_last || on_cadence) record(state);
  }
  return traj;
}

double mass(const SystemState& s) { return l2_norm(s.u); }

double hamiltonian(const SystemState& s, const AlphaParam& alpha) {
  const Grid& g = *s.u.grid();

  ScalarField nt_spec = to_spectral(s.nt);
  const double nt_mean = nt_spec.spectrum()[0].real();
  if (std::abs(nt_mean) > 1e-10 * (1.0 + l2_norm(nt_spec))) {
    throw std::invalid_argument("hamiltonian: nt must have zero mean");
  }

  const double div2 = divergence_l2(s.u);
  double energy = div2 * div2;
  if (alpha.is_limit()) {
    const double curl = curl_l2(s.u);
    if (curl > 1e-8 * (1.0 + l2_norm(s.u))) {
      throw std::invalid_argument("hamiltonian: limit system requires irrotational u");
    }
  } else {
    const double curl = curl_l2(s.u);
    energy += alpha.value() * curl * curl;
  }

  // coupling <n, |u|^2>: both factors band-limited, grid quadrature exact
  ScalarField mod2 = to_physical(modulus_squared(s.u));
  ScalarField n_phys = to_physical(s.n);
  double coupling = 0.0;
  {
    const auto& a = n_phys.samples();
    const auto& b = mod2.samples();
    for (std::size_t i = 0; i < a.size(); ++i) coupling += a[i] * b[i];
    coupling *= g.cell_volume();
  }
  energy += coupling;

  const double n_l2 = l2_norm(s.n);
  energy += 0.5 * n_l2 * n_l2;

  // 1/2 || |grad|^-1 nt ||^2 over nonzero modes
  double acc = 0.0;
  const auto& nt_coeffs = nt_spec.spectrum();
  for_each_mode(g, [&](std::size_t idx, double kx, double ky, double kz) {
    const double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 > 0.0) acc += std::norm(nt_coeffs[idx]) / k2;
  });
  energy += 0.5 * g.volume() * acc;

  return energy;
}

}  // namespace zak
