#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "zak/operators.hpp"

namespace zak {

/// One time slice of either system: envelope u, density fluctuation n and its
/// time derivative nt, all on a single grid; n and nt real-valued.
struct SystemState {
  VectorField u;
  ScalarField n;
  ScalarField nt;
  double t = 0.0;
};

/// Thrown when a run leaves the finite / bounded regime; carries the time of
/// failure.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, const std::string& what);
  double time() const { return t_; }

 private:
  double t_;
};

struct SolverParams {
  /// Sentinel for save_every: record only the first and last states.
  static constexpr std::size_t kSaveEndsOnly = std::numeric_limits<std::size_t>::max();

  AlphaParam alpha{1.0};          // finite selects the full system, infinite the limit
  double dt = 1e-3;
  double t_final = 0.5;
  std::size_t save_every = 10;    // sample cadence must satisfy save_every*dt <= 0.1

  void validate() const;
};

/// Time-sampled trajectory with per-sample diagnostics.
struct Trajectory {
  struct Diagnostics {
    double mass = 0.0;
    double hamiltonian = 0.0;
    double residual = 0.0;
  };

  SolverParams params;
  std::vector<SystemState> samples;
  std::vector<Diagnostics> diagnostics;

  double sample_time(std::size_t i) const { return samples[i].t; }
  std::size_t size() const { return samples.size(); }
};

/// One Strang step of the full system (finite alpha): exact pointwise phase
/// half-kicks around an exact linear drift, with the wave source |u|^2 frozen
/// at the drift midpoint state. Second-order accurate in dt.
SystemState step_zg(const SystemState& s, const SolverParams& p);

/// One Strang step of the limit system (alpha = infinity): the projected kick
/// du/dt = -i Q(n u) is integrated by one explicit midpoint substep, the drift
/// is the free Schroedinger group plus the same frozen-source wave update.
/// Preserves irrotationality of u.
SystemState step_zl(const SystemState& s, const SolverParams& p);

/// Iterate the appropriate step from the given state; records samples every
/// save_every steps, always including t = 0 and t_final. For the limit system
/// the initial u is projected onto irrotational fields. t_final is rounded to
/// the nearest whole number of steps.
Trajectory run(const SystemState& initial, const SolverParams& p);

/// ||u||_L2, invariant under kicks and drifts.
double mass(const SystemState& s);

/// Conserved energy of the semi-discrete flow:
///   alpha ||curl u||^2 + ||div u||^2 + <n, |u|^2> + 1/2 ||n||^2
///   + 1/2 || |grad|^-1 nt ||^2   (zero mode of nt excluded; must be zero-mean)
/// For the limit system the curl term is dropped and u must be irrotational.
double hamiltonian(const SystemState& s, const AlphaParam& alpha);

}  // namespace zak
