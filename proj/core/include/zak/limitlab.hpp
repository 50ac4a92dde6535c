#pragma once

#include <cstdint>
#include <vector>

#include "zak/solver.hpp"

namespace zak {

/// Seeded recipe for random band-limited initial data. Well-prepared data
/// carry a solenoidal component that shrinks as 1/alpha (when alpha-coupled);
/// ill-prepared data keep a fixed O(1) solenoidal component.
struct DataRecipe {
  enum class Kind { well_prepared, ill_prepared };

  std::uint64_t seed = 1;
  Kind kind = Kind::well_prepared;
  int n_modes = 3;                 // band limit |m| <= n_modes
  double eps_solenoidal = 0.25;    // H2 size of the solenoidal component
  bool alpha_coupling = true;      // scale the solenoidal part by 1/alpha
};

/// Data sizes reported by the generators.
struct DataNorms {
  double u0_h2 = 0.0;
  double n0_h1 = 0.0;
  double n1_l2 = 0.0;
  double p_u0_h2 = 0.0;
};

/// Initial state for the given alpha (infinite alpha yields the limit datum,
/// whose envelope is purely irrotational). Deterministic in the seed.
SystemState gen_initial(const DataRecipe& recipe, const GridPtr& grid,
                        const AlphaParam& alpha, DataNorms* norms = nullptr);

SystemState gen_well_prepared(const DataRecipe& recipe, const GridPtr& grid,
                              const AlphaParam& alpha, DataNorms* norms = nullptr);
SystemState gen_ill_prepared(const DataRecipe& recipe, const GridPtr& grid,
                             DataNorms* norms = nullptr);

/// Per-alpha trajectory distances in the solution-space norms.
struct SweepRecord {
  double alpha = 0.0;
  double err_u_LinfH2 = 0.0;   // sup_t H2 distance of u
  double err_u_L2W26 = 0.0;    // L2-in-time of the W^{2,6} distance of u
  double err_n_W1 = 0.0;       // sup_t H1 of n plus sup_t L2 of nt
  double err_v_L2L6 = 0.0;     // L2-in-time of the L6 distance of v
  double runtime_seconds = 0.0;
  bool diverged = false;

  double err_total() const {
    return err_u_LinfH2 + err_u_L2W26 + err_n_W1 + err_v_L2L6;
  }
};

/// Distances between two trajectories with identical grids and sample times;
/// v is produced per sample by compute_v with each trajectory's own alpha.
SweepRecord error_norms(const Trajectory& traj_a, const Trajectory& traj_b);

/// Run the limit system once as reference, then the full system per alpha
/// from the recipe's alpha-dependent data; runs execute concurrently
/// (ZAK_THREADS caps the worker count). Diverged runs are flagged.
std::vector<SweepRecord> alpha_sweep(const DataRecipe& recipe, const GridPtr& grid,
                                     const SolverParams& p,
                                     const std::vector<double>& alphas);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares in log x - log y; nonpositive or nonfinite values
/// are excluded, fewer than 3 surviving points is an error.
RateFit fit_rate(const std::vector<std::pair<double, double>>& xy);
RateFit fit_rate(const std::vector<SweepRecord>& records);

struct DecayRecord {
  double alpha = 0.0;
  double norm = 0.0;   // L^q-in-time of the L^r norm of U(alpha t) P f
};

/// Fast-group decay measurement: evolve the solenoidal part of f under the
/// rescaled free group and return the L^q(0,T;L^r) norm per alpha. The pair
/// (q, r) must be Schroedinger admissible; r = 2 is evaluated spectrally.
/// Sampling resolves the fastest phase present in the data. On the periodic
/// box the measurement reflects free-space decay only before wrap-around;
/// see wrap_time().
std::vector<DecayRecord> strichartz_decay(const VectorField& f,
                                          const std::vector<double>& alphas,
                                          double q, double r, double horizon);

/// Time L^2/(4 pi) past which a dispersing packet has crossed the box.
double wrap_time(const Grid& g);

/// Localized wave packet: a seeded band-limited carrier under a Gaussian
/// envelope of width rel_width * L centered in the box, normalized to unit L2.
/// Effectively band-limited; used by the decay experiments, where dispersion
/// is only visible for localized data.
VectorField gen_packet(const GridPtr& grid, std::uint64_t seed, int n_modes,
                       double rel_width);

struct LayerRecord {
  double alpha = 0.0;
  double err_unshifted_LinfL2 = 0.0;  // sup_t L2 distance of u, layer kept
  double err_shifted_L2L6 = 0.0;      // L2-in-time L6 distance after removing
                                      // the fast free evolution of P u0
  bool diverged = false;
};

/// Initial-layer demonstration on ill-prepared data: the unshifted error
/// cannot vanish (the fast group is unitary), the shifted one decays.
std::vector<LayerRecord> initial_layer_demo(const DataRecipe& recipe, const GridPtr& grid,
                                            const SolverParams& p,
                                            const std::vector<double>& alphas);

/// Worker cap for sweep fan-out: ZAK_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace zak
