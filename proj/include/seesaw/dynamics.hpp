#pragma once

#include "seesaw/models.hpp"
#include "seesaw/observables.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace seesaw {

// Fixed-step classical fourth-order Runge-Kutta on a uniform grid t_k = k dt.
// Records are taken at t = 0 and every `record_stride` steps thereafter, plus
// the final step.
struct IntegratorConfig {
  enum class Method { rk4 };

  double dt = 0.01;
  double t_final = 1.0;
  Index record_stride = 1;
  Method method = Method::rk4;

  void validate() const;
  Index steps() const;
  std::vector<Index> record_steps() const;
  // Same record times with dt halved.
  IntegratorConfig refined() const;
};

inline constexpr double kNormDriftLimit = 1e-6;
inline constexpr double kTraceDriftLimit = 1e-8;
// Largest excursion of a master-equation population outside [0, 1].
inline constexpr double kPopulationGuard = 1e-6;

struct Series {
  std::string name;
  bool is_complex = false;
  bool diagnostic = false;
  std::vector<Complex> values;

  std::vector<double> real() const;
  std::vector<double> imag() const;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<Series> observables;
  std::vector<double> jump_times;
  StateVector final_state;
  std::optional<DensityMatrix> final_density;

  // Largest per-step |norm - 1| before renormalization (pure-state solvers)
  // or |Tr rho - 1| (master equation).
  double max_norm_drift = 0.0;

  bool has(const std::string& name) const;
  const Series& series(const std::string& name) const;
  std::vector<double> real(const std::string& name) const;
};

// --------------------------------------------------------------- unitary ---

// Evolves under fixed Hermitian H, renormalizing every step; throws
// NumericalError if any step moves the norm by more than kNormDriftLimit.
TrajectoryRecord propagate_schrodinger(const SparseOperator& H, const StateVector& psi0,
                                       const IntegratorConfig& cfg,
                                       const ObservableSet& observables = {});

// ------------------------------------------------------------ mean field ---

struct MeanFieldState {
  Ket atomic_amplitudes;  // over the fixed-N two-site basis
  Complex alpha{0.0, 0.0};
};

// Atoms under J(b_l^+ b_r + h.c.) + Jtilde (n_l - n_r) 2 Re(alpha), with
// d alpha/dt = [i(Delta_c - U0 N) - kappa] alpha - i Jtilde <n_l - n_r>.
// Records photon_number (|alpha|^2), alpha, imbalance, pair_correlation.
TrajectoryRecord integrate_meanfield(const TwoSiteParams& p, const MeanFieldState& s0,
                                     const IntegratorConfig& cfg);

// -------------------------------------------------------- master equation ---

// d rho/dt = -i[H, rho] + sum_j (c_j rho c_j^+ - {c_j^+ c_j, rho} / 2).
// With c = sqrt(2 kappa) a the photon number decays at 2 kappa.
TrajectoryRecord integrate_lindblad(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                    const DensityMatrix& rho0, const IntegratorConfig& cfg,
                                    const ObservableSet& observables = {});

// ----------------------------------------------------- quantum trajectories ---

// H - (i/2) sum_j c_j^+ c_j
SparseOperator effective_hamiltonian(const SparseOperator& H, const std::vector<SparseOperator>& jumps);

// Per-trajectory seed derived from (master_seed, index) by a counter-based mix.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

// Monte Carlo wave function trajectory with waiting-time jumps: draw r in
// (0, 1), evolve under H_eff until |psi|^2 = r (bisection inside the step),
// jump through channel j with weight <c_j^+ c_j>, renormalize, redraw.
// Observables are recorded on the normalized state. With no jump operators
// this is exactly propagate_schrodinger.
TrajectoryRecord run_mcwf_trajectory(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                     const StateVector& psi0, const IntegratorConfig& cfg,
                                     std::uint64_t seed, const ObservableSet& observables = {});

struct EnsembleConfig {
  std::size_t n_traj = 100;
  std::uint64_t master_seed = 1;
  std::size_t workers = 0;      // 0: hardware concurrency
  bool keep_densities = false;  // return the averaged rho at every record time
};

struct EnsembleResult {
  // Ensemble-averaged rho per record time; filled when keep_densities is set.
  std::vector<DensityMatrix> densities;
  // Observables of the ensemble: linear ones as trajectory averages, the rest
  // evaluated on the averaged rho. jump_times holds every jump of every
  // trajectory, sorted.
  TrajectoryRecord aggregate;
  // Standard error of the trajectory mean, for linear observables only.
  std::vector<Series> standard_errors;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> jump_counts;

  const Series& standard_error(const std::string& name) const;
};

// Trajectories advance in lockstep between record times; each worker handles
// a fixed index range and reductions run in trajectory-index order, so the
// result does not depend on the worker count.
EnsembleResult run_mcwf_ensemble(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                 const StateVector& psi0, const IntegratorConfig& cfg,
                                 const EnsembleConfig& ensemble, const ObservableSet& observables = {});

// ------------------------------------------------------------ step check ---

// Runs `final_values` at cfg and at cfg.refined() and returns the largest
// |change| / max(|value|, 1) over the returned values.
double step_convergence_change(
    const std::function<std::vector<double>(const IntegratorConfig&)>& final_values,
    const IntegratorConfig& cfg);

}  // namespace seesaw
