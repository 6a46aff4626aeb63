#pragma once

// Internal: RK4 wave-function stepping shared by the unitary propagator, the
// single-trajectory MCWF driver and the ensemble driver.

#include "seesaw/dynamics.hpp"

#include <random>

namespace seesaw::detail {

// One classical RK4 step of d psi/dt = G psi.
void rk4_step(const SparseMatrix& generator, const Ket& in, Ket& out, double dt);

// Uniform double in the open interval (0, 1) from 53 random bits.
double uniform_open(std::mt19937_64& rng);

// Advances one wave function on the fixed grid t_k = k dt.
//
// Without jump operators the state is renormalized every step (unitary
// propagation). With jumps it evolves unnormalized under H_eff and jumps when
// the squared norm crosses a uniformly drawn threshold.
class WaveStepper {
 public:
  WaveStepper(const SparseMatrix& generator, const std::vector<SparseMatrix>& jumps, Ket psi0,
              std::uint64_t seed, double dt);

  // Integrates from step `from` to step `to` (grid indices).
  void advance(Index from, Index to);

  Ket normalized_state() const { return psi_ / psi_.norm(); }
  const std::vector<double>& jump_times() const { return jump_times_; }
  double max_norm_drift() const { return max_norm_drift_; }

 private:
  void unitary_step();
  void jump_step(double t0);
  void apply_jump(double t);

  const SparseMatrix* generator_;
  const std::vector<SparseMatrix>* jumps_;
  Ket psi_;
  Ket scratch_;
  Ket trial_;
  std::mt19937_64 rng_;
  double dt_;
  double threshold_ = 0.0;
  double max_norm_drift_ = 0.0;
  std::vector<double> jump_times_;
};

// Appends observable values at record times.
class Recorder {
 public:
  Recorder(const ObservableSet& observables, TrajectoryRecord& record);

  void record(double t, const StateVector& psi);
  void record(double t, const DensityMatrix& rho);

 private:
  const ObservableSet& observables_;
  TrajectoryRecord& record_;
};

void require_hermitian(const SparseOperator& H, const char* where);
void require_normalized(const StateVector& psi, const char* where);

}  // namespace seesaw::detail
