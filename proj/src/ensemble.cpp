#include "seesaw/dynamics.hpp"

#include "detail/wave_stepper.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace seesaw {

const Series& EnsembleResult::standard_error(const std::string& name) const {
  for (const auto& s : standard_errors) {
    if (s.name == name) return s;
  }
  throw SeesawError("EnsembleResult: no standard error for '" + name + "'");
}

namespace {

// Runs fn(begin, end) over contiguous chunks of [0, count) on `workers`
// threads and rethrows the first failure.
template <typename Fn>
void parallel_chunks(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk, end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

EnsembleResult run_mcwf_ensemble(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                 const StateVector& psi0, const IntegratorConfig& cfg,
                                 const EnsembleConfig& ensemble, const ObservableSet& observables) {
  cfg.validate();
  if (ensemble.n_traj < 1) throw SeesawError("run_mcwf_ensemble: n_traj must be >= 1");
  detail::require_hermitian(H, "run_mcwf_ensemble");
  require_same_space(H.space(), psi0.space(), "run_mcwf_ensemble");
  detail::require_normalized(psi0, "run_mcwf_ensemble");
  std::vector<SparseMatrix> jump_matrices;
  for (const auto& c : jumps) {
    require_same_space(H.space(), c.space(), "run_mcwf_ensemble");
    jump_matrices.push_back(c.matrix());
  }
  const SparseMatrix generator = SparseMatrix(effective_hamiltonian(H, jumps).matrix() * (-kI));

  const std::size_t n = ensemble.n_traj;
  const std::size_t workers =
      ensemble.workers ? ensemble.workers : std::max(1u, std::thread::hardware_concurrency());
  const HilbertSpace& space = psi0.space();
  const bool need_density = ensemble.keep_densities || !observables.all_linear();

  EnsembleResult result;
  result.seeds.resize(n);
  for (std::size_t k = 0; k < n; ++k) result.seeds[k] = trajectory_seed(ensemble.master_seed, k);

  std::vector<detail::WaveStepper> steppers;
  steppers.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    steppers.emplace_back(generator, jump_matrices, psi0.amplitudes(), result.seeds[k], cfg.dt);
  }

  TrajectoryRecord& agg = result.aggregate;
  agg.seed = ensemble.master_seed;
  for (const auto& o : observables.items()) {
    agg.observables.push_back(Series{o.name, o.is_complex, o.diagnostic, {}});
    if (o.linear) result.standard_errors.push_back(Series{o.name, o.is_complex, o.diagnostic, {}});
  }

  const std::size_t n_obs = observables.size();
  std::vector<Ket> states(n);
  std::vector<std::vector<Complex>> values(n, std::vector<Complex>(n_obs));

  Index done = 0;
  for (Index target : cfg.record_steps()) {
    parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        steppers[k].advance(done, target);
        states[k] = steppers[k].normalized_state();
        const StateVector psi = StateVector::unnormalized(space, states[k]);
        for (std::size_t i = 0; i < n_obs; ++i) {
          if (observables.items()[i].linear) values[k][i] = observables.items()[i].on_state(psi);
        }
      }
    });
    done = target;

    std::optional<DensityMatrix> rho;
    if (need_density) {
      // Each worker owns a column block; every entry sums trajectories in index order.
      CMatrix acc = CMatrix::Zero(space.dim(), space.dim());
      parallel_chunks(static_cast<std::size_t>(space.dim()), workers,
                      [&](std::size_t c0, std::size_t c1) {
                        const Index cols = static_cast<Index>(c1 - c0);
                        for (std::size_t k = 0; k < n; ++k) {
                          acc.middleCols(static_cast<Index>(c0), cols).noalias() +=
                              states[k] * states[k].segment(static_cast<Index>(c0), cols).adjoint();
                        }
                      });
      acc /= static_cast<double>(n);
      rho = DensityMatrix::trusted(space, std::move(acc));
    }

    agg.times.push_back(static_cast<double>(target) * cfg.dt);
    std::size_t se_slot = 0;
    for (std::size_t i = 0; i < n_obs; ++i) {
      const Observable& o = observables.items()[i];
      if (!o.linear) {
        agg.observables[i].values.push_back(o.on_density(*rho));
        continue;
      }
      Complex mean(0.0);
      for (std::size_t k = 0; k < n; ++k) mean += values[k][i];
      mean /= static_cast<double>(n);
      double re_var = 0.0, im_var = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const Complex d = values[k][i] - mean;
        re_var += d.real() * d.real();
        im_var += d.imag() * d.imag();
      }
      const double denom = n > 1 ? static_cast<double>(n) * static_cast<double>(n - 1) : 1.0;
      agg.observables[i].values.push_back(mean);
      result.standard_errors[se_slot++].values.emplace_back(std::sqrt(re_var / denom),
                                                            std::sqrt(im_var / denom));
    }
    if (ensemble.keep_densities) result.densities.push_back(*rho);
    if (target == cfg.steps() && rho) agg.final_density = *rho;
  }

  result.jump_counts.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& jt = steppers[k].jump_times();
    result.jump_counts[k] = jt.size();
    agg.jump_times.insert(agg.jump_times.end(), jt.begin(), jt.end());
    agg.max_norm_drift = std::max(agg.max_norm_drift, steppers[k].max_norm_drift());
  }
  std::sort(agg.jump_times.begin(), agg.jump_times.end());
  agg.final_state = StateVector(space, states[0]);
  return result;
}

}  // namespace seesaw
