#include "seesaw/dynamics.hpp"

#include "detail/wave_stepper.hpp"

#include <cmath>
#include <sstream>

namespace seesaw {

// ------------------------------------------------------------- config ---

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw SeesawError("integrator: dt must be > 0");
  if (!(t_final >= dt * (1.0 - 1e-12))) throw SeesawError("integrator: t_final must be >= dt");
  if (record_stride < 1) throw SeesawError("integrator: record_stride must be >= 1");
}

Index IntegratorConfig::steps() const {
  validate();
  return std::max<Index>(1, std::llround(t_final / dt));
}

std::vector<Index> IntegratorConfig::record_steps() const {
  const Index n = steps();
  std::vector<Index> out;
  for (Index s = 0; s <= n; s += record_stride) out.push_back(s);
  if (out.back() != n) out.push_back(n);
  return out;
}

IntegratorConfig IntegratorConfig::refined() const {
  IntegratorConfig c = *this;
  c.dt = dt / 2.0;
  c.record_stride = record_stride * 2;
  return c;
}

// -------------------------------------------------------------- record ---

std::vector<double> Series::real() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

std::vector<double> Series::imag() const {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].imag();
  return out;
}

bool TrajectoryRecord::has(const std::string& name) const {
  for (const auto& s : observables) {
    if (s.name == name) return true;
  }
  return false;
}

const Series& TrajectoryRecord::series(const std::string& name) const {
  for (const auto& s : observables) {
    if (s.name == name) return s;
  }
  throw SeesawError("TrajectoryRecord: no series named '" + name + "'");
}

std::vector<double> TrajectoryRecord::real(const std::string& name) const {
  return series(name).real();
}

namespace detail {

void rk4_step(const SparseMatrix& g, const Ket& in, Ket& out, double dt) {
  const Ket k1 = g * in;
  const Ket k2 = g * (in + (0.5 * dt) * k1);
  const Ket k3 = g * (in + (0.5 * dt) * k2);
  const Ket k4 = g * (in + dt * k3);
  out = in + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

WaveStepper::WaveStepper(const SparseMatrix& generator, const std::vector<SparseMatrix>& jumps,
                         Ket psi0, std::uint64_t seed, double dt)
    : generator_(&generator), jumps_(&jumps), psi_(std::move(psi0)), rng_(seed), dt_(dt) {
  if (!jumps_->empty()) threshold_ = uniform_open(rng_);
}

void WaveStepper::advance(Index from, Index to) {
  for (Index k = from; k < to; ++k) {
    if (jumps_->empty()) {
      unitary_step();
    } else {
      jump_step(static_cast<double>(k) * dt_);
    }
  }
}

void WaveStepper::unitary_step() {
  rk4_step(*generator_, psi_, scratch_, dt_);
  const double norm = scratch_.norm();
  const double drift = std::abs(norm - 1.0);
  if (!(drift <= kNormDriftLimit)) {
    std::ostringstream os;
    os << "unitary step changed the norm by " << drift << " (limit " << kNormDriftLimit
       << "); reduce dt";
    throw NumericalError(os.str());
  }
  max_norm_drift_ = std::max(max_norm_drift_, drift);
  psi_ = scratch_ / norm;
}

void WaveStepper::jump_step(double t0) {
  double t = t0;
  double remaining = dt_;
  while (remaining > 0.0) {
    const double start_norm2 = psi_.squaredNorm();
    rk4_step(*generator_, psi_, trial_, remaining);
    const double end_norm2 = trial_.squaredNorm();
    if (!std::isfinite(end_norm2) || end_norm2 > start_norm2 * (1.0 + kNormDriftLimit)) {
      throw NumericalError("non-Hermitian step increased the norm; reduce dt");
    }
    max_norm_drift_ = std::max(max_norm_drift_, std::max(0.0, end_norm2 / start_norm2 - 1.0));
    if (end_norm2 > threshold_) {
      psi_.swap(trial_);
      return;
    }
    // The squared norm crosses the threshold inside (0, remaining]: bisect.
    double lo = 0.0, hi = remaining;
    bool converged = false;
    for (int iter = 0; iter < 50; ++iter) {
      const double mid = 0.5 * (lo + hi);
      rk4_step(*generator_, psi_, scratch_, mid);
      const double n2 = scratch_.squaredNorm();
      if (n2 > threshold_) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (std::abs(n2 - threshold_) <= 1e-10 * threshold_ || hi - lo <= 1e-13 * dt_) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("jump time bisection did not converge in 50 iterations");
    const double tau = hi;
    rk4_step(*generator_, psi_, scratch_, tau);
    psi_.swap(scratch_);
    t += tau;
    remaining -= tau;
    apply_jump(t);
  }
}

void WaveStepper::apply_jump(double t) {
  std::vector<double> weights(jumps_->size());
  double total = 0.0;
  std::vector<Ket> candidates(jumps_->size());
  for (std::size_t j = 0; j < jumps_->size(); ++j) {
    candidates[j] = (*jumps_)[j] * psi_;
    weights[j] = candidates[j].squaredNorm();
    total += weights[j];
  }
  if (!(total > 0.0)) throw NumericalError("jump requested but every jump channel annihilates the state");
  const double pick = uniform_open(rng_) * total;
  std::size_t channel = 0;
  double acc = weights[0];
  while (channel + 1 < weights.size() && acc < pick) acc += weights[++channel];
  psi_ = candidates[channel] / std::sqrt(weights[channel]);
  jump_times_.push_back(t);
  threshold_ = uniform_open(rng_);
}

Recorder::Recorder(const ObservableSet& observables, TrajectoryRecord& record)
    : observables_(observables), record_(record) {
  for (const auto& o : observables_.items()) {
    record_.observables.push_back(Series{o.name, o.is_complex, o.diagnostic, {}});
  }
}

void Recorder::record(double t, const StateVector& psi) {
  record_.times.push_back(t);
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    record_.observables[i].values.push_back(observables_.items()[i].on_state(psi));
  }
}

void Recorder::record(double t, const DensityMatrix& rho) {
  record_.times.push_back(t);
  for (std::size_t i = 0; i < observables_.size(); ++i) {
    record_.observables[i].values.push_back(observables_.items()[i].on_density(rho));
  }
}

void require_hermitian(const SparseOperator& H, const char* where) {
  if (!H.is_hermitian(1e-10)) {
    throw SeesawError(std::string(where) + ": Hamiltonian is not Hermitian");
  }
}

void require_normalized(const StateVector& psi, const char* where) {
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw SeesawError(std::string(where) + ": initial state is not normalized");
  }
}

}  // namespace detail

// --------------------------------------------------------------- unitary ---

namespace {

TrajectoryRecord run_wave_function(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                   const StateVector& psi0, const IntegratorConfig& cfg,
                                   std::uint64_t seed, const ObservableSet& observables,
                                   const char* where) {
  cfg.validate();
  detail::require_hermitian(H, where);
  require_same_space(H.space(), psi0.space(), where);
  detail::require_normalized(psi0, where);
  std::vector<SparseMatrix> jump_matrices;
  for (const auto& c : jumps) {
    require_same_space(H.space(), c.space(), where);
    jump_matrices.push_back(c.matrix());
  }
  const SparseMatrix generator = SparseMatrix(effective_hamiltonian(H, jumps).matrix() * (-kI));

  TrajectoryRecord rec;
  rec.seed = seed;
  detail::Recorder recorder(observables, rec);
  detail::WaveStepper stepper(generator, jump_matrices, psi0.amplitudes(), seed, cfg.dt);

  Index done = 0;
  for (Index s : cfg.record_steps()) {
    stepper.advance(done, s);
    done = s;
    recorder.record(static_cast<double>(s) * cfg.dt,
                    StateVector::unnormalized(psi0.space(), stepper.normalized_state()));
  }
  rec.final_state = StateVector(psi0.space(), stepper.normalized_state());
  rec.jump_times = stepper.jump_times();
  rec.max_norm_drift = stepper.max_norm_drift();
  return rec;
}

}  // namespace

TrajectoryRecord propagate_schrodinger(const SparseOperator& H, const StateVector& psi0,
                                       const IntegratorConfig& cfg, const ObservableSet& observables) {
  return run_wave_function(H, {}, psi0, cfg, 0, observables, "propagate_schrodinger");
}

SparseOperator effective_hamiltonian(const SparseOperator& H, const std::vector<SparseOperator>& jumps) {
  SparseOperator h_eff = H;
  for (const auto& c : jumps) {
    require_same_space(H.space(), c.space(), "effective_hamiltonian");
    h_eff -= Complex(0.0, 0.5) * (c.adjoint() * c);
  }
  return h_eff;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 finalizer over a Weyl sequence keyed by the master seed
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrajectoryRecord run_mcwf_trajectory(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                     const StateVector& psi0, const IntegratorConfig& cfg,
                                     std::uint64_t seed, const ObservableSet& observables) {
  return run_wave_function(H, jumps, psi0, cfg, seed, observables, "run_mcwf_trajectory");
}

// ------------------------------------------------------------ mean field ---

TrajectoryRecord integrate_meanfield(const TwoSiteParams& p, const MeanFieldState& s0,
                                     const IntegratorConfig& cfg) {
  p.validate();
  cfg.validate();
  const int N = p.N_atoms;
  if (s0.atomic_amplitudes.size() != N + 1) {
    throw SeesawError("integrate_meanfield: atomic state must have dimension N + 1");
  }
  if (std::abs(s0.atomic_amplitudes.norm() - 1.0) > kNormTolerance) {
    throw SeesawError("integrate_meanfield: atomic state is not normalized");
  }
  const SparseMatrix hop = p.J * twosite::hopping(N);
  const Ket imbalance_diag = RVector::LinSpaced(N + 1, N, -N).cast<Complex>();  // N - 2k
  const Complex field_rate(-p.kappa, p.dressed_detuning());

  const auto populations = [](const Ket& c) -> RVector { return c.cwiseAbs2(); };
  // Derivative of (c, alpha).
  const auto rhs = [&](const Ket& c, Complex alpha, Ket& dc, Complex& dalpha) {
    const double tilt = 2.0 * p.Jtilde * alpha.real();
    dc = -kI * (hop * c + (tilt * imbalance_diag).cwiseProduct(c));
    const double d = site_statistics_from_populations(populations(c)).imbalance;
    dalpha = field_rate * alpha - kI * p.Jtilde * d;
  };

  TrajectoryRecord rec;
  rec.observables = {Series{"photon_number", false, false, {}}, Series{"alpha", true, false, {}},
                     Series{"imbalance", false, false, {}}, Series{"pair_correlation", false, false, {}}};
  Ket c = s0.atomic_amplitudes;
  Complex alpha = s0.alpha;
  const auto record = [&](double t) {
    const SiteStatistics st = site_statistics_from_populations(populations(c));
    rec.times.push_back(t);
    rec.observables[0].values.emplace_back(std::norm(alpha));
    rec.observables[1].values.push_back(alpha);
    rec.observables[2].values.emplace_back(st.imbalance);
    rec.observables[3].values.emplace_back(st.pair_correlation);
  };

  const double dt = cfg.dt;
  Ket k1, k2, k3, k4;
  Complex a1, a2, a3, a4;
  Index done = 0;
  for (Index target : cfg.record_steps()) {
    for (; done < target; ++done) {
      rhs(c, alpha, k1, a1);
      rhs(c + (0.5 * dt) * k1, alpha + (0.5 * dt) * a1, k2, a2);
      rhs(c + (0.5 * dt) * k2, alpha + (0.5 * dt) * a2, k3, a3);
      rhs(c + dt * k3, alpha + dt * a3, k4, a4);
      c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      alpha += (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
      const double norm = c.norm();
      const double drift = std::abs(norm - 1.0);
      if (!(drift <= kNormDriftLimit)) {
        throw NumericalError("integrate_meanfield: atomic norm drift exceeds limit; reduce dt");
      }
      rec.max_norm_drift = std::max(rec.max_norm_drift, drift);
      c /= norm;
    }
    record(static_cast<double>(target) * dt);
  }
  rec.final_state = StateVector(HilbertSpace::single(kAtomsLabel, N + 1), c);
  return rec;
}

// -------------------------------------------------------- master equation ---

TrajectoryRecord integrate_lindblad(const SparseOperator& H, const std::vector<SparseOperator>& jumps,
                                    const DensityMatrix& rho0, const IntegratorConfig& cfg,
                                    const ObservableSet& observables) {
  cfg.validate();
  detail::require_hermitian(H, "integrate_lindblad");
  require_same_space(H.space(), rho0.space(), "integrate_lindblad");
  std::vector<SparseMatrix> c;
  for (const auto& j : jumps) {
    require_same_space(H.space(), j.space(), "integrate_lindblad");
    c.push_back(j.matrix());
  }
  const SparseMatrix g = SparseMatrix(effective_hamiltonian(H, jumps).matrix() * (-kI));

  // For Hermitian rho: L(rho) = G rho + (G rho)^+ + sum_j c_j (c_j rho)^+.
  const auto lindbladian = [&](const CMatrix& rho, CMatrix& out) {
    const CMatrix x = g * rho;
    out = x + x.adjoint();
    for (const auto& cj : c) {
      const CMatrix y = (cj * rho).adjoint();
      out += cj * y;
    }
  };

  TrajectoryRecord rec;
  detail::Recorder recorder(observables, rec);
  CMatrix rho = rho0.entries();
  const double dt = cfg.dt;
  CMatrix k1, k2, k3, k4;
  Index done = 0;
  for (Index target : cfg.record_steps()) {
    for (; done < target; ++done) {
      lindbladian(rho, k1);
      lindbladian(rho + (0.5 * dt) * k1, k2);
      lindbladian(rho + (0.5 * dt) * k2, k3);
      lindbladian(rho + dt * k3, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = (0.5 * (rho + rho.adjoint())).eval();
      const double drift = std::abs(rho.trace() - 1.0);
      if (!(drift <= kTraceDriftLimit)) {
        std::ostringstream os;
        os << "integrate_lindblad: trace drift " << drift << " exceeds " << kTraceDriftLimit;
        throw NumericalError(os.str());
      }
      // RK4 keeps the trace exactly, so an unstable dt shows up as
      // populations leaving [0, 1] instead.
      const RVector pops = rho.diagonal().real();
      if (pops.minCoeff() < -kPopulationGuard || pops.maxCoeff() > 1.0 + kPopulationGuard) {
        std::ostringstream os;
        os << "integrate_lindblad: populations left [0, 1] at t = " << static_cast<double>(done + 1) * dt
           << " (min " << pops.minCoeff() << ", max " << pops.maxCoeff() << "); reduce dt";
        throw NumericalError(os.str());
      }
      rec.max_norm_drift = std::max(rec.max_norm_drift, drift);
    }
    recorder.record(static_cast<double>(target) * dt, DensityMatrix::trusted(rho0.space(), rho));
  }
  rec.final_density = DensityMatrix::trusted(rho0.space(), rho);
  return rec;
}

// ------------------------------------------------------------ step check ---

double step_convergence_change(
    const std::function<std::vector<double>(const IntegratorConfig&)>& final_values,
    const IntegratorConfig& cfg) {
  const std::vector<double> coarse = final_values(cfg);
  const std::vector<double> fine = final_values(cfg.refined());
  if (coarse.size() != fine.size()) throw SeesawError("step_convergence_change: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    worst = std::max(worst, std::abs(fine[i] - coarse[i]) / std::max(std::abs(fine[i]), 1.0));
  }
  return worst;
}

}  // namespace seesaw
