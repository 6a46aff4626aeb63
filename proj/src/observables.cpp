#include "seesaw/observables.hpp"

#include <cmath>
#include <numbers>

namespace seesaw {

// ---------------------------------------------------------- negativity ---

double negativity_from_schmidt(const RVector& lambdas) {
  double sum_sqrt = 0.0;
  for (Index i = 0; i < lambdas.size(); ++i) sum_sqrt += std::sqrt(std::max(lambdas(i), 0.0));
  return std::max(0.0, 0.5 * (sum_sqrt * sum_sqrt - 1.0));
}

double negativity_from_spectrum(const RVector& eigenvalues) {
  double sum = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) < 0.0) sum -= eigenvalues(i);
  }
  return sum;
}

double negativity(const StateVector& psi, const std::string& label) {
  StateVector normalized = psi;
  normalized.normalize();
  return negativity_from_schmidt(schmidt_coefficients(normalized, label));
}

double negativity(const DensityMatrix& rho, const std::string& label) {
  return negativity_from_spectrum(hermitian_spectrum(partial_transpose(rho, label)));
}

// -------------------------------------------------------------- field ---

namespace {

FieldStatistics field_from_reduced(const CMatrix& rho) {
  const Index d = rho.rows();
  Complex mean_a(0.0);
  double photons = 0.0;
  // <a> = Tr(rho a) = sum_n sqrt(n) rho(n, n-1)
  for (Index n = 1; n < d; ++n) {
    mean_a += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
    photons += static_cast<double>(n) * rho(n, n).real();
  }
  return {mean_a, photons};
}

}  // namespace

FieldStatistics field_statistics(const StateVector& psi, const std::string& field_label) {
  return field_from_reduced(partial_trace(psi, {field_label}).entries());
}

FieldStatistics field_statistics(const DensityMatrix& rho, const std::string& field_label) {
  return field_from_reduced(partial_trace(rho, {field_label}).entries());
}

// --------------------------------------------------------------- sites ---

SiteStatistics site_statistics_from_populations(const RVector& p) {
  const Index N = p.size() - 1;
  SiteStatistics s{0.0, 0.0};
  for (Index k = 0; 2 * k < N; ++k) {
    s.imbalance += static_cast<double>(N - 2 * k) * (p(k) - p(N - k));
  }
  for (Index k = 0; k <= N; ++k) s.pair_correlation += static_cast<double>((N - k) * k) * p(k);
  return s;
}

namespace {

void require_sector(const HilbertSpace& space, const std::string& label, int N) {
  if (space.factor_dim(label) != N + 1) {
    throw SeesawError("site_statistics: factor '" + label + "' has dimension " +
                      std::to_string(space.factor_dim(label)) + ", expected N + 1 = " +
                      std::to_string(N + 1));
  }
}

}  // namespace

SiteStatistics site_statistics(const StateVector& psi, const std::string& atomic_label, int N) {
  require_sector(psi.space(), atomic_label, N);
  return site_statistics_from_populations(
      partial_trace(psi, {atomic_label}).entries().diagonal().real());
}

SiteStatistics site_statistics(const DensityMatrix& rho, const std::string& atomic_label, int N) {
  require_sector(rho.space(), atomic_label, N);
  return site_statistics_from_populations(
      partial_trace(rho, {atomic_label}).entries().diagonal().real());
}

// ------------------------------------------------------------- spatial ---

MotionKind motion_kind_for(const std::string& label) {
  if (label == kSeesawX || label == kSeesawPhi) return MotionKind::oscillator;
  if (label == kMotionLabel) return MotionKind::plane_wave;
  throw SeesawError("spatial_statistics: unsupported factor kind '" + label + "'");
}

namespace {

SpatialStatistics oscillator_moments(const CMatrix& rho) {
  const Index d = rho.rows();
  const CMatrix x = CMatrix(annihilation(d) + creation(d)) / std::sqrt(2.0);
  const double mean = (rho * x).trace().real();
  const double second = (rho * x * x).trace().real();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x);
  const CMatrix sin_x = es.eigenvectors() *
                        es.eigenvalues().array().sin().matrix().cast<Complex>().asDiagonal() *
                        es.eigenvectors().adjoint();
  return {mean, second - mean * mean, (rho * sin_x).trace().real()};
}

SpatialStatistics plane_wave_moments(const CMatrix& rho) {
  constexpr double pi = std::numbers::pi;
  const Index nm = rho.rows();
  // c_d = sum_{n - m = d} rho(n, m); density p(xi) = sum_d c_d e^{i d xi} / 2pi.
  std::vector<Complex> c(static_cast<std::size_t>(2 * nm - 1), Complex(0.0));
  for (Index n = 0; n < nm; ++n) {
    for (Index m = 0; m < nm; ++m) c[static_cast<std::size_t>(n - m + nm - 1)] += rho(n, m);
  }
  const Index grid = 8 * nm;
  std::vector<double> xi(static_cast<std::size_t>(grid)), weight(static_cast<std::size_t>(grid));
  Complex first_moment(0.0);
  double mean_sin = 0.0;
  for (Index j = 0; j < grid; ++j) {
    const double x = -pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid);
    double p = 0.0;
    for (Index d = -(nm - 1); d <= nm - 1; ++d) {
      p += (c[static_cast<std::size_t>(d + nm - 1)] * std::exp(Complex(0.0, d * x))).real();
    }
    p /= static_cast<double>(grid);  // probability carried by grid cell j
    xi[j] = x;
    weight[j] = p;
    first_moment += p * std::exp(Complex(0.0, x));
    mean_sin += p * std::sin(x);
  }
  double mean = std::arg(first_moment);
  if (mean >= pi) mean -= 2.0 * pi;
  double var = 0.0;
  for (Index j = 0; j < grid; ++j) {
    const double delta = std::remainder(xi[j] - mean, 2.0 * pi);
    var += weight[j] * delta * delta;
  }
  return {mean, var, mean_sin};
}

}  // namespace

SpatialStatistics spatial_statistics(const DensityMatrix& rho, const std::string& motion_label,
                                     MotionKind kind) {
  const CMatrix reduced = partial_trace(rho, {motion_label}).entries();
  if (kind == MotionKind::oscillator) return oscillator_moments(reduced);
  if (reduced.rows() % 2 == 0) {
    throw SeesawError("spatial_statistics: plane-wave factor must have odd dimension");
  }
  return plane_wave_moments(reduced);
}

SpatialStatistics spatial_statistics(const DensityMatrix& rho, const std::string& motion_label) {
  return spatial_statistics(rho, motion_label, motion_kind_for(motion_label));
}

SpatialStatistics spatial_statistics(const StateVector& psi, const std::string& motion_label) {
  const MotionKind kind = motion_kind_for(motion_label);
  return spatial_statistics(partial_trace(psi, {motion_label}), motion_label, kind);
}

// ----------------------------------------------------------- recording ---

ObservableSet& ObservableSet::add(Observable obs) {
  if (contains(obs.name)) throw SeesawError("ObservableSet: duplicate name '" + obs.name + "'");
  if (!obs.on_state || !obs.on_density) {
    throw SeesawError("ObservableSet: '" + obs.name + "' needs both state and density forms");
  }
  items_.push_back(std::move(obs));
  return *this;
}

ObservableSet& ObservableSet::add_operator(const std::string& name, const SparseOperator& op,
                                           bool is_complex, bool diagnostic) {
  if (!is_complex && !op.is_hermitian(1e-12)) {
    throw SeesawError("ObservableSet: operator for '" + name + "' is not Hermitian");
  }
  Observable obs;
  obs.name = name;
  obs.is_complex = is_complex;
  obs.linear = true;
  obs.diagnostic = diagnostic;
  obs.on_state = [op](const StateVector& psi) { return expectation_value(op, psi); };
  obs.on_density = [op](const DensityMatrix& rho) { return expectation_value(op, rho); };
  return add(std::move(obs));
}

bool ObservableSet::contains(const std::string& name) const {
  for (const auto& o : items_) {
    if (o.name == name) return true;
  }
  return false;
}

const Observable& ObservableSet::at(const std::string& name) const {
  for (const auto& o : items_) {
    if (o.name == name) return o;
  }
  throw SeesawError("ObservableSet: no observable named '" + name + "'");
}

bool ObservableSet::all_linear() const {
  for (const auto& o : items_) {
    if (!o.linear) return false;
  }
  return true;
}

Observable negativity_observable(const std::string& name, const std::string& label) {
  Observable obs;
  obs.name = name;
  obs.on_state = [label](const StateVector& psi) { return Complex(negativity(psi, label)); };
  obs.on_density = [label](const DensityMatrix& rho) { return Complex(negativity(rho, label)); };
  return obs;
}

namespace {

Observable projector_observable(const HilbertSpace& space, const std::string& label,
                                const std::vector<Index>& levels, const std::string& name) {
  const Index d = space.factor_dim(label);
  std::vector<Triplet> t;
  for (Index n : levels) t.emplace_back(n, n, 1.0);
  SparseMatrix proj(d, d);
  proj.setFromTriplets(t.begin(), t.end());
  const SparseOperator op = embed(space, label, proj);
  Observable obs;
  obs.name = name;
  obs.linear = true;
  obs.diagnostic = true;
  obs.on_state = [op](const StateVector& psi) { return expectation_value(op, psi); };
  obs.on_density = [op](const DensityMatrix& rho) { return expectation_value(op, rho); };
  return obs;
}

template <typename Fn>
Observable derived(const std::string& name, Fn fn) {
  Observable obs;
  obs.name = name;
  obs.on_state = [fn](const StateVector& psi) { return Complex(fn(psi)); };
  obs.on_density = [fn](const DensityMatrix& rho) { return Complex(fn(rho)); };
  return obs;
}

void add_field_observables(ObservableSet& set, const HilbertSpace& space, Index cutoff) {
  set.add_operator("photon_number", embed(space, kFieldLabel, number_operator(cutoff)));
  set.add_operator("mean_a", embed(space, kFieldLabel, annihilation(cutoff)), true);
  set.add(derived("abs_mean_a_sq", [](const auto& s) {
    return std::norm(field_statistics(s, kFieldLabel).mean_a);
  }));
  set.add(top_level_population(space, kFieldLabel));
}

}  // namespace

Observable top_level_population(const HilbertSpace& space, const std::string& label) {
  const Index d = space.factor_dim(label);
  return projector_observable(space, label, {d - 1}, "top_population:" + label);
}

Observable edge_mode_population(const HilbertSpace& space, const std::string& label) {
  const Index d = space.factor_dim(label);
  return projector_observable(space, label, {0, d - 1}, "edge_population:" + label);
}

ObservableSet seesaw_observables(const SeesawParams& p) {
  const HilbertSpace space = seesaw_space(p);
  const SparseOperator h = build_seesaw_hamiltonian(p);
  const auto quadrature = [&](const std::string& label) {
    const Index d = space.factor_dim(label);
    return embed(space, label, SparseMatrix((annihilation(d) + creation(d)) / std::sqrt(2.0)));
  };
  const SparseOperator x = quadrature(kSeesawX), phi = quadrature(kSeesawPhi);
  ObservableSet set;
  set.add(negativity_observable("negativity", kSeesawX));
  set.add_operator("mean_x", x);
  const SparseOperator x2 = x * x, phi2 = phi * phi;
  set.add(derived("var_x", [x, x2](const auto& s) {
    const double m = expectation_value(x, s).real();
    return expectation_value(x2, s).real() - m * m;
  }));
  set.add(derived("var_phi", [phi, phi2](const auto& s) {
    const double m = expectation_value(phi, s).real();
    return expectation_value(phi2, s).real() - m * m;
  }));
  set.add_operator("photon_x", embed(space, kSeesawX, number_operator(p.cutoff_x)));
  set.add_operator("photon_phi", embed(space, kSeesawPhi, number_operator(p.cutoff_phi)));
  set.add_operator("energy", h);
  set.add(top_level_population(space, kSeesawX));
  set.add(top_level_population(space, kSeesawPhi));
  return set;
}

ObservableSet twosite_observables(const TwoSiteParams& p) {
  const HilbertSpace space = twosite_space(p);
  const int N = p.N_atoms;
  ObservableSet set;
  add_field_observables(set, space, p.photon_cutoff);
  set.add(negativity_observable("negativity", kAtomsLabel));
  set.add_operator("imbalance", embed(space, kAtomsLabel, twosite::imbalance(N)));
  set.add_operator("pair_correlation", embed(space, kAtomsLabel, twosite::pair_occupation(N)));
  const SparseMatrix d = twosite::imbalance(N);
  set.add_operator("imbalance_sq", embed(space, kAtomsLabel, SparseMatrix(d * d)));
  set.add_operator("energy", build_twosite_hamiltonian(p).hamiltonian);
  return set;
}

ObservableSet fullspace_observables(const FullSpaceParams& p) {
  const HilbertSpace space = fullspace_space(p);
  ObservableSet set;
  add_field_observables(set, space, p.photon_cutoff);
  set.add(negativity_observable("negativity", kMotionLabel));
  set.add(derived("mean_x", [](const auto& s) { return spatial_statistics(s, kMotionLabel).mean_x; }));
  set.add(derived("var_x", [](const auto& s) { return spatial_statistics(s, kMotionLabel).var_x; }));
  set.add_operator("mean_sin_kx", embed(space, kMotionLabel, plane_wave::sin_kx(p.n_momentum)));
  set.add_operator("energy", build_fullspace_hamiltonian(p).hamiltonian);
  set.add(edge_mode_population(space, kMotionLabel));
  return set;
}

}  // namespace seesaw
