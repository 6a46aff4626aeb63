#pragma once

#include "seesaw/linalg.hpp"
#include "seesaw/models.hpp"

#include <functional>
#include <string>
#include <vector>

namespace seesaw {

// Negativity N = (||rho^{T_A}||_1 - 1) / 2, so a Bell pair gives 1/2.
// Pure states use the Schmidt route ((sum sqrt(lambda))^2 - 1) / 2, mixed
// states the sum of |negative eigenvalues| of the partial transpose.
double negativity(const StateVector& psi, const std::string& label);
double negativity(const DensityMatrix& rho, const std::string& label);
double negativity_from_schmidt(const RVector& lambdas);
double negativity_from_spectrum(const RVector& partial_transpose_eigenvalues);

struct FieldStatistics {
  Complex mean_a;
  double photon_number;
};
FieldStatistics field_statistics(const StateVector& psi, const std::string& field_label);
FieldStatistics field_statistics(const DensityMatrix& rho, const std::string& field_label);

struct SiteStatistics {
  double imbalance;         // <n_l - n_r>
  double pair_correlation;  // <n_l n_r>
};
// The atomic factor must be the fixed-N two-site sector (dimension N + 1).
SiteStatistics site_statistics(const StateVector& psi, const std::string& atomic_label, int N);
SiteStatistics site_statistics(const DensityMatrix& rho, const std::string& atomic_label, int N);
// From the occupation probabilities p_k of |N - k, k>. Balanced inputs give
// exactly zero imbalance: mirrored terms are differenced before summing.
SiteStatistics site_statistics_from_populations(const RVector& populations);

enum class MotionKind {
  oscillator,  // Fock ladder, x = (a + a^+) / sqrt(2)
  plane_wave,  // e^{i n k x} ladder over one wavelength, periodic
};

struct SpatialStatistics {
  double mean_x;  // plane waves: circular mean arg<e^{ikx}> in [-pi, pi)
  double var_x;
  double mean_sin_kx;
};
// Kind inferred from the factor label ("x"/"phi" oscillators, "motion" plane
// waves); other labels are rejected.
SpatialStatistics spatial_statistics(const StateVector& psi, const std::string& motion_label);
SpatialStatistics spatial_statistics(const DensityMatrix& rho, const std::string& motion_label);
SpatialStatistics spatial_statistics(const DensityMatrix& rho, const std::string& motion_label,
                                     MotionKind kind);
MotionKind motion_kind_for(const std::string& label);

// ----------------------------------------------------------- recording ---

struct Observable {
  std::string name;
  bool is_complex = false;
  // Expectation value of a fixed operator. Ensemble values of linear
  // observables are trajectory averages; nonlinear ones need the averaged rho.
  bool linear = false;
  // Recorded for diagnostics (truncation monitors), not written as output.
  bool diagnostic = false;
  std::function<Complex(const StateVector&)> on_state;
  std::function<Complex(const DensityMatrix&)> on_density;
};

class ObservableSet {
 public:
  ObservableSet() = default;

  // Throws if the name is taken or a non-complex operator is not Hermitian.
  ObservableSet& add(Observable obs);
  ObservableSet& add_operator(const std::string& name, const SparseOperator& op,
                              bool is_complex = false, bool diagnostic = false);

  const std::vector<Observable>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool contains(const std::string& name) const;
  const Observable& at(const std::string& name) const;
  bool all_linear() const;

 private:
  std::vector<Observable> items_;
};

Observable negativity_observable(const std::string& name, const std::string& label);

// Population of the highest retained level of `label` (name "top_population:<label>").
Observable top_level_population(const HilbertSpace& space, const std::string& label);
// Population of the two outermost plane-wave modes (name "edge_population:<label>").
Observable edge_mode_population(const HilbertSpace& space, const std::string& label);

// Every observable the built-in scenarios can request for each model.
ObservableSet seesaw_observables(const SeesawParams& p);
ObservableSet twosite_observables(const TwoSiteParams& p);
ObservableSet fullspace_observables(const FullSpaceParams& p);

}  // namespace seesaw
