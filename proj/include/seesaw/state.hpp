#pragma once

#include "seesaw/hilbert_space.hpp"
#include "seesaw/types.hpp"

#include <vector>

namespace seesaw {

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kCoherentTruncationTolerance = 1e-8;

// Pure state over a HilbertSpace. Quantum-trajectory evolution carries
// unnormalized vectors between jumps; `normalized()` reports whether the
// amplitudes were last set through a normalizing path.
class StateVector {
 public:
  StateVector() = default;
  // Normalizes `amplitudes`; throws if the vector is zero.
  StateVector(HilbertSpace space, Ket amplitudes);

  static StateVector unnormalized(HilbertSpace space, Ket amplitudes);
  static StateVector basis(HilbertSpace space, Index flat_index);
  // Tensor product of single-factor states, in the order of `space`.
  static StateVector product(HilbertSpace space, const std::vector<Ket>& factor_states);

  const HilbertSpace& space() const { return space_; }
  const Ket& amplitudes() const { return amplitudes_; }
  Index dim() const { return space_.dim(); }
  bool normalized() const { return normalized_; }
  double norm() const { return amplitudes_.norm(); }

  StateVector& normalize();

 private:
  HilbertSpace space_;
  Ket amplitudes_;
  bool normalized_ = false;
};

// Hermitian, unit-trace, positive semidefinite matrix over a HilbertSpace.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates the invariants and throws SeesawError on violation.
  DensityMatrix(HilbertSpace space, CMatrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  // Skips the eigenvalue check; used for integrator output that is validated
  // through its own trace/Hermiticity guards.
  static DensityMatrix trusted(HilbertSpace space, CMatrix entries);

  const HilbertSpace& space() const { return space_; }
  const CMatrix& entries() const { return entries_; }
  Index dim() const { return space_.dim(); }

 private:
  HilbertSpace space_;
  CMatrix entries_;
};

struct DensityDefects {
  double hermiticity;     // max |rho - rho^dagger|
  double trace;           // |Tr rho - 1|
  double min_eigenvalue;  // smallest eigenvalue of the Hermitian part
};
DensityDefects density_defects(const CMatrix& rho);

// Truncated coherent state c_n = alpha^n e^{-|alpha|^2/2} / sqrt(n!), n < cutoff.
// Throws SeesawError when the discarded norm exceeds `tolerance`.
Ket coherent_amplitudes(Complex alpha, Index cutoff,
                        double tolerance = kCoherentTruncationTolerance);
StateVector coherent_state(Complex alpha, Index cutoff,
                           double tolerance = kCoherentTruncationTolerance,
                           const std::string& label = "field");

Ket fock_amplitudes(Index n, Index cutoff);

}  // namespace seesaw
