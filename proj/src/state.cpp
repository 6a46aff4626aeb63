#include "seesaw/state.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace seesaw {

StateVector::StateVector(HilbertSpace space, Ket amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) {
    throw SeesawError("StateVector: amplitude count does not match space " + space_.describe());
  }
  normalize();
}

StateVector StateVector::unnormalized(HilbertSpace space, Ket amplitudes) {
  if (amplitudes.size() != space.dim()) {
    throw SeesawError("StateVector: amplitude count does not match space " + space.describe());
  }
  StateVector s;
  s.space_ = std::move(space);
  s.amplitudes_ = std::move(amplitudes);
  s.normalized_ = std::abs(s.amplitudes_.norm() - 1.0) <= kNormTolerance;
  return s;
}

StateVector StateVector::basis(HilbertSpace space, Index flat_index) {
  if (flat_index < 0 || flat_index >= space.dim()) {
    throw SeesawError("StateVector::basis: index out of range");
  }
  Ket v = Ket::Zero(space.dim());
  v(flat_index) = 1.0;
  return StateVector(std::move(space), std::move(v));
}

StateVector StateVector::product(HilbertSpace space, const std::vector<Ket>& factor_states) {
  if (factor_states.size() != space.factor_count()) {
    throw SeesawError("StateVector::product: need one state per factor");
  }
  Ket v = Ket::Ones(1);
  for (std::size_t i = 0; i < factor_states.size(); ++i) {
    const Ket& f = factor_states[i];
    if (f.size() != space.factor(i).dim) {
      throw SeesawError("StateVector::product: state for '" + space.factor(i).label +
                        "' has wrong dimension");
    }
    Ket next(v.size() * f.size());
    for (Index a = 0; a < v.size(); ++a) next.segment(a * f.size(), f.size()) = v(a) * f;
    v = std::move(next);
  }
  return StateVector(std::move(space), std::move(v));
}

StateVector& StateVector::normalize() {
  const double n = amplitudes_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw SeesawError("StateVector: cannot normalize zero or non-finite vector");
  amplitudes_ /= n;
  normalized_ = true;
  return *this;
}

DensityDefects density_defects(const CMatrix& rho) {
  DensityDefects d{};
  d.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace = std::abs(rho.trace() - 1.0);
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw SeesawError("DensityMatrix: matrix shape does not match space " + space_.describe());
  }
  const DensityDefects d = density_defects(entries_);
  if (d.hermiticity > 1e-10 || d.trace > 1e-9 || d.min_eigenvalue < -1e-9) {
    std::ostringstream os;
    os << "DensityMatrix: invalid (hermiticity defect " << d.hermiticity << ", trace defect "
       << d.trace << ", min eigenvalue " << d.min_eigenvalue << ")";
    throw SeesawError(os.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  Ket v = psi.amplitudes() / psi.norm();
  return trusted(psi.space(), v * v.adjoint());
}

DensityMatrix DensityMatrix::trusted(HilbertSpace space, CMatrix entries) {
  if (entries.rows() != space.dim() || entries.cols() != space.dim()) {
    throw SeesawError("DensityMatrix: matrix shape does not match space " + space.describe());
  }
  DensityMatrix rho;
  rho.space_ = std::move(space);
  rho.entries_ = std::move(entries);
  return rho;
}

Ket coherent_amplitudes(Complex alpha, Index cutoff, double tolerance) {
  if (cutoff < 1) throw SeesawError("coherent_state: cutoff must be >= 1");
  Ket c(cutoff);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (Index n = 1; n < cutoff; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  const double deficit = 1.0 - c.squaredNorm();
  if (deficit > tolerance) {
    std::ostringstream os;
    os << "coherent_state: cutoff " << cutoff << " discards norm " << deficit << " for |alpha| = "
       << std::abs(alpha) << " (tolerance " << tolerance << ")";
    throw SeesawError(os.str());
  }
  return c / c.norm();
}

StateVector coherent_state(Complex alpha, Index cutoff, double tolerance, const std::string& label) {
  return StateVector(HilbertSpace::single(label, cutoff),
                     coherent_amplitudes(alpha, cutoff, tolerance));
}

Ket fock_amplitudes(Index n, Index cutoff) {
  if (n < 0 || n >= cutoff) throw SeesawError("fock state index outside cutoff");
  Ket v = Ket::Zero(cutoff);
  v(n) = 1.0;
  return v;
}

}  // namespace seesaw
