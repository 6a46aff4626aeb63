#pragma once

#include "seesaw/hilbert_space.hpp"
#include "seesaw/operator.hpp"
#include "seesaw/state.hpp"
#include "seesaw/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <string>
#include <vector>

namespace seesaw {

namespace detail {

// Splits a space into a "kept" group and its complement. Any flat index is
// kept_offset[k] + rest_offset[r] for the kept multi-index k and the rest r,
// both enumerated row-major in the space's own factor order.
struct Bipartition {
  std::vector<Index> kept_offset;
  std::vector<Index> rest_offset;

  Bipartition(const HilbertSpace& space, const std::vector<std::string>& kept_labels);
};

}  // namespace detail

// Ascending eigenvalues of a Hermitian matrix. The input is symmetrized
// before solving; an entrywise defect above `tolerance` is an error.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> hermitian_spectrum(
    const Eigen::MatrixBase<Derived>& m, double tolerance = 1e-8) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols()) throw SeesawError("hermitian_spectrum: matrix is not square");
  const Matrix a = m;
  if (a.size() > 0 && (a - a.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
    throw SeesawError("hermitian_spectrum: matrix is not Hermitian within tolerance");
  }
  const Matrix sym = (a + a.adjoint()) * typename Derived::RealScalar(0.5);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_spectrum: eigensolver failed");
  return solver.eigenvalues();
}

// Partial transpose of the indices of factor `label`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_transpose(
    const Eigen::MatrixBase<Derived>& rho, const HilbertSpace& space, const std::string& label) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw SeesawError("partial_transpose: matrix shape does not match space");
  }
  const detail::Bipartition bp(space, {label});
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < bp.kept_offset.size(); ++a) {
    for (std::size_t b = 0; b < bp.kept_offset.size(); ++b) {
      for (Index r : bp.rest_offset) {
        for (Index s : bp.rest_offset) {
          out(bp.kept_offset[a] + r, bp.kept_offset[b] + s) =
              rho(bp.kept_offset[b] + r, bp.kept_offset[a] + s);
        }
      }
    }
  }
  return out;
}

// Reduced matrix on the kept factors: sum over the complement.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace_matrix(
    const Eigen::MatrixBase<Derived>& rho, const HilbertSpace& space,
    const std::vector<std::string>& kept_labels) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw SeesawError("partial_trace: matrix shape does not match space");
  }
  const detail::Bipartition bp(space, kept_labels);
  const Index dk = static_cast<Index>(bp.kept_offset.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i) {
    for (Index j = 0; j < dk; ++j) {
      typename Derived::Scalar acc(0);
      for (Index t : bp.rest_offset) acc += rho(bp.kept_offset[i] + t, bp.kept_offset[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

// Amplitudes arranged as (kept multi-index) x (rest multi-index).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> bipartite_matrix(
    const Eigen::MatrixBase<Derived>& psi, const HilbertSpace& space,
    const std::vector<std::string>& kept_labels) {
  if (psi.size() != space.dim()) throw SeesawError("bipartite_matrix: dimension mismatch");
  const detail::Bipartition bp(space, kept_labels);
  const Index rows = static_cast<Index>(bp.kept_offset.size());
  const Index cols = static_cast<Index>(bp.rest_offset.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = psi(bp.kept_offset[i] + bp.rest_offset[j]);
  }
  return m;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& kept_labels);
DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& kept_labels);

CMatrix partial_transpose(const DensityMatrix& rho, const std::string& transposed_label);

// Squared Schmidt coefficients of the split (label | rest), descending.
RVector schmidt_coefficients(const StateVector& psi, const std::string& left_label);

Complex expectation_value(const SparseOperator& op, const StateVector& psi);
Complex expectation_value(const SparseOperator& op, const DensityMatrix& rho);
// Tr(rho O) for a raw matrix sharing the operator's space.
Complex trace_product(const SparseOperator& op, const CMatrix& rho);

}  // namespace seesaw
