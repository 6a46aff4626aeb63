#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <stdexcept>
#include <string>

namespace seesaw {

using Index = Eigen::Index;
using Complex = std::complex<double>;

template <typename Scalar>
using KetT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using OperatorMatrixT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Ket = KetT<double>;
using CMatrix = OperatorMatrixT<double>;
using RVector = Eigen::VectorXd;

// Row-major so sparse * dense-vector products stream over rows.
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Complex>;

inline constexpr Complex kI{0.0, 1.0};

// Domain errors: invalid arguments, mismatched spaces, violated invariants.
class SeesawError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by integrators when a numerical guard trips (norm or trace drift,
// unresolved jump time).
class NumericalError : public SeesawError {
 public:
  using SeesawError::SeesawError;
};

}  // namespace seesaw
