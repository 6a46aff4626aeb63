#pragma once

#include "seesaw/hilbert_space.hpp"
#include "seesaw/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace seesaw {

// Complex sparse matrix tied to the space it acts on. Duplicate triplets are
// summed on construction, so the stored pattern never repeats (row, col).
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(HilbertSpace space, SparseMatrix matrix);
  SparseOperator(HilbertSpace space, const std::vector<Triplet>& triplets);

  static SparseOperator zero(HilbertSpace space);
  static SparseOperator identity(HilbertSpace space);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  Index dim() const { return space_.dim(); }
  Index nonzeros() const { return matrix_.nonZeros(); }

  SparseOperator adjoint() const;
  CMatrix dense() const { return CMatrix(matrix_); }

  // Largest entrywise |A - A^dagger|.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  Ket apply(const Ket& v) const;

  SparseOperator& operator+=(const SparseOperator& rhs);
  SparseOperator& operator-=(const SparseOperator& rhs);
  SparseOperator& operator*=(Complex s);

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(Complex s, SparseOperator a) { return a *= s; }
  friend SparseOperator operator*(SparseOperator a, Complex s) { return a *= s; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

// Single-factor building blocks (truncated ladder of `dim` levels).
SparseMatrix local_identity(Index dim);
SparseMatrix annihilation(Index dim);
SparseMatrix creation(Index dim);
SparseMatrix number_operator(Index dim);

struct LocalOperator {
  std::string label;
  SparseMatrix matrix;
};

// Kronecker product over `space` in factor order; factors not named in
// `factor_ops` receive the identity. Throws on unknown or repeated labels and
// on dimension mismatches.
SparseOperator tensor_product_op(const HilbertSpace& space,
                                 const std::vector<LocalOperator>& factor_ops);

// Shorthand for a single embedded factor operator.
SparseOperator embed(const HilbertSpace& space, const std::string& label,
                     const SparseMatrix& local);

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace seesaw
