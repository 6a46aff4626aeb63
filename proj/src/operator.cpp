#include "seesaw/operator.hpp"

#include <cmath>

namespace seesaw {

SparseOperator::SparseOperator(HilbertSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw SeesawError("SparseOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                      std::to_string(matrix_.cols()) + " but space " + space_.describe() +
                      " has dimension " + std::to_string(space_.dim()));
  }
  matrix_.makeCompressed();
}

SparseOperator::SparseOperator(HilbertSpace space, const std::vector<Triplet>& triplets)
    : space_(std::move(space)), matrix_(space_.dim(), space_.dim()) {
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.col() < 0 || t.row() >= space_.dim() || t.col() >= space_.dim()) {
      throw SeesawError("SparseOperator: triplet index out of range");
    }
  }
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::zero(HilbertSpace space) {
  const Index d = space.dim();
  return SparseOperator(std::move(space), SparseMatrix(d, d));
}

SparseOperator SparseOperator::identity(HilbertSpace space) {
  const Index d = space.dim();
  return SparseOperator(std::move(space), local_identity(d));
}

SparseOperator SparseOperator::adjoint() const {
  return SparseOperator(space_, SparseMatrix(matrix_.adjoint()));
}

double SparseOperator::hermiticity_defect() const {
  const SparseMatrix diff = matrix_ - SparseMatrix(matrix_.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

Ket SparseOperator::apply(const Ket& v) const {
  if (v.size() != dim()) throw SeesawError("SparseOperator::apply: dimension mismatch");
  return matrix_ * v;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& rhs) {
  require_same_space(space_, rhs.space_, "operator+");
  matrix_ += rhs.matrix_;
  matrix_.prune(Complex(0.0));
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& rhs) {
  require_same_space(space_, rhs.space_, "operator-");
  matrix_ -= rhs.matrix_;
  matrix_.prune(Complex(0.0));
  return *this;
}

SparseOperator& SparseOperator::operator*=(Complex s) {
  matrix_ *= s;
  matrix_.prune(Complex(0.0));
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  require_same_space(a.space_, b.space_, "operator*");
  SparseMatrix prod = (a.matrix_ * b.matrix_).pruned();
  return SparseOperator(a.space_, std::move(prod));
}

SparseMatrix local_identity(Index dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return m;
}

SparseMatrix annihilation(Index dim) {
  std::vector<Triplet> t;
  for (Index n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix creation(Index dim) { return SparseMatrix(annihilation(dim).adjoint()); }

SparseMatrix number_operator(Index dim) {
  std::vector<Triplet> t;
  for (Index n = 1; n < dim; ++n) t.emplace_back(n, n, static_cast<double>(n));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index i = 0; i < a.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator ia(a, i); ia; ++ia) {
      for (Index j = 0; j < b.outerSize(); ++j) {
        for (SparseMatrix::InnerIterator ib(b, j); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseOperator tensor_product_op(const HilbertSpace& space,
                                 const std::vector<LocalOperator>& factor_ops) {
  std::vector<const SparseMatrix*> slot(space.factor_count(), nullptr);
  for (const auto& op : factor_ops) {
    const std::size_t pos = space.position(op.label);
    if (slot[pos]) throw SeesawError("tensor_product_op: label '" + op.label + "' given twice");
    const Index d = space.factor(pos).dim;
    if (op.matrix.rows() != d || op.matrix.cols() != d) {
      throw SeesawError("tensor_product_op: operator on '" + op.label + "' is " +
                        std::to_string(op.matrix.rows()) + "x" + std::to_string(op.matrix.cols()) +
                        ", factor dimension is " + std::to_string(d));
    }
    slot[pos] = &op.matrix;
  }
  SparseMatrix result = local_identity(1);
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    const SparseMatrix piece = slot[i] ? *slot[i] : local_identity(space.factor(i).dim);
    result = kron(result, piece);
  }
  result.prune(Complex(0.0));
  return SparseOperator(space, std::move(result));
}

SparseOperator embed(const HilbertSpace& space, const std::string& label,
                     const SparseMatrix& local) {
  return tensor_product_op(space, {LocalOperator{label, local}});
}

}  // namespace seesaw
