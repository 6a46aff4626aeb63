#include "seesaw/linalg.hpp"

#include <cmath>

namespace seesaw {

namespace detail {

namespace {

// Flat offsets of every multi-index over the selected factors.
std::vector<Index> offsets(const HilbertSpace& space, const std::vector<bool>& selected) {
  std::vector<Index> out{0};
  for (std::size_t f = 0; f < space.factor_count(); ++f) {
    if (!selected[f]) continue;
    std::vector<Index> next;
    next.reserve(out.size() * static_cast<std::size_t>(space.factor(f).dim));
    for (Index base : out) {
      for (Index n = 0; n < space.factor(f).dim; ++n) next.push_back(base + n * space.stride(f));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Bipartition::Bipartition(const HilbertSpace& space, const std::vector<std::string>& kept_labels) {
  if (kept_labels.empty()) throw SeesawError("bipartition: no factor selected");
  std::vector<bool> kept(space.factor_count(), false);
  for (const auto& label : kept_labels) kept[space.position(label)] = true;
  std::vector<bool> rest(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) rest[i] = !kept[i];
  kept_offset = offsets(space, kept);
  rest_offset = offsets(space, rest);
}

}  // namespace detail

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& kept_labels) {
  HilbertSpace reduced = rho.space().subspace(kept_labels);
  return DensityMatrix::trusted(std::move(reduced),
                                partial_trace_matrix(rho.entries(), rho.space(), kept_labels));
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<std::string>& kept_labels) {
  HilbertSpace reduced = psi.space().subspace(kept_labels);
  const CMatrix m = bipartite_matrix(psi.amplitudes(), psi.space(), kept_labels);
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(std::move(reduced), std::move(rho));
}

CMatrix partial_transpose(const DensityMatrix& rho, const std::string& transposed_label) {
  return partial_transpose(rho.entries(), rho.space(), transposed_label);
}

RVector schmidt_coefficients(const StateVector& psi, const std::string& left_label) {
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw SeesawError("schmidt_coefficients: state is not normalized");
  }
  const CMatrix m = bipartite_matrix(psi.amplitudes(), psi.space(), {left_label});
  Eigen::BDCSVD<CMatrix> svd(m);
  RVector s = svd.singularValues();  // descending
  return s.array().square().matrix();
}

Complex expectation_value(const SparseOperator& op, const StateVector& psi) {
  require_same_space(op.space(), psi.space(), "expectation_value");
  const Ket& v = psi.amplitudes();
  return v.dot(op.matrix() * v) / v.squaredNorm();
}

Complex trace_product(const SparseOperator& op, const CMatrix& rho) {
  if (rho.rows() != op.dim() || rho.cols() != op.dim()) {
    throw SeesawError("trace_product: dimension mismatch");
  }
  Complex acc(0.0);
  const SparseMatrix& m = op.matrix();
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) acc += it.value() * rho(it.col(), it.row());
  }
  return acc;
}

Complex expectation_value(const SparseOperator& op, const DensityMatrix& rho) {
  require_same_space(op.space(), rho.space(), "expectation_value");
  return trace_product(op, rho.entries());
}

}  // namespace seesaw
