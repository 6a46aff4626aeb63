#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines: spectra come from determinant root
// finding, Kronecker products and partial traces from explicit index loops,
// and closed forms are written out directly.

#include "seesaw/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using seesaw::CMatrix;
using seesaw::Complex;
using seesaw::Index;
using seesaw::Ket;

// det(m - lambda I) of a Hermitian matrix, real up to roundoff.
inline double shifted_determinant(const CMatrix& m, double lambda) {
  CMatrix a = m - lambda * CMatrix::Identity(m.rows(), m.cols());
  return a.partialPivLu().determinant().real();
}

// Eigenvalues of a Hermitian matrix with distinct eigenvalues: scan the
// characteristic polynomial for sign changes, then bisect each bracket.
inline std::vector<double> charpoly_roots(const CMatrix& m, int grid = 20000) {
  const double bound = m.norm() + 1.0;
  std::vector<double> roots;
  double x0 = -bound, f0 = shifted_determinant(m, x0);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = -bound + 2.0 * bound * i / grid;
    const double f1 = shifted_determinant(m, x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * bound; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = shifted_determinant(m, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

inline CMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline Ket random_ket(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Ket v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

// Random unitary from the QR factors of a complex Gaussian matrix.
inline CMatrix random_unitary(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

// Dense Kronecker product by explicit loops.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Ket kron_ket(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

// Truncated ladder operators, written out element by element.
inline CMatrix lower(Index d) {
  CMatrix a = CMatrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMatrix number(Index d) {
  CMatrix a = CMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) a(n, n) = static_cast<double>(n);
  return a;
}

// Two-factor partial traces by index loops; rho on (A, B) with dims (da, db).
inline CMatrix trace_out_b(const CMatrix& rho, Index da, Index db) {
  CMatrix out = CMatrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
  return out;
}

inline CMatrix trace_out_a(const CMatrix& rho, Index da, Index db) {
  CMatrix out = CMatrix::Zero(db, db);
  for (Index k = 0; k < db; ++k)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(k, l) += rho(i * db + k, i * db + l);
  return out;
}

// Closed-form coherent amplitude alpha^n e^{-|alpha|^2/2} / sqrt(n!).
inline Complex coherent_amplitude(Complex alpha, int n) {
  return std::pow(alpha, n) * std::exp(-std::norm(alpha) / 2.0) / std::sqrt(std::tgamma(n + 1.0));
}

// Probability mass a coherent state places on levels >= cutoff.
inline double coherent_tail_mass(double abs_alpha, int cutoff) {
  double tail = 0.0;
  for (int n = cutoff; n < cutoff + 200; ++n) {
    tail += std::exp(-abs_alpha * abs_alpha + 2.0 * n * std::log(abs_alpha) - std::lgamma(n + 1.0));
  }
  return tail;
}

// Squared Schmidt coefficients of (|L>|alpha> + |R>|-alpha>)/sqrt(2): the
// reduced field state lives on span{|alpha>, |-alpha>} with Gram overlap
// <alpha|-alpha> = e^{-2|alpha|^2}, giving (1 +- e^{-2|alpha|^2}) / 2.
inline std::pair<double, double> cat_schmidt(double alpha) {
  const double s = std::exp(-2.0 * alpha * alpha);
  return {(1.0 + s) / 2.0, (1.0 - s) / 2.0};
}

inline double cat_negativity(double alpha) { return std::sqrt(1.0 - std::exp(-4.0 * alpha * alpha)) / 2.0; }

inline double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace oracle
