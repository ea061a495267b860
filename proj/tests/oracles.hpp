#pragma once

// Test-only oracles: dense matrix routes that deliberately avoid the symbol
// domain, plus deterministic random row generators.

#include "circulant/core.hpp"
#include "circulant/sphere.hpp"

#include <random>

namespace testing_oracles {

using circulant::Complex;
using circulant::ComplexVector;
using circulant::DenseMatrix;
using circulant::Index;
using circulant::RealVector;
using circulant::Vector;

template <typename Scalar>
DenseMatrix<Scalar> dense_gram(const Vector<Scalar>& row) {
  const DenseMatrix<Scalar> c = circulant::circulant_matrix(row);
  return c.adjoint() * c;
}

/// B^m by literal repeated multiplication, no squaring tricks.
template <typename Scalar>
DenseMatrix<Scalar> dense_gram_power(const Vector<Scalar>& row, long long m) {
  const DenseMatrix<Scalar> gram = dense_gram(row);
  DenseMatrix<Scalar> acc = gram;
  for (long long i = 1; i < m; ++i) {
    acc = acc * gram;
  }
  return acc;
}

template <typename Scalar>
Vector<Scalar> first_row(const DenseMatrix<Scalar>& m) {
  return m.row(0).transpose();
}

/// Least m <= m_max with every entry of the dense B^m exceeding zero, or -1.
/// Works on the unnormalized matrix, so keep m_max modest.
inline long long dense_minimal_positive_power(const RealVector& row, long long m_max) {
  const circulant::RealMatrix gram = dense_gram(row);
  circulant::RealMatrix acc = circulant::RealMatrix::Identity(row.size(), row.size());
  for (long long m = 1; m <= m_max; ++m) {
    acc = acc * gram;
    if ((acc.array() > 0.0).all()) {
      return m;
    }
  }
  return -1;
}

inline RealVector random_real_row(Index n, circulant::GaussianStream& g, double scale = 1.0) {
  RealVector x(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = scale * g.next();
  }
  return x;
}

inline ComplexVector random_complex_row(Index n, circulant::GaussianStream& g,
                                        double scale = 1.0) {
  ComplexVector x(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = Complex(scale * g.next(), scale * g.next());
  }
  return x;
}

/// Real row with prescribed symbol values: x_k = (1/n) sum_l d_l w^{-lk}.
/// The values must be symmetric (d[l] == d[n-l]) for the row to be real.
inline RealVector row_from_symbol(const RealVector& d) {
  const Index n = d.size();
  const ComplexVector w = circulant::roots_of_unity(n);
  RealVector x(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (Index l = 0; l < n; ++l) {
      acc += d[l] * std::conj(w[(l * k) % n]);
    }
    acc /= static_cast<double>(n);
    if (std::abs(acc.imag()) > 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("row_from_symbol: values are not symmetric");
    }
    x[k] = acc.real();
  }
  return x;
}

/// The 5-entry row whose symbol values are exactly (1, 0, 1, 1, 0): the
/// modulus maximum is attained at three roots, so the row is in C_5 but not
/// C_5'. Built from the analytic closed form.
inline RealVector tied_maximum_row() {
  const double alpha = (1.0 + 2.0 * std::cos(4.0 * std::numbers::pi / 5.0)) / 5.0;
  const double beta = (1.0 + 2.0 * std::cos(2.0 * std::numbers::pi / 5.0)) / 5.0;
  RealVector x(5);
  x << 3.0 / 5.0, alpha, beta, beta, alpha;
  return x;
}

}  // namespace testing_oracles
