#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace circulant {

using Complex = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;
using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

template <typename Scalar>
inline constexpr bool is_complex_scalar_v = Eigen::NumTraits<Scalar>::IsComplex != 0;

/// Thrown when the dense power iteration runs out of iterations. Callers may
/// retry with a different start seed.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Derived>
void require_valid_row(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() < 1) {
    throw std::invalid_argument("circulant: first row must have at least one entry");
  }
  if (!x.derived().allFinite()) {
    throw std::invalid_argument("circulant: first row entries must be finite");
  }
}

/// The n-th roots of unity, values[k] = exp(2*pi*i*k/n). Each entry is taken
/// from its own angle rather than by repeated multiplication, so there is no
/// accumulated drift.
inline ComplexVector roots_of_unity(Index n) {
  if (n < 1) {
    throw std::invalid_argument("roots_of_unity: n must be positive");
  }
  ComplexVector w(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index k = 0; k < n; ++k) {
    const double angle = step * static_cast<double>(k);
    w[k] = Complex(std::cos(angle), std::sin(angle));
  }
  return w;
}

/// Values of the symbol polynomial on the n-th roots of unity. These are the
/// eigenvalues of the circulant; max_abs is its spectral norm.
struct SymbolValues {
  ComplexVector values;
  double max_abs = 0.0;

  Index size() const { return values.size(); }
};

/// Evaluate the symbol c(t) = x0 + x1*t + ... + x_{n-1}*t^{n-1} on every n-th
/// root of unity, one Horner pass per root (O(n^2) total).
template <typename Derived>
SymbolValues symbol_values(const Eigen::MatrixBase<Derived>& x) {
  require_valid_row(x);
  const Vector<typename Derived::Scalar> row = x.derived();
  const Index n = row.size();
  const ComplexVector w = roots_of_unity(n);
  SymbolValues sym;
  sym.values.resize(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (Index j = n - 1; j >= 0; --j) {
      acc = acc * w[k] + Complex(row[j]);
    }
    sym.values[k] = acc;
  }
  sym.max_abs = sym.values.cwiseAbs().maxCoeff();
  return sym;
}

/// Spectral norm of the circulant with first row x: the largest modulus the
/// symbol attains on the roots of unity.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& x) {
  return symbol_values(x).max_abs;
}

/// Materialize the full circulant. Row r is the first row cyclically shifted
/// right by r places, so entry (r, c) is x[(c - r) mod n].
template <typename Derived>
DenseMatrix<typename Derived::Scalar> circulant_matrix(const Eigen::MatrixBase<Derived>& x) {
  require_valid_row(x);
  const Vector<typename Derived::Scalar> row = x.derived();
  const Index n = row.size();
  DenseMatrix<typename Derived::Scalar> m(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      m(r, c) = row[((c - r) % n + n) % n];
    }
  }
  return m;
}

struct PowerIterationOptions {
  int max_iterations = 10000;
  double rel_tol = 1e-14;
  std::uint64_t seed = 0x0ddc0ffeebadf00dULL;
};

/// Independent spectral-norm check: build the circulant densely, form the
/// Gram matrix, and run plain power iteration on it. Never touches the
/// symbol route, so the two paths cross-validate each other. Capped at
/// n = 256.
template <typename Derived>
double dense_norm_oracle(const Eigen::MatrixBase<Derived>& x,
                         const PowerIterationOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  require_valid_row(x);
  const Index n = x.size();
  if (n > 256) {
    throw std::invalid_argument("dense_norm_oracle: dimension capped at 256");
  }
  const DenseMatrix<Scalar> c = circulant_matrix(x);
  const DenseMatrix<Scalar> gram = c.adjoint() * c;
  if (gram.cwiseAbs().maxCoeff() == 0.0) {
    return 0.0;
  }

  std::mt19937_64 rng(opts.seed);
  auto uniform = [&rng]() {
    return 2.0 * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53) - 1.0;
  };
  Vector<Scalar> v(n);
  auto redraw = [&]() {
    for (Index i = 0; i < n; ++i) {
      if constexpr (is_complex_scalar_v<Scalar>) {
        v[i] = Scalar(uniform(), uniform());
      } else {
        v[i] = uniform();
      }
    }
    v.normalize();
  };
  redraw();

  double lambda = 0.0;
  double lambda_prev = std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Vector<Scalar> w = gram * v;
    lambda = Eigen::numext::real(v.dot(w));
    const double wnorm = w.norm();
    if (wnorm == 0.0) {
      // start vector landed in the kernel; draw again
      redraw();
      lambda_prev = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (!std::isnan(lambda_prev) &&
        std::abs(lambda - lambda_prev) <= opts.rel_tol * std::max(std::abs(lambda), 1e-300)) {
      return std::sqrt(std::max(lambda, 0.0));
    }
    lambda_prev = lambda;
    v = w / wnorm;
  }
  throw NonConvergenceError("dense_norm_oracle: power iteration did not settle");
}

/// First row of the Gram circulant C* C, computed directly as the cyclic
/// cross-correlation of the row with itself. Real input gives a real,
/// palindromic row; complex input is complex in general.
template <typename Derived>
Vector<typename Derived::Scalar> gram_row(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  require_valid_row(x);
  const Vector<Scalar> row = x.derived();
  const Index n = row.size();
  Vector<Scalar> g(n);
  for (Index k = 0; k < n; ++k) {
    Scalar sum{};
    for (Index j = 0; j < n; ++j) {
      sum += Eigen::numext::conj(row[j]) * row[(j + k) % n];
    }
    g[k] = sum;
  }
  return g;
}

inline RealVector squared_moduli(const SymbolValues& sym) {
  return sym.values.cwiseAbs2();
}

namespace detail {

/// Inverse DFT of a real coefficient vector: r[j] = (1/n) sum_k s[k] w^{-jk}.
/// Root powers come from index folding, not repeated multiplication.
inline ComplexVector inverse_dft_real(const RealVector& s, const ComplexVector& w) {
  const Index n = s.size();
  ComplexVector r(n);
  for (Index j = 0; j < n; ++j) {
    Complex acc(0.0, 0.0);
    for (Index k = 0; k < n; ++k) {
      acc += s[k] * std::conj(w[(j * k) % n]);
    }
    r[j] = acc / static_cast<double>(n);
  }
  return r;
}

/// Real part of the inverse DFT of a real coefficient vector, scaled by n:
/// out[j] = sum_k s[k] cos(2*pi*j*k/n). This is the exact row of a power of a
/// real Gram circulant up to the 1/n factor.
inline RealVector scaled_cosine_sums(const RealVector& s, const ComplexVector& w) {
  const Index n = s.size();
  RealVector out(n);
  for (Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Index k = 0; k < n; ++k) {
      acc += s[k] * w[(j * k) % n].real();
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace detail

/// A power of the Gram circulant, kept in the symbol domain: symbol[k] holds
/// the k-th Gram eigenvalue raised to the exponent, and row is the matching
/// first row recovered by inverse DFT.
template <typename Scalar>
struct GramPower {
  long long exponent = 1;
  Vector<Scalar> row;
  RealVector symbol;
  double symbol_max = 0.0;
  /// True when the symbol was rescaled by its maximum to stay inside floating
  /// range. Rescaling by a positive constant preserves every sign and phase.
  bool normalized = false;
  /// Largest |Im| dropped when clamping a real-scalar row (always recorded so
  /// tests can inspect the pre-clamp residue).
  double max_imag_residue = 0.0;
};

template <typename Derived>
GramPower<typename Derived::Scalar> gram_power(const Eigen::MatrixBase<Derived>& x,
                                               long long m) {
  using Scalar = typename Derived::Scalar;
  if (m < 1) {
    throw std::invalid_argument("gram_power: exponent must be >= 1");
  }
  const SymbolValues sym = symbol_values(x);
  const Index n = sym.size();
  RealVector base = squared_moduli(sym);
  const double base_max = base.maxCoeff();

  GramPower<Scalar> out;
  out.exponent = m;
  if (base_max > 0.0) {
    // s^m must stay finite; switching to s / s_max keeps every ratio <= 1.
    const double extreme = static_cast<double>(m) * std::log(base_max);
    if (std::abs(extreme) > 690.0) {
      base /= base_max;
      out.normalized = true;
    }
  }
  const RealVector powed = base.array().pow(static_cast<double>(m));
  const ComplexVector w = roots_of_unity(n);
  const ComplexVector row = detail::inverse_dft_real(powed, w);
  out.symbol = powed;
  out.symbol_max = powed.maxCoeff();
  if constexpr (is_complex_scalar_v<Scalar>) {
    out.row = row;
  } else {
    out.max_imag_residue = row.imag().cwiseAbs().maxCoeff();
    out.row = row.real();
  }
  return out;
}

/// First row of B^m / ||B^m||, computed from the ratios
/// (|c(w^k)| / ||c||_inf)^(2m). All ratios are <= 1, so the result is finite
/// for arbitrarily large m.
template <typename Derived>
Vector<typename Derived::Scalar> normalized_power(const Eigen::MatrixBase<Derived>& x,
                                                  long long m) {
  using Scalar = typename Derived::Scalar;
  if (m < 1) {
    throw std::invalid_argument("normalized_power: exponent must be >= 1");
  }
  const SymbolValues sym = symbol_values(x);
  if (sym.max_abs == 0.0) {
    throw std::invalid_argument("normalized_power: zero row");
  }
  const Index n = sym.size();
  RealVector base = squared_moduli(sym);
  base /= base.maxCoeff();
  const RealVector powed = base.array().pow(static_cast<double>(m));
  const ComplexVector w = roots_of_unity(n);
  if constexpr (is_complex_scalar_v<Scalar>) {
    return detail::inverse_dft_real(powed, w);
  } else {
    return detail::scaled_cosine_sums(powed, w) / static_cast<double>(n);
  }
}

}  // namespace circulant
