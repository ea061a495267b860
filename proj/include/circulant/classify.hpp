#pragma once

#include "circulant/core.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>

namespace circulant {

/// Floating-point margins for the strict/non-strict inequalities that define
/// the membership classes. `tie` is the relative slack for treating |c(1)| as
/// equal to the maximum, `gap` the relative margin required before a strict
/// inequality counts as strict, and `positivity` the relative threshold for
/// calling an entry positive (multiplied by a context-dependent scale).
struct Tolerances {
  double tie = 1e-9;
  double gap = 1e-9;
  double positivity = 1e-12;

  void validate() const {
    if (!(std::isfinite(tie) && tie >= 0.0) || !(std::isfinite(gap) && gap >= 0.0) ||
        !(std::isfinite(positivity) && positivity >= 0.0)) {
      throw std::invalid_argument("Tolerances: fields must be finite and nonnegative");
    }
  }
};

enum class Verdict { yes, no, boundary };

enum class SignCondition {
  plus_nonneg,
  minus_nonneg,
  plus_positive,
  minus_positive,
  none,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "boundary";
  }
}

inline const char* to_string(SignCondition s) {
  switch (s) {
    case SignCondition::plus_nonneg: return "x >= 0";
    case SignCondition::minus_nonneg: return "-x >= 0";
    case SignCondition::plus_positive: return "x > 0";
    case SignCondition::minus_positive: return "-x > 0";
    default: return "mixed";
  }
}

/// Entrywise sign pattern of a real row. Strictness is judged against
/// tol.positivity scaled by the largest entry magnitude.
template <typename Derived>
SignCondition sign_condition(const Eigen::MatrixBase<Derived>& x, const Tolerances& tol = {}) {
  static_assert(!is_complex_scalar_v<typename Derived::Scalar>,
                "sign_condition applies to real rows; complex rows use phase_cone");
  require_valid_row(x);
  tol.validate();
  const RealVector row = x.derived();
  const double thr = tol.positivity * row.cwiseAbs().maxCoeff();
  if ((row.array() > thr).all()) return SignCondition::plus_positive;
  if ((row.array() < -thr).all()) return SignCondition::minus_positive;
  if ((row.array() >= -thr).all()) return SignCondition::plus_nonneg;
  if ((row.array() <= thr).all()) return SignCondition::minus_nonneg;
  return SignCondition::none;
}

enum class Adjacency { cyclic, linear };

struct PhaseConeReport {
  bool holds = false;
  std::optional<std::pair<Index, Index>> adjacency_witness;
  double worst_phase = 0.0;
  double phase_bound = 0.0;  // pi / (2n)
};

/// Checks whether a row sits inside the phase cone: some adjacent pair of
/// entries is nonzero and every nonzero entry has |arg| < pi/(2n). Zero
/// entries are assigned phase 0. Adjacency is cyclic by default (the pair
/// (n-1, 0) counts); `Adjacency::linear` restricts to consecutive indices.
template <typename Derived>
PhaseConeReport phase_cone(const Eigen::MatrixBase<Derived>& y, const Tolerances& tol = {},
                           Adjacency adjacency = Adjacency::cyclic) {
  require_valid_row(y);
  tol.validate();
  const Vector<typename Derived::Scalar> row = y.derived();
  const Index n = row.size();
  PhaseConeReport rep;
  rep.phase_bound = std::numbers::pi / (2.0 * static_cast<double>(n));
  const RealVector mags = row.cwiseAbs();
  const double thr = tol.positivity * mags.maxCoeff();
  auto nonzero = [&](Index j) { return mags[j] > thr; };

  for (Index j = 0; j < n; ++j) {
    if (nonzero(j)) {
      rep.worst_phase = std::max(rep.worst_phase, std::abs(std::arg(Complex(row[j]))));
    }
  }
  const Index pairs = (adjacency == Adjacency::cyclic) ? n : n - 1;
  for (Index j = 0; j < pairs; ++j) {
    const Index k = (j + 1) % n;
    if (nonzero(j) && nonzero(k)) {
      rep.adjacency_witness = std::make_pair(j, k);
      break;
    }
  }
  rep.holds = rep.adjacency_witness.has_value() && rep.worst_phase < rep.phase_bound;
  return rep;
}

namespace detail {

/// Positivity of the normalized power row n*B^m_row / ||B^m||, with early
/// exit. `base` holds the squared modulus ratios (max entry exactly 1), so the
/// row entries times n are sum_k base[k]^m cos(2 pi j k / n).
inline bool scaled_power_row_positive(const RealVector& base, long long m,
                                      const ComplexVector& w, double threshold) {
  const Index n = base.size();
  const RealVector powed = base.array().pow(static_cast<double>(m));
  for (Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Index k = 0; k < n; ++k) {
      acc += powed[k] * w[(j * k) % n].real();
    }
    if (!(acc > threshold)) {
      return false;
    }
  }
  return true;
}

inline ComplexVector scaled_complex_power_row(const RealVector& base, long long m,
                                              const ComplexVector& w) {
  const Index n = base.size();
  const RealVector powed = base.array().pow(static_cast<double>(m));
  ComplexVector row(n);
  for (Index j = 0; j < n; ++j) {
    Complex acc(0.0, 0.0);
    for (Index k = 0; k < n; ++k) {
      acc += powed[k] * std::conj(w[(j * k) % n]);
    }
    row[j] = acc;
  }
  return row;
}

}  // namespace detail

/// Least m <= m_max such that every entry of the normalized Gram power
/// B^m / ||B^m|| clears the positivity threshold (scale 1/n), or nullopt.
/// The scan is overflow-free and scale-invariant because it works with the
/// modulus ratios. Positivity at m is not assumed to persist; the scan simply
/// reports the first hit.
template <typename Derived>
std::optional<long long> minimal_positive_power(const Eigen::MatrixBase<Derived>& x,
                                                long long m_max = 512,
                                                const Tolerances& tol = {}) {
  static_assert(!is_complex_scalar_v<typename Derived::Scalar>,
                "minimal_positive_power applies to real rows");
  require_valid_row(x);
  tol.validate();
  if (m_max < 1) {
    throw std::invalid_argument("minimal_positive_power: m_max must be >= 1");
  }
  const SymbolValues sym = symbol_values(x);
  if (sym.max_abs == 0.0) {
    throw std::invalid_argument("minimal_positive_power: zero row");
  }
  RealVector base = squared_moduli(sym);
  base /= base.maxCoeff();
  const ComplexVector w = roots_of_unity(sym.size());
  for (long long m = 1; m <= m_max; ++m) {
    if (detail::scaled_power_row_positive(base, m, w, tol.positivity)) {
      return m;
    }
  }
  return std::nullopt;
}

/// Outcome of the complex power search: the first exponent whose Gram power
/// row enters the phase cone, if any.
struct ConeSearch {
  std::optional<long long> holds_at_m;
  std::optional<std::pair<Index, Index>> adjacency_witness;
};

template <typename Derived>
ConeSearch cone_search(const Eigen::MatrixBase<Derived>& x, long long m_max,
                       const Tolerances& tol = {}) {
  require_valid_row(x);
  tol.validate();
  if (m_max < 1) {
    throw std::invalid_argument("cone_search: m_max must be >= 1");
  }
  const SymbolValues sym = symbol_values(x);
  if (sym.max_abs == 0.0) {
    return {};
  }
  RealVector base = squared_moduli(sym);
  base /= base.maxCoeff();
  const ComplexVector w = roots_of_unity(sym.size());
  for (long long m = 1; m <= m_max; ++m) {
    const ComplexVector row = detail::scaled_complex_power_row(base, m, w);
    const PhaseConeReport rep = phase_cone(row, tol);
    if (rep.holds) {
      return {m, rep.adjacency_witness};
    }
  }
  return {};
}

/// Full membership report for one row: class verdicts, the sufficient
/// conditions, and optional witness searches.
struct ClassificationReport {
  Index n = 0;
  Verdict in_cn = Verdict::no;
  Verdict in_cn_prime = Verdict::no;
  SignCondition sign = SignCondition::none;
  bool gram_nonnegative = false;
  bool gram_positive = false;
  std::optional<long long> minimal_positive_power;
  long long searched_m_max = 0;  // 0 when no power search was requested
  std::optional<Index> violating_root;
  std::optional<ConeSearch> cone;  // filled for complex rows when searching
  double spectral_norm = 0.0;
  double row_sum_abs = 0.0;  // |c(1)|
  double runner_up = 0.0;    // max over k >= 1 of |c(w^k)|
  /// (|c(1)| - runner_up) / ||c||_inf; the one statistic all verdicts read.
  double margin = 0.0;
};

/// Decide membership in C_n ("spectral norm equals |row sum|") and C_n'
/// (additionally, the maximum is attained only at t = 1). Verdicts come from
/// the relative margin between |c(1)| and the runner-up modulus:
///   in C_n:   yes if margin >= -tie,  no if margin <= -gap,  else boundary
///   in C_n':  yes if margin >= gap,   no if margin <= tie,   else boundary
/// With tie == gap the boundary band is empty and verdicts are binary.
template <typename Derived>
ClassificationReport membership(const Eigen::MatrixBase<Derived>& x, const Tolerances& tol = {},
                                std::optional<long long> search_m_max = std::nullopt) {
  using Scalar = typename Derived::Scalar;
  require_valid_row(x);
  tol.validate();
  const Vector<Scalar> row = x.derived();
  const SymbolValues sym = symbol_values(row);
  const Index n = row.size();

  ClassificationReport rep;
  rep.n = n;
  rep.spectral_norm = sym.max_abs;
  rep.row_sum_abs = std::abs(sym.values[0]);
  if constexpr (!is_complex_scalar_v<Scalar>) {
    rep.sign = sign_condition(row, tol);
  }

  if (sym.max_abs == 0.0) {
    // Zero row: norm 0 equals |row sum| 0, but there is no strict gap and no
    // power of the zero matrix is positive.
    rep.in_cn = Verdict::yes;
    rep.in_cn_prime = Verdict::no;
    rep.gram_nonnegative = true;
    rep.gram_positive = false;
    if (search_m_max) rep.searched_m_max = *search_m_max;
    return rep;
  }

  double runner = -1.0;
  Index runner_idx = 0;
  for (Index k = 1; k < n; ++k) {
    const double a = std::abs(sym.values[k]);
    if (a > runner) {
      runner = a;
      runner_idx = k;
    }
  }
  if (n == 1) {
    // A 1x1 circulant attains its maximum only at t = 1, trivially.
    rep.runner_up = 0.0;
    rep.margin = std::numeric_limits<double>::infinity();
  } else {
    rep.runner_up = runner;
    rep.margin = (rep.row_sum_abs - runner) / sym.max_abs;
  }

  rep.in_cn = rep.margin >= -tol.tie ? Verdict::yes
                                     : (rep.margin <= -tol.gap ? Verdict::no : Verdict::boundary);
  rep.in_cn_prime = rep.margin >= tol.gap
                        ? Verdict::yes
                        : (rep.margin <= tol.tie ? Verdict::no : Verdict::boundary);
  if (rep.in_cn_prime != Verdict::yes && n >= 2) {
    rep.violating_root = runner_idx;
  }

  const Vector<Scalar> gram = gram_row(row);
  const double gram_scale = Eigen::numext::real(gram[0]);  // ||x||^2, the largest entry
  const double thr = tol.positivity * gram_scale;
  if constexpr (is_complex_scalar_v<Scalar>) {
    bool nonneg = true, positive = true;
    for (Index k = 0; k < n; ++k) {
      const bool real_enough = std::abs(gram[k].imag()) <= thr;
      nonneg = nonneg && real_enough && gram[k].real() >= -thr;
      positive = positive && real_enough && gram[k].real() > thr;
    }
    rep.gram_nonnegative = nonneg;
    rep.gram_positive = positive;
  } else {
    rep.gram_nonnegative = (gram.array() >= -thr).all();
    rep.gram_positive = (gram.array() > thr).all();
  }

  if (search_m_max) {
    rep.searched_m_max = *search_m_max;
    if constexpr (is_complex_scalar_v<Scalar>) {
      rep.cone = cone_search(row, *search_m_max, tol);
    } else {
      rep.minimal_positive_power = minimal_positive_power(row, *search_m_max, tol);
    }
  }
  return rep;
}

/// Smallest exponent at which the spectral gap forces every entry of the
/// normalized power within `accuracy` of 1/n: m = ceil(log(n/accuracy) /
/// (2 log(top/runner_up))). Returns LLONG_MAX when there is no usable gap.
inline long long rank_one_power_bound(Index n, double top, double runner_up,
                                      double accuracy = 1e-6) {
  constexpr long long kNoBound = std::numeric_limits<long long>::max();
  if (!(top > 0.0)) return kNoBound;
  if (runner_up <= 0.0) return 1;
  if (runner_up >= top) return kNoBound;
  const double decay = 2.0 * std::log(top / runner_up);
  const double m = std::log(static_cast<double>(n) / accuracy) / decay;
  if (!(m < 9e18)) return kNoBound;
  return std::max(1LL, static_cast<long long>(std::ceil(m)));
}

/// Smallest exponent at which the gap guarantees the whole normalized power
/// row is nonzero and inside the phase cone: the perturbation of each entry
/// around 1/n must drop below sin(pi/(2n))/2.
inline long long phase_cone_power_bound(Index n, double top, double runner_up) {
  if (n <= 1) return 1;
  const double target =
      0.5 * std::sin(std::numbers::pi / (2.0 * static_cast<double>(n))) /
      static_cast<double>(n);
  return rank_one_power_bound(n, top, runner_up, target);
}

enum class EquivalenceStatus {
  consistent,
  violation,
  boundary_skipped,  // membership margin too close to the tie surface to judge
  inconclusive,      // gap too small for the power search bound m_max to decide
};

namespace detail {

inline std::string fmt_margin(double margin) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", margin);
  return buf;
}

}  // namespace detail

struct EquivalenceOutcome {
  EquivalenceStatus status = EquivalenceStatus::consistent;
  std::optional<long long> witness_m;
  std::string detail;

  bool consistent() const { return status == EquivalenceStatus::consistent; }
};

/// Cross-check the equivalence "x in C_n' iff some power of the Gram
/// circulant is entrywise positive" on one real row. Boundary rows are
/// rejected with a distinct status rather than counted as failures, and rows
/// whose spectral gap is too small for any m <= m_max to be decisive come
/// back inconclusive. Persistence of positivity beyond the first hit is
/// spot-checked where it is actually guaranteed (multiples of the witness, or
/// exponents past the rank-one bound).
template <typename Derived>
EquivalenceOutcome equivalence_check(const Eigen::MatrixBase<Derived>& x, long long m_max = 512,
                                     const Tolerances& tol = {}) {
  static_assert(!is_complex_scalar_v<typename Derived::Scalar>,
                "equivalence_check applies to real rows; see complex_equivalence");
  require_valid_row(x);
  tol.validate();
  if (m_max < 1) {
    throw std::invalid_argument("equivalence_check: m_max must be >= 1");
  }
  const Vector<typename Derived::Scalar> row = x.derived();
  const ClassificationReport rep = membership(row, tol);
  if (rep.spectral_norm == 0.0) {
    throw std::invalid_argument("equivalence_check: zero row");
  }

  EquivalenceOutcome out;
  if (rep.in_cn == Verdict::boundary || rep.in_cn_prime == Verdict::boundary) {
    out.status = EquivalenceStatus::boundary_skipped;
    out.detail = "membership margin inside the tolerance band";
    return out;
  }

  const auto m_star = minimal_positive_power(row, m_max, tol);
  out.witness_m = m_star;
  const long long decisive = rank_one_power_bound(rep.n, rep.row_sum_abs, rep.runner_up);

  const SymbolValues sym = symbol_values(row);
  RealVector base = squared_moduli(sym);
  base /= base.maxCoeff();
  const ComplexVector w = roots_of_unity(rep.n);
  auto positive_at = [&](long long m) {
    return detail::scaled_power_row_positive(base, m, w, tol.positivity);
  };

  if (rep.in_cn_prime == Verdict::yes) {
    if (!m_star) {
      if (decisive <= m_max) {
        out.status = EquivalenceStatus::violation;
        out.detail = "row is in C_n' but no positive power was found at a decisive bound";
      } else {
        out.status = EquivalenceStatus::inconclusive;
        out.detail = "spectral gap too small: positivity only guaranteed from m = " +
                     (decisive == std::numeric_limits<long long>::max()
                          ? std::string("inf")
                          : std::to_string(decisive)) +
                     " > m_max";
      }
      return out;
    }
    if (!positive_at(*m_star)) {
      out.status = EquivalenceStatus::violation;
      out.detail = "witness power failed re-verification";
      return out;
    }
    for (const long long target : {*m_star + 1, m_max}) {
      if (target <= *m_star) continue;
      const bool guaranteed = (target % *m_star == 0) || (target >= decisive);
      if (!positive_at(target)) {
        if (guaranteed) {
          out.status = EquivalenceStatus::violation;
          out.detail = "positivity did not persist at m = " + std::to_string(target);
          return out;
        }
        out.detail += "persistence at m = " + std::to_string(target) +
                      " is outside the guaranteed range at this gap; ";
      }
    }
    if (out.detail.empty()) out.detail = "in C_n' with positive powers";
    return out;
  }

  // Outside C_n': the sufficiency direction says no power may be entrywise
  // positive. A "no" verdict inside the tie zone (|margin| within the gap
  // band) is an equality call, not a certified exterior, so a witness there
  // cannot falsify anything.
  if (m_star) {
    if (rep.margin > -tol.gap) {
      out.status = EquivalenceStatus::boundary_skipped;
      out.detail = "positive power in the tie zone (margin " + detail::fmt_margin(rep.margin) + ")";
    } else {
      out.status = EquivalenceStatus::violation;
      out.detail = "positive power m = " + std::to_string(*m_star) +
                   " found for a row outside C_n'";
    }
  } else {
    out.detail = "outside C_n' and no positive power";
  }
  return out;
}

namespace detail {

/// Condition on a whole row: every entry nonzero and inside the phase cone.
template <typename Derived>
bool cone_all_entries(const Eigen::MatrixBase<Derived>& y, const Tolerances& tol) {
  const Vector<typename Derived::Scalar> row = y.derived();
  const Index n = row.size();
  const double bound = std::numbers::pi / (2.0 * static_cast<double>(n));
  const RealVector mags = row.cwiseAbs();
  const double thr = tol.positivity * mags.maxCoeff();
  for (Index j = 0; j < n; ++j) {
    if (!(mags[j] > thr)) return false;
    if (!(std::abs(std::arg(Complex(row[j]))) < bound)) return false;
  }
  return true;
}

}  // namespace detail

/// Complex analogue of equivalence_check: membership in C_n' must coincide
/// with some Gram power row entering the phase cone with an adjacent nonzero
/// pair. When a witness exists and the gap makes m_max decisive, the stronger
/// all-entries form is also checked at m_max.
template <typename Derived>
EquivalenceOutcome complex_equivalence(const Eigen::MatrixBase<Derived>& x, long long m_max = 512,
                                       const Tolerances& tol = {}) {
  static_assert(is_complex_scalar_v<typename Derived::Scalar>,
                "complex_equivalence applies to complex rows");
  require_valid_row(x);
  tol.validate();
  if (m_max < 1) {
    throw std::invalid_argument("complex_equivalence: m_max must be >= 1");
  }
  const Vector<typename Derived::Scalar> row = x.derived();
  const ClassificationReport rep = membership(row, tol);
  if (rep.spectral_norm == 0.0) {
    throw std::invalid_argument("complex_equivalence: zero row");
  }

  EquivalenceOutcome out;
  if (rep.in_cn == Verdict::boundary || rep.in_cn_prime == Verdict::boundary) {
    out.status = EquivalenceStatus::boundary_skipped;
    out.detail = "membership margin inside the tolerance band";
    return out;
  }

  const ConeSearch found = cone_search(row, m_max, tol);
  out.witness_m = found.holds_at_m;
  const long long decisive = phase_cone_power_bound(rep.n, rep.row_sum_abs, rep.runner_up);

  if (rep.in_cn_prime == Verdict::yes) {
    if (!found.holds_at_m) {
      if (decisive <= m_max) {
        out.status = EquivalenceStatus::violation;
        out.detail = "row is in C_n' but no Gram power row entered the phase cone";
      } else {
        out.status = EquivalenceStatus::inconclusive;
        out.detail = "spectral gap too small: cone entry only guaranteed from m = " +
                     (decisive == std::numeric_limits<long long>::max()
                          ? std::string("inf")
                          : std::to_string(decisive)) +
                     " > m_max";
      }
      return out;
    }
    if (decisive <= m_max) {
      const SymbolValues sym = symbol_values(row);
      RealVector base = squared_moduli(sym);
      base /= base.maxCoeff();
      const ComplexVector w = roots_of_unity(rep.n);
      const ComplexVector tail = detail::scaled_complex_power_row(base, m_max, w);
      if (!detail::cone_all_entries(tail, tol)) {
        out.status = EquivalenceStatus::violation;
        out.detail = "all-entries cone condition failed at the decisive exponent";
        return out;
      }
      out.detail = "in C_n' with cone entry at m = " + std::to_string(*found.holds_at_m) +
                   " and full cone at m = " + std::to_string(m_max);
    } else {
      out.detail = "in C_n' with cone entry at m = " + std::to_string(*found.holds_at_m) +
                   "; eventual-form spot-check skipped (bound exceeds m_max)";
    }
    return out;
  }

  if (found.holds_at_m) {
    if (rep.margin > -tol.gap) {
      out.status = EquivalenceStatus::boundary_skipped;
      out.detail = "cone entry in the tie zone (margin " + detail::fmt_margin(rep.margin) + ")";
    } else {
      out.status = EquivalenceStatus::violation;
      out.detail = "Gram power row entered the phase cone at m = " +
                   std::to_string(*found.holds_at_m) + " for a row outside C_n'";
    }
  } else {
    out.detail = "outside C_n' and no cone entry";
  }
  return out;
}

}  // namespace circulant
