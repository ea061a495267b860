#pragma once

#include "circulant/classify.hpp"
#include "circulant/sphere.hpp"

#include <algorithm>
#include <vector>

namespace circulant {

/// Configuration of one Monte Carlo table run: which dimensions, how many
/// sphere samples per dimension, which Gram power exponents, and the seed.
struct TableSpec {
  std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8, 9, 10, 20};
  long long samples = 1'000'000;
  std::vector<long long> powers = {1, 2, 4, 8, 16, 32};
  std::uint64_t seed = 42;
  Tolerances tolerances{};

  void validate() const {
    tolerances.validate();
    if (samples < 1) {
      throw std::invalid_argument("TableSpec: samples must be >= 1");
    }
    if (dims.empty()) {
      throw std::invalid_argument("TableSpec: dims must be nonempty");
    }
    for (const int n : dims) {
      if (n < 2) {
        throw std::invalid_argument("TableSpec: dims must each be >= 2");
      }
    }
    if (powers.empty()) {
      throw std::invalid_argument("TableSpec: powers must be nonempty");
    }
    long long prev = 0;
    for (const long long m : powers) {
      if (m <= prev) {
        throw std::invalid_argument("TableSpec: powers must be strictly increasing and >= 1");
      }
      prev = m;
    }
  }
};

/// Estimated fraction of the unit sphere in R^n satisfying each condition:
/// the strict sign condition, entrywise positivity of each requested Gram
/// power, and membership in C_n'. Boundary-band samples are excluded from the
/// C_n' numerator and denominator and reported separately.
struct TableRow {
  int n = 0;
  long long samples = 0;
  double sign_positive = 0.0;
  std::vector<double> power_portions;
  double in_cn_prime = 0.0;
  double sign_positive_stderr = 0.0;
  std::vector<double> power_stderrs;
  double in_cn_prime_stderr = 0.0;
  long long boundary_count = 0;
};

namespace detail {

// Canonical shard schedule: fixed blocks of 65536 samples, processed in
// index order. Workers may split shards among themselves; merging counts is
// associative addition, so the result never depends on the worker count.
inline constexpr long long kShardSamples = 65536;

inline long long shard_count(long long samples) {
  return (samples + kShardSamples - 1) / kShardSamples;
}

struct ConditionCounts {
  long long samples = 0;
  long long sign_positive = 0;
  std::vector<long long> power_positive;
  long long in_cn_prime = 0;
  long long boundary = 0;

  explicit ConditionCounts(std::size_t n_powers) : power_positive(n_powers, 0) {}

  ConditionCounts& operator+=(const ConditionCounts& other) {
    samples += other.samples;
    sign_positive += other.sign_positive;
    for (std::size_t i = 0; i < power_positive.size(); ++i) {
      power_positive[i] += other.power_positive[i];
    }
    in_cn_prime += other.in_cn_prime;
    boundary += other.boundary;
    return *this;
  }
};

/// Classify every sample of one shard and add the outcomes into `into`.
/// Each condition is evaluated directly per sample; no implication between
/// the conditions is assumed.
inline void accumulate_shard(int n, const TableSpec& spec, long long shard,
                             ConditionCounts& into) {
  const long long begin = shard * kShardSamples;
  const long long end = std::min(begin + kShardSamples, spec.samples);
  if (begin >= end) return;

  GaussianStream g(shard_seed(dimension_seed(spec.seed, n), static_cast<std::uint64_t>(shard)));
  const ComplexVector w = roots_of_unity(n);
  const Tolerances& tol = spec.tolerances;
  RealVector modsq(n);

  for (long long s = begin; s < end; ++s) {
    const RealVector x = sample_sphere(n, g);
    ++into.samples;

    const SignCondition sign = sign_condition(x, tol);
    if (sign == SignCondition::plus_positive || sign == SignCondition::minus_positive) {
      ++into.sign_positive;
    }

    // symbol moduli via one Horner pass per root
    for (Index k = 0; k < n; ++k) {
      Complex acc(0.0, 0.0);
      for (Index j = n - 1; j >= 0; --j) {
        acc = acc * w[k] + Complex(x[j]);
      }
      modsq[k] = std::norm(acc);
    }
    const double max_sq = modsq.maxCoeff();
    double runner_sq = 0.0;
    for (Index k = 1; k < n; ++k) {
      runner_sq = std::max(runner_sq, modsq[k]);
    }
    const double margin =
        (std::sqrt(modsq[0]) - std::sqrt(runner_sq)) / std::sqrt(max_sq);
    if (margin >= tol.gap) {
      ++into.in_cn_prime;
    } else if (margin > tol.tie) {
      ++into.boundary;
    }

    const RealVector base = modsq / max_sq;
    for (std::size_t i = 0; i < spec.powers.size(); ++i) {
      if (detail::scaled_power_row_positive(base, spec.powers[i], w, tol.positivity)) {
        ++into.power_positive[i];
      }
    }
  }
}

}  // namespace detail

/// One table row: spec.samples sphere draws in dimension n, aggregated into
/// per-condition fractions with binomial standard errors.
inline TableRow estimate_row(int n, const TableSpec& spec) {
  spec.validate();
  if (std::find(spec.dims.begin(), spec.dims.end(), n) == spec.dims.end()) {
    throw std::invalid_argument("estimate_row: n is not one of spec.dims");
  }
  detail::ConditionCounts counts(spec.powers.size());
  const long long shards = detail::shard_count(spec.samples);
  for (long long shard = 0; shard < shards; ++shard) {
    detail::accumulate_shard(n, spec, shard, counts);
  }

  auto portion = [](long long hits, long long total) {
    return total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  };
  auto binom_stderr = [](double p, long long total) {
    return total > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(total)) : 0.0;
  };

  TableRow row;
  row.n = n;
  row.samples = counts.samples;
  row.boundary_count = counts.boundary;
  row.sign_positive = portion(counts.sign_positive, counts.samples);
  row.sign_positive_stderr = binom_stderr(row.sign_positive, counts.samples);
  row.power_portions.resize(spec.powers.size());
  row.power_stderrs.resize(spec.powers.size());
  for (std::size_t i = 0; i < spec.powers.size(); ++i) {
    row.power_portions[i] = portion(counts.power_positive[i], counts.samples);
    row.power_stderrs[i] = binom_stderr(row.power_portions[i], counts.samples);
  }
  const long long prime_total = counts.samples - counts.boundary;
  row.in_cn_prime = portion(counts.in_cn_prime, prime_total);
  row.in_cn_prime_stderr = binom_stderr(row.in_cn_prime, prime_total);
  return row;
}

/// The whole table, one row per requested dimension. Every dimension owns an
/// independent derived seed, so the result is a pure function of the TableSpec.
inline std::vector<TableRow> build_table(const TableSpec& spec) {
  spec.validate();
  std::vector<TableRow> rows;
  rows.reserve(spec.dims.size());
  for (const int n : spec.dims) {
    rows.push_back(estimate_row(n, spec));
  }
  return rows;
}

}  // namespace circulant
