#include "circulant/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace circulant {

namespace {

template <typename Scalar>
std::string format_scalar(const Scalar& v) {
  std::ostringstream s;
  s << std::setprecision(10);
  if constexpr (is_complex_scalar_v<Scalar>) {
    s << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
  } else {
    s << v;
  }
  return s.str();
}

template <typename Scalar>
std::string format_row(const Vector<Scalar>& row) {
  std::string s = "[";
  for (Index i = 0; i < row.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_scalar(row[i]);
  }
  return s + "]";
}

template <typename Scalar>
void print_report(const Vector<Scalar>& row, const AnalyzeOptions& opts, std::ostream& out) {
  const ClassificationReport rep = membership(row, opts.tolerances, opts.m_max);
  const SymbolValues sym = symbol_values(row);

  out << "n: " << rep.n << "\n";
  out << "row: " << format_row(row) << "\n";
  out << std::setprecision(10);
  out << "spectral norm: " << rep.spectral_norm << "\n";
  out << "|row sum|: " << rep.row_sum_abs << "\n";
  out << "symbol moduli: " << format_row<double>(sym.values.cwiseAbs()) << "\n";
  out << "in C_n: " << to_string(rep.in_cn) << "  (margin " << rep.margin
      << " relative, tie tolerance " << opts.tolerances.tie << ")\n";
  out << "in C_n': " << to_string(rep.in_cn_prime) << "  (gap tolerance "
      << opts.tolerances.gap << ")\n";
  if (rep.violating_root) {
    out << "violating root index: " << *rep.violating_root << "  (|c(w^k)| = "
        << std::abs(sym.values[*rep.violating_root]) << ")\n";
  }
  if constexpr (is_complex_scalar_v<Scalar>) {
    out << "sign condition: n/a (complex row)\n";
  } else {
    out << "sign condition: " << to_string(rep.sign) << "\n";
  }
  out << "gram row: " << format_row(gram_row(row)) << "\n";
  out << "gram nonnegative: " << (rep.gram_nonnegative ? "yes" : "no")
      << ", gram positive: " << (rep.gram_positive ? "yes" : "no") << "\n";
  if constexpr (is_complex_scalar_v<Scalar>) {
    const PhaseConeReport cone = phase_cone(row, opts.tolerances);
    out << "phase cone (row itself): " << (cone.holds ? "inside" : "outside")
        << "  (worst phase " << cone.worst_phase << ", bound " << cone.phase_bound << ")\n";
    if (rep.cone && rep.cone->holds_at_m) {
      out << "gram power row enters phase cone at m = " << *rep.cone->holds_at_m;
      if (rep.cone->adjacency_witness) {
        out << "  (adjacent nonzero pair " << rep.cone->adjacency_witness->first << ","
            << rep.cone->adjacency_witness->second << ")";
      }
      out << "\n";
    } else {
      out << "no gram power row entered the phase cone for m <= " << opts.m_max << "\n";
    }
  } else {
    if (rep.minimal_positive_power) {
      out << "minimal positive power: m = " << *rep.minimal_positive_power
          << "  (searched m <= " << opts.m_max << ")\n";
    } else {
      out << "minimal positive power: none for m <= " << opts.m_max
          << "  (relative gap margin " << rep.margin << ")\n";
    }
  }
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.literals.empty()) {
    err << "analyze: at least one scalar is required\n";
    return kExitUsage;
  }
  if (opts.m_max < 1) {
    err << "analyze: --mmax must be >= 1\n";
    return kExitUsage;
  }
  std::vector<ParsedScalar> scalars;
  scalars.reserve(opts.literals.size());
  bool any_complex = false;
  try {
    for (const std::string& lit : opts.literals) {
      scalars.push_back(parse_scalar_literal(lit));
      any_complex = any_complex || scalars.back().is_complex;
    }
    opts.tolerances.validate();
  } catch (const std::invalid_argument& e) {
    err << "analyze: " << e.what() << "\n";
    return kExitUsage;
  }

  const Index n = static_cast<Index>(scalars.size());
  if (any_complex) {
    ComplexVector row(n);
    for (Index i = 0; i < n; ++i) row[i] = scalars[i].value;
    print_report(row, opts, out);
  } else {
    RealVector row(n);
    for (Index i = 0; i < n; ++i) row[i] = scalars[i].value.real();
    print_report(row, opts, out);
  }
  return kExitOk;
}

int cmd_table(const TableCommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    opts.spec.validate();
  } catch (const std::invalid_argument& e) {
    err << "table: " << e.what() << "\n";
    return kExitUsage;
  }
  if (opts.format != "md" && opts.format != "csv" && opts.format != "json") {
    err << "table: --format must be md, csv, or json\n";
    return kExitUsage;
  }

  const std::vector<TableRow> rows = build_table(opts.spec);

  auto render = [&](std::ostream& sink) {
    if (opts.format == "csv") {
      render_table_csv(opts.spec, rows, sink);
    } else if (opts.format == "json") {
      render_table_json(opts.spec, rows, sink);
    } else {
      render_table_markdown(opts.spec, rows, sink);
    }
  };

  if (opts.out_path.empty()) {
    render(out);
    return kExitOk;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) {
    err << "table: cannot open output path '" << opts.out_path << "'\n";
    return kExitUsage;
  }
  render(file);
  file.flush();
  if (!file) {
    err << "table: failed while writing '" << opts.out_path << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.trials < 1 || opts.n_min < 2 || opts.n_max < opts.n_min || opts.m_max < 1) {
    err << "verify: invalid flags (need trials >= 1, 2 <= nmin <= nmax, mmax >= 1)\n";
    return kExitUsage;
  }
  try {
    opts.tolerances.validate();
  } catch (const std::invalid_argument& e) {
    err << "verify: " << e.what() << "\n";
    return kExitUsage;
  }

  out << "verify: mode=" << (opts.complex_rows ? "complex" : "real")
      << " trials-per-n=" << opts.trials << " n=" << opts.n_min << ".." << opts.n_max
      << " mmax=" << opts.m_max << " seed=" << opts.seed << "\n";

  long long total = 0, consistent = 0, boundary = 0, inconclusive = 0, violations = 0;
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    long long n_consistent = 0, n_boundary = 0, n_inconclusive = 0, n_violations = 0;
    GaussianStream g(dimension_seed(opts.seed, n));
    for (long long t = 0; t < opts.trials; ++t) {
      EquivalenceOutcome outcome;
      if (opts.complex_rows) {
        outcome = complex_equivalence(sample_complex_sphere(n, g), opts.m_max, opts.tolerances);
      } else {
        outcome = equivalence_check(sample_sphere(n, g), opts.m_max, opts.tolerances);
      }
      switch (outcome.status) {
        case EquivalenceStatus::consistent: ++n_consistent; break;
        case EquivalenceStatus::boundary_skipped: ++n_boundary; break;
        case EquivalenceStatus::inconclusive: ++n_inconclusive; break;
        case EquivalenceStatus::violation:
          ++n_violations;
          err << "violation at n=" << n << " trial=" << t << ": " << outcome.detail << "\n";
          break;
      }
    }
    out << "n=" << n << ": consistent=" << n_consistent << " boundary-skipped=" << n_boundary
        << " inconclusive=" << n_inconclusive << " violations=" << n_violations << "\n";
    total += opts.trials;
    consistent += n_consistent;
    boundary += n_boundary;
    inconclusive += n_inconclusive;
    violations += n_violations;
  }
  out << "total: trials=" << total << " consistent=" << consistent
      << " boundary-skipped=" << boundary << " inconclusive=" << inconclusive
      << " violations=" << violations << "\n";
  return violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace circulant
