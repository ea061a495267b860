#pragma once

#include "circulant/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace circulant {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct AnalyzeOptions {
  std::vector<std::string> literals;
  long long m_max = 512;
  Tolerances tolerances{};
};

/// Classify a single row given as scalar literals: norm, row sum, symbol
/// moduli, class verdicts with margins, sign condition, Gram row, and the
/// minimal positive power (real) or phase-cone search (complex).
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

struct TableCommandOptions {
  TableSpec spec{};
  std::string format = "md";  // md | csv | json
  std::string out_path;       // empty: stdout
};

int cmd_table(const TableCommandOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  long long trials = 1000;  // per dimension
  int n_min = 2;
  int n_max = 10;
  long long m_max = 512;
  bool complex_rows = false;
  std::uint64_t seed = 42;
  Tolerances tolerances{};
};

/// Run the membership/positivity equivalence on random sphere samples,
/// skipping boundary rows. Exit code 1 when any violation is found.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace circulant
