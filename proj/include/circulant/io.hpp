#pragma once

#include "circulant/table.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace circulant {

/// A scalar parsed from the command line. Accepted forms: decimal reals
/// ("-2.5", "1e-3"), rationals ("3/5"), and complex literals with a trailing
/// imaginary unit ("1.0+0.5i", "2i", "-1-i", "i").
struct ParsedScalar {
  Complex value;
  bool is_complex = false;  // true when the literal used an imaginary part
};

ParsedScalar parse_scalar_literal(std::string_view text);

/// Dimension lists accept commas and ranges: "2..10,20" or "3,5,7".
std::vector<int> parse_dim_list(std::string_view text);

std::vector<long long> parse_power_list(std::string_view text);

/// Column labels in file order: sign_positive, power_<m>..., in_cn_prime.
std::vector<std::string> table_column_labels(const TableSpec& spec);

/// CSV: UTF-8, comma separators, LF line endings, fractions with six decimal
/// digits, header exactly as produced by table_column_labels plus the
/// stderr_* mirrors and boundary_count.
void render_table_csv(const TableSpec& spec, const std::vector<TableRow>& rows,
                      std::ostream& out);

/// JSON: a top-level object echoing the run configuration (dims, samples,
/// powers, seed)
/// with one object per row under "rows", same field names as the CSV and the
/// same six-decimal rounding.
void render_table_json(const TableSpec& spec, const std::vector<TableRow>& rows,
                       std::ostream& out);

/// Markdown: the human view, percentages with one decimal place.
void render_table_markdown(const TableSpec& spec, const std::vector<TableRow>& rows,
                           std::ostream& out);

}  // namespace circulant
