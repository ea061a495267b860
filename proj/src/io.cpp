#include "circulant/io.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace circulant {

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::string_view text, const char* why) {
  throw std::invalid_argument("cannot parse scalar '" + std::string(text) + "': " + why);
}

double parse_plain_real(std::string_view text, std::string_view original) {
  const std::string buf(text);
  if (buf.empty()) parse_fail(original, "empty number");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) parse_fail(original, "trailing characters");
  if (!std::isfinite(v)) parse_fail(original, "value is not finite");
  return v;
}

// Signed coefficient in front of a trailing 'i'; bare "i" means 1.
double parse_imag_coeff(std::string_view text, std::string_view original) {
  if (text.empty() || text.back() != 'i') parse_fail(original, "expected trailing 'i'");
  text.remove_suffix(1);
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_plain_real(text, original);
}

// Position of the +/- sign separating real and imaginary parts, if any.
// Signs at position 0 or directly after an exponent marker do not split.
std::size_t split_position(std::string_view text) {
  for (std::size_t i = text.size(); i-- > 1;) {
    const char c = text[i];
    if (c != '+' && c != '-') continue;
    const char prev = text[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    return i;
  }
  return std::string_view::npos;
}

}  // namespace

ParsedScalar parse_scalar_literal(std::string_view raw) {
  const std::string_view text = trimmed(raw);
  if (text.empty()) parse_fail(raw, "empty literal");

  if (text.find('/') != std::string_view::npos) {
    const auto slash = text.find('/');
    if (text.find('/', slash + 1) != std::string_view::npos) parse_fail(raw, "multiple '/'");
    if (text.find('i') != std::string_view::npos) parse_fail(raw, "rational form must be real");
    const double num = parse_plain_real(text.substr(0, slash), raw);
    const double den = parse_plain_real(text.substr(slash + 1), raw);
    if (den == 0.0) parse_fail(raw, "division by zero");
    const double v = num / den;
    if (!std::isfinite(v)) parse_fail(raw, "value is not finite");
    return {Complex(v, 0.0), false};
  }

  if (text.back() == 'i') {
    const std::size_t split = split_position(text);
    if (split == std::string_view::npos) {
      return {Complex(0.0, parse_imag_coeff(text, raw)), true};
    }
    const double re = parse_plain_real(text.substr(0, split), raw);
    const double im = parse_imag_coeff(text.substr(split), raw);
    return {Complex(re, im), true};
  }

  if (text.find('i') != std::string_view::npos) {
    parse_fail(raw, "imaginary unit must be the final character");
  }
  return {Complex(parse_plain_real(text, raw), 0.0), false};
}

namespace {

long long parse_positive_integer(std::string_view text, const char* what) {
  const std::string buf{trimmed(text)};
  if (buf.empty()) throw std::invalid_argument(std::string(what) + ": empty entry");
  char* end = nullptr;
  const long long v = std::strtoll(buf.c_str(), &end, 10);
  if (end != buf.c_str() + buf.size() || v < 1) {
    throw std::invalid_argument(std::string(what) + ": expected a positive integer, got '" +
                                buf + "'");
  }
  return v;
}

}  // namespace

std::vector<int> parse_dim_list(std::string_view text) {
  std::vector<int> dims;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item =
        trimmed(comma == std::string_view::npos ? rest : rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      dims.push_back(static_cast<int>(parse_positive_integer(item, "dims")));
    } else {
      const long long lo = parse_positive_integer(item.substr(0, dots), "dims");
      const long long hi = parse_positive_integer(item.substr(dots + 2), "dims");
      if (hi < lo) throw std::invalid_argument("dims: descending range");
      for (long long n = lo; n <= hi; ++n) dims.push_back(static_cast<int>(n));
    }
  }
  if (dims.empty()) throw std::invalid_argument("dims: empty list");
  return dims;
}

std::vector<long long> parse_power_list(std::string_view text) {
  std::vector<long long> powers;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item =
        trimmed(comma == std::string_view::npos ? rest : rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    powers.push_back(parse_positive_integer(item, "powers"));
  }
  if (powers.empty()) throw std::invalid_argument("powers: empty list");
  return powers;
}

std::vector<std::string> table_column_labels(const TableSpec& spec) {
  std::vector<std::string> labels;
  labels.reserve(spec.powers.size() + 2);
  labels.emplace_back("sign_positive");
  for (const long long m : spec.powers) {
    labels.push_back("power_" + std::to_string(m));
  }
  labels.emplace_back("in_cn_prime");
  return labels;
}

namespace {

std::string fraction6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Row values in the label order produced by table_column_labels.
std::vector<double> row_values(const TableRow& row) {
  std::vector<double> v;
  v.reserve(row.power_portions.size() + 2);
  v.push_back(row.sign_positive);
  v.insert(v.end(), row.power_portions.begin(), row.power_portions.end());
  v.push_back(row.in_cn_prime);
  return v;
}

std::vector<double> row_stderrs(const TableRow& row) {
  std::vector<double> v;
  v.reserve(row.power_stderrs.size() + 2);
  v.push_back(row.sign_positive_stderr);
  v.insert(v.end(), row.power_stderrs.begin(), row.power_stderrs.end());
  v.push_back(row.in_cn_prime_stderr);
  return v;
}

double round6(double v) {
  return std::round(v * 1e6) / 1e6;
}

}  // namespace

void render_table_csv(const TableSpec& spec, const std::vector<TableRow>& rows,
                      std::ostream& out) {
  const auto labels = table_column_labels(spec);
  out << "n";
  for (const auto& l : labels) out << "," << l;
  for (const auto& l : labels) out << ",stderr_" << l;
  out << ",boundary_count\n";
  for (const TableRow& row : rows) {
    out << row.n;
    for (const double v : row_values(row)) out << "," << fraction6(v);
    for (const double v : row_stderrs(row)) out << "," << fraction6(v);
    out << "," << row.boundary_count << "\n";
  }
}

void render_table_json(const TableSpec& spec, const std::vector<TableRow>& rows,
                       std::ostream& out) {
  nlohmann::json doc;
  doc["dims"] = spec.dims;
  doc["samples"] = spec.samples;
  doc["powers"] = spec.powers;
  doc["seed"] = spec.seed;
  const auto labels = table_column_labels(spec);
  nlohmann::json json_rows = nlohmann::json::array();
  for (const TableRow& row : rows) {
    nlohmann::json r;
    r["n"] = row.n;
    const auto values = row_values(row);
    const auto errors = row_stderrs(row);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      r[labels[i]] = round6(values[i]);
      r["stderr_" + labels[i]] = round6(errors[i]);
    }
    r["boundary_count"] = row.boundary_count;
    json_rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(json_rows);
  out << doc.dump(2) << "\n";
}

void render_table_markdown(const TableSpec& spec, const std::vector<TableRow>& rows,
                           std::ostream& out) {
  out << "| n | +-x>O |";
  for (const long long m : spec.powers) {
    if (m == 1) {
      out << " B>O |";
    } else {
      out << " B^" << m << ">O |";
    }
  }
  out << " x in C_n' |\n";
  out << "|---|";
  for (std::size_t i = 0; i < spec.powers.size() + 2; ++i) out << "---|";
  out << "\n";
  char buf[32];
  auto pct = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
    return std::string(buf);
  };
  long long boundary_total = 0;
  for (const TableRow& row : rows) {
    out << "| " << row.n << " | " << pct(row.sign_positive) << " |";
    for (const double v : row.power_portions) out << " " << pct(v) << " |";
    out << " " << pct(row.in_cn_prime) << " |\n";
    boundary_total += row.boundary_count;
  }
  if (boundary_total > 0) {
    out << "\n" << boundary_total
        << " sample(s) fell inside the C_n' tolerance band and were excluded from that column.\n";
  }
}

}  // namespace circulant
