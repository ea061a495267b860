#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "circulant/commands.hpp"

#include <json.hpp>

#include <cstdlib>
#include <sstream>

using namespace circulant;

TEST_CASE("scalar literals: reals, rationals, complex forms") {
  CHECK(parse_scalar_literal("-2.5").value == Complex(-2.5, 0.0));
  CHECK_FALSE(parse_scalar_literal("-2.5").is_complex);
  CHECK(parse_scalar_literal("1e-3").value == Complex(1e-3, 0.0));
  CHECK(parse_scalar_literal(" 42 ").value == Complex(42.0, 0.0));

  CHECK(parse_scalar_literal("3/5").value == Complex(0.6, 0.0));
  CHECK(parse_scalar_literal("-3/5").value == Complex(-0.6, 0.0));
  CHECK(parse_scalar_literal("1.5/2").value == Complex(0.75, 0.0));

  CHECK(parse_scalar_literal("1.0+0.5i").value == Complex(1.0, 0.5));
  CHECK(parse_scalar_literal("2i").value == Complex(0.0, 2.0));
  CHECK(parse_scalar_literal("-1-i").value == Complex(-1.0, -1.0));
  CHECK(parse_scalar_literal("i").value == Complex(0.0, 1.0));
  CHECK(parse_scalar_literal("-i").value == Complex(0.0, -1.0));
  CHECK(parse_scalar_literal("2.5e-1+1e-2i").value == Complex(0.25, 0.01));
  CHECK(parse_scalar_literal("1+0i").is_complex);

  CHECK_THROWS_AS(parse_scalar_literal(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("1+i/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("i2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar_literal("1+2"), std::invalid_argument);
}

TEST_CASE("dimension and power lists") {
  CHECK(parse_dim_list("2..5,9") == std::vector<int>{2, 3, 4, 5, 9});
  CHECK(parse_dim_list("7") == std::vector<int>{7});
  CHECK(parse_power_list("1,2,4") == std::vector<long long>{1, 2, 4});
  CHECK_THROWS_AS(parse_dim_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_dim_list("5..2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dim_list("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_power_list("0"), std::invalid_argument);
}

namespace {

TableSpec tiny_spec() {
  TableSpec spec;
  spec.dims = {2, 3};
  spec.samples = 2000;
  spec.seed = 5;
  return spec;
}

}  // namespace

TEST_CASE("csv format: exact header, six-decimal fractions, LF endings") {
  const TableSpec spec = tiny_spec();
  const auto rows = build_table(spec);
  std::ostringstream out;
  render_table_csv(spec, rows, out);
  const std::string text = out.str();

  const std::string expected_header =
      "n,sign_positive,power_1,power_2,power_4,power_8,power_16,power_32,in_cn_prime,"
      "stderr_sign_positive,stderr_power_1,stderr_power_2,stderr_power_4,stderr_power_8,"
      "stderr_power_16,stderr_power_32,stderr_in_cn_prime,boundary_count";
  CHECK(text.substr(0, expected_header.size()) == expected_header);
  CHECK(text.find("\r") == std::string::npos);
  // one header plus one line per dimension
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  // fractions carry six decimals
  const auto first_comma = text.find(",", text.find("\n"));
  const std::string first_value = text.substr(first_comma + 1, 8);
  CHECK(first_value.size() == 8);
  CHECK(first_value[1] == '.');
}

TEST_CASE("json mirrors the csv at the printed precision") {
  const TableSpec spec = tiny_spec();
  const auto rows = build_table(spec);

  std::ostringstream json_out;
  render_table_json(spec, rows, json_out);
  const nlohmann::json doc = nlohmann::json::parse(json_out.str());

  CHECK(doc["samples"] == spec.samples);
  CHECK(doc["seed"] == spec.seed);
  CHECK(doc["dims"].get<std::vector<int>>() == spec.dims);
  CHECK(doc["powers"].get<std::vector<long long>>() == spec.powers);
  REQUIRE(doc["rows"].size() == rows.size());

  std::ostringstream csv_out;
  render_table_csv(spec, rows, csv_out);
  std::istringstream csv_in(csv_out.str());
  std::string header_line, line;
  std::getline(csv_in, header_line);
  const auto labels = table_column_labels(spec);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(std::getline(csv_in, line));
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    CHECK(std::stoi(field) == doc["rows"][i]["n"].get<int>());
    for (const auto& label : labels) {
      REQUIRE(std::getline(fields, field, ','));
      CHECK(std::stod(field) == doctest::Approx(doc["rows"][i][label].get<double>())
                                    .epsilon(1e-12));
    }
  }
}

TEST_CASE("markdown shows one-decimal percentages") {
  const TableSpec spec = tiny_spec();
  const auto rows = build_table(spec);
  std::ostringstream out;
  render_table_markdown(spec, rows, out);
  const std::string text = out.str();
  CHECK(text.find("| n |") == 0);
  CHECK(text.find("B^32>O") != std::string::npos);
  CHECK(text.find("%") != std::string::npos);
  CHECK(text.find("C_n'") != std::string::npos);
}

TEST_CASE("analyze command: known report") {
  AnalyzeOptions opts;
  opts.literals = {"1", "-2", "-3"};
  std::ostringstream out, err;
  CHECK(cmd_analyze(opts, out, err) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("spectral norm: 4") != std::string::npos);
  CHECK(text.find("|row sum|: 4") != std::string::npos);
  CHECK(text.find("in C_n: yes") != std::string::npos);
  CHECK(text.find("in C_n': yes") != std::string::npos);
  CHECK(text.find("minimal positive power: m = 1") != std::string::npos);
  CHECK(text.find("gram row: [14, 1, 1]") != std::string::npos);
  CHECK(err.str().empty());
}

TEST_CASE("analyze command: tied-maximum example via decimals") {
  AnalyzeOptions opts;
  opts.literals = {"0.6", "-0.1236068", "0.3236068", "0.3236068", "-0.1236068"};
  // seven-digit literals only approximate the exact row; widen the bands so
  // the truncation (about 5e-9 in the margin) does not flip the verdicts
  opts.tolerances.tie = 1e-7;
  opts.tolerances.gap = 1e-7;
  std::ostringstream out, err;
  CHECK(cmd_analyze(opts, out, err) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("in C_n: yes") != std::string::npos);
  CHECK(text.find("in C_n': no") != std::string::npos);
  CHECK(text.find("minimal positive power: none") != std::string::npos);
}

TEST_CASE("analyze command: identity row") {
  AnalyzeOptions opts;
  opts.literals = {"1", "0", "0"};
  std::ostringstream out, err;
  CHECK(cmd_analyze(opts, out, err) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("spectral norm: 1") != std::string::npos);
  CHECK(text.find("in C_n: yes") != std::string::npos);
  CHECK(text.find("in C_n': no") != std::string::npos);
}

TEST_CASE("verify command: single-trial smoke run") {
  VerifyOptions opts;
  opts.trials = 1;
  opts.n_min = 3;
  opts.n_max = 3;
  std::ostringstream out, err;
  CHECK(cmd_verify(opts, out, err) == kExitOk);
  CHECK(out.str().find("total: trials=1 ") != std::string::npos);
}

TEST_CASE("analyze command: complex rows report the phase cone") {
  AnalyzeOptions opts;
  opts.literals = {"1", "1+0.1i", "0.9"};
  std::ostringstream out, err;
  CHECK(cmd_analyze(opts, out, err) == kExitOk);
  CHECK(out.str().find("phase cone") != std::string::npos);
}

TEST_CASE("analyze command: usage failures exit with code 2") {
  std::ostringstream out, err;
  AnalyzeOptions bad_literal;
  bad_literal.literals = {"1", "oops"};
  CHECK(cmd_analyze(bad_literal, out, err) == kExitUsage);
  CHECK(err.str().find("cannot parse scalar") != std::string::npos);

  AnalyzeOptions empty;
  CHECK(cmd_analyze(empty, out, err) == kExitUsage);

  AnalyzeOptions bad_mmax;
  bad_mmax.literals = {"1"};
  bad_mmax.m_max = 0;
  CHECK(cmd_analyze(bad_mmax, out, err) == kExitUsage);
}

TEST_CASE("table command writes files and rejects unwritable paths") {
  TableCommandOptions opts;
  opts.spec = tiny_spec();
  opts.format = "csv";
  opts.out_path = "/nonexistent-dir/table.csv";
  std::ostringstream out, err;
  CHECK(cmd_table(opts, out, err) == kExitUsage);
  CHECK(err.str().find("cannot open") != std::string::npos);

  opts.format = "nope";
  opts.out_path.clear();
  CHECK(cmd_table(opts, out, err) == kExitUsage);

  opts.format = "json";
  std::ostringstream good_out, good_err;
  CHECK(cmd_table(opts, good_out, good_err) == kExitOk);
  const nlohmann::json reparsed = nlohmann::json::parse(good_out.str(), nullptr, false);
  CHECK_FALSE(reparsed.is_discarded());
}

TEST_CASE("verify command: small clean run") {
  VerifyOptions opts;
  opts.trials = 25;
  opts.n_min = 2;
  opts.n_max = 5;
  opts.m_max = 64;
  std::ostringstream out, err;
  CHECK(cmd_verify(opts, out, err) == kExitOk);
  const std::string text = out.str();
  CHECK(text.find("violations=0") != std::string::npos);
  CHECK(text.find("total: trials=100") != std::string::npos);

  VerifyOptions complex_opts = opts;
  complex_opts.trials = 10;
  complex_opts.n_max = 4;
  complex_opts.complex_rows = true;
  std::ostringstream cout2, cerr2;
  CHECK(cmd_verify(complex_opts, cout2, cerr2) == kExitOk);
  CHECK(cout2.str().find("mode=complex") != std::string::npos);

  VerifyOptions bad = opts;
  bad.trials = 0;
  CHECK(cmd_verify(bad, out, err) == kExitUsage);
}

TEST_CASE("installed binary honors the exit-code contract") {
  const char* bin = std::getenv("CIRCULANT_BIN");
  if (bin == nullptr) {
    MESSAGE("CIRCULANT_BIN not set; skipping subprocess checks");
    return;
  }
  const std::string base = std::string("\"") + bin + "\"";
  auto run = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(run(base + " analyze 1 -2 -3") == 0);
  CHECK(run(base + " analyze 1 oops") == 2);
  CHECK(run(base + " analyze") == 2);
  CHECK(run(base + " table --samples 500 --dims 2 --format csv") == 0);
  CHECK(run(base + " table --format bogus") == 2);
  CHECK(run(base + " verify --trials 5 --nmin 2 --nmax 3") == 0);
  CHECK(run(base + " verify --trials 0") == 2);
  CHECK(run(base + " bogus-subcommand") == 2);
}
