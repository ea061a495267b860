#include "circulant/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

int run(int argc, char** argv) {
  CLI::App app{"circulant: spectral norms, class membership, and eventual positivity "
               "of circulant matrices"};
  app.require_subcommand(1);

  circulant::AnalyzeOptions analyze_opts;
  std::string analyze_tie = "1e-9", analyze_gap = "1e-9";
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Classify one row given as scalar literals (reals, rationals like 3/5, "
                 "or complex like 1+0.5i). Flags go before the row.");
  analyze->add_option("--mmax", analyze_opts.m_max, "Power search bound (default 512)");
  analyze->add_option("--tie", analyze_opts.tolerances.tie, "Relative tie tolerance");
  analyze->add_option("--gap", analyze_opts.tolerances.gap, "Relative strict-gap tolerance");
  // the row may contain negative literals, so everything after the first
  // non-flag token is taken verbatim
  analyze->prefix_command();

  circulant::TableCommandOptions table_opts;
  std::string dims_text = "2..10,20";
  std::string powers_text = "1,2,4,8,16,32";
  CLI::App* table = app.add_subcommand(
      "table", "Monte Carlo estimates of the portion of the unit sphere satisfying the "
               "sign, Gram power positivity, and C_n' conditions");
  table->add_option("--dims", dims_text, "Dimensions, e.g. 2..10,20");
  table->add_option("--samples", table_opts.spec.samples, "Sphere samples per dimension");
  table->add_option("--powers", powers_text, "Gram power exponents, e.g. 1,2,4,8,16,32");
  table->add_option("--seed", table_opts.spec.seed, "Run seed");
  table->add_option("--format", table_opts.format, "Output format: md, csv, or json");
  table->add_option("--out", table_opts.out_path, "Output path (default stdout)");
  table->add_option("--tie", table_opts.spec.tolerances.tie, "Relative tie tolerance");
  table->add_option("--gap", table_opts.spec.tolerances.gap, "Relative strict-gap tolerance");

  circulant::VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Cross-check the membership/positivity equivalence on random rows; exit "
                "code 1 when a violation is found");
  verify->add_option("--trials", verify_opts.trials, "Trials per dimension");
  verify->add_option("--nmin", verify_opts.n_min, "Smallest dimension");
  verify->add_option("--nmax", verify_opts.n_max, "Largest dimension");
  verify->add_option("--mmax", verify_opts.m_max, "Power search bound");
  verify->add_flag("--complex", verify_opts.complex_rows, "Sample complex rows");
  verify->add_option("--seed", verify_opts.seed, "Run seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? circulant::kExitOk : circulant::kExitUsage;
  }

  if (analyze->parsed()) {
    for (const std::string& tok : analyze->remaining()) {
      analyze_opts.literals.push_back(tok);
    }
    return circulant::cmd_analyze(analyze_opts, std::cout, std::cerr);
  }
  if (table->parsed()) {
    table_opts.spec.dims = circulant::parse_dim_list(dims_text);
    table_opts.spec.powers = circulant::parse_power_list(powers_text);
    return circulant::cmd_table(table_opts, std::cout, std::cerr);
  }
  return circulant::cmd_verify(verify_opts, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return circulant::kExitUsage;
  }
}
