#include <iostream>

#include <CLI11.hpp>

#include "gda/cli.hpp"
#include "gda/oracle.hpp"
#include "gda/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bruhat forms, Dieudonne determinants, reduced norms and SK groups of graded division algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  gda::CommandInputs in;
  in.budget = gda::default_budget();
  bool no_timings = false;
  app.add_option("--budget", in.budget, "closure size limit (default: GDA_BUDGET or 10000000)");
  app.add_flag("--no-timings", no_timings, "omit the timing fields from the report");

  auto add_matrix_options = [&](CLI::App* c) {
    c->add_option("--algebra", in.algebra, "spec file or bundled sample name")->required();
    c->add_option("--matrix", in.matrix, "matrix JSON file")->required();
    c->add_option("--shifts", in.shifts, "shift vectors as a JSON list, e.g. [[0,0],[1,0]]");
  };
  auto* bruhat = app.add_subcommand("bruhat", "strict Bruhat normal form A = T U P_pi V");
  add_matrix_options(bruhat);
  auto* det = app.add_subcommand("det", "Dieudonne determinant and kernel membership");
  add_matrix_options(det);
  auto* nrd = app.add_subcommand("nrd", "reduced norms on S_0 and membership in S_h^(1)");
  add_matrix_options(nrd);

  auto* sk = app.add_subcommand("sk", "SK(E) and SK^h of M_n(E) in closed form, checked by the oracle");
  sk->add_option("--algebra", in.algebra, "spec file or bundled sample name")->required();
  sk->add_option("--n", in.n, "matrix size")->check(CLI::Range(1, 8));
  auto* shifts = sk->add_option("--shifts", in.shifts, "shift vectors as a JSON list");
  sk->add_option("--shift-spec", in.shift_spec, "delta as a JSON list, for the shifts (0, delta, ..., (n-1) delta)")
      ->excludes(shifts);
  bool no_oracle = false;
  sk->add_flag("--no-oracle", no_oracle, "skip the brute-force cross-check");

  auto* verify = app.add_subcommand("verify", "property suites and oracle cross-checks");
  verify->add_option("--algebra", in.algebra, "spec file or bundled sample name (default: all bundled samples)");
  std::vector<std::string> suites = gda::suite_names();
  suites.push_back("all");
  verify->add_option("--suite", in.suite, "suite to run")->check(CLI::IsMember(suites));
  verify->add_option("--seed", in.seed, "random seed");
  verify->add_option("--samples", in.samples, "random samples per algebra and property")->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  in.oracle = !no_oracle;

  const std::string command = app.get_subcommands().front()->get_name();
  gda::RunReport report = gda::run_command(command, in);
  std::cout << gda::to_json(report, !no_timings).dump(2) << '\n';
  if (report.outputs.contains("error"))
    std::cerr << "gda: " << report.outputs["error"]["code"].get<std::string>() << ": "
              << report.outputs["error"]["message"].get<std::string>() << '\n';
  return report.exit_code;
}
