// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <iostream>

#include "opalg/cli/cli.hpp"
#include "opalg/errors.hpp"

namespace opalg::cli {

int run(int argc, const char* const* argv) {
  CLI::App app{"Finite-dimensional experiments on weighted-shift and Volterra operator algebras", "opalg"};
  ExperimentConfig config;
  std::string format = "csv";
  std::size_t dim = 0, nodes = 0;
  unsigned nmax = 0;
  std::string weights, kernel, out;

  std::string names;
  for (auto n : experiment_names()) names += (names.empty() ? "" : ", ") + std::string(n);
  app.add_option("experiment", config.experiment, "One of: " + names)->required();
  auto* o_dim = app.add_option("--dim", dim, "Truncation or grid dimension N");
  auto* o_nodes = app.add_option("--nodes", nodes, "Circle grid node count M");
  app.add_option("--seed", config.seed, "Seed for every pseudo-random draw")->default_val(1);
  auto* o_weights = app.add_option("--weights", weights, "list:a0,a1,... | harmonic | geometric:r | ones");
  auto* o_kernel =
      app.add_option("--kernel", kernel, "const:c | poly:c0,c1,... | powern:n | step:a,b,v;... | notell1:m | singular32");
  auto* o_nmax = app.add_option("--nmax", nmax, "Experiment size parameter (degree, block count, trials, ...)");
  auto* o_out = app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timing", config.timing, "Include wall_time in the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationError;
  }

  if (*o_dim) config.dim = dim;
  if (*o_nodes) config.nodes = nodes;
  if (*o_weights) config.weights = weights;
  if (*o_kernel) config.kernel = kernel;
  if (*o_nmax) config.nmax = nmax;
  if (*o_out) config.out_path = out;
  config.format = format == "json" ? Format::json : Format::csv;

  try {
    validate(config);
    const ExperimentReport report = run_experiment(config);
    write_report(report, config.format, config.out_path.value_or(""));
    return report.all_passed() ? kAllPassed : kAssertionFailed;
  } catch (const NumericError& e) {
    std::cerr << "opalg: numeric failure: " << e.what() << " (last value " << e.last_value() << ")\n";
    return kNumericFailure;
  } catch (const InputError& e) {
    std::cerr << "opalg: invalid input: " << e.what() << '\n';
  } catch (const IndexError& e) {
    std::cerr << "opalg: invalid index: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    std::cerr << "opalg: precondition failed: " << e.what() << '\n';
  }
  return kValidationError;
}

}  // namespace opalg::cli
