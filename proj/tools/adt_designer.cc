// adt-designer: optimal designs for bivariate Gamma-process degradation tests.
//
//   adt-designer run <config> [--out DIR]
//   adt-designer validate <config>
//   adt-designer sweep <config> --param NAME --from A --to B --steps N [--out DIR]
//
// Exit status: 0 certified optimum, 2 uncertified result, 1 error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adt/commands.h"
#include "adt/report.h"
#include "adt/scenario.h"

int main(int argc, char** argv) {
  CLI::App app{"Locally optimal designs for bivariate Gamma-process degradation tests"};
  app.set_version_flag("--version", std::string("adt-designer ") + adt::kProgramVersion);
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Optimize the design described by a scenario file");
  run->add_option("config", config, "Scenario file")->required();
  run->add_option("--out", out_dir, "Write design.txt and manifest.txt here");

  auto* validate = app.add_subcommand("validate", "Check a scenario file without computing");
  validate->add_option("config", config, "Scenario file")->required();

  std::string param;
  double from = 0.0, to = 0.0;
  int steps = 1;
  std::string names;
  for (const auto& n : adt::sweepable_parameters()) names += (names.empty() ? "" : ", ") + n;
  auto* sweep = app.add_subcommand("sweep", "Re-optimize while one scalar input varies");
  sweep->add_option("config", config, "Scenario file")->required();
  sweep->add_option("--param", param, "Swept parameter: " + names)->required();
  sweep->add_option("--from", from, "First value")->required();
  sweep->add_option("--to", to, "Last value")->required();
  sweep->add_option("--steps", steps, "Number of values")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Write the CSV and a manifest here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (config.empty()) {
    std::cerr << "error: empty scenario path\n" << app.help();
    return 1;
  }
  if (*run) return adt::run_command(config, out_dir, std::cout, std::cerr);
  if (*validate) return adt::validate_command(config, std::cout, std::cerr);
  return adt::sweep_command(config, param, from, to, steps, out_dir, std::cout, std::cerr);
}
