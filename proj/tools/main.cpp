#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "scenario.hpp"

int main(int argc, char** argv) {
  using namespace bkalg::tools;

  CLI::App app{"Banach-Kantorovich algebras over finite atomic measure spaces"};
  app.set_version_flag("--version", std::string(bkalg::kVersion));
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "Run the commands of a scenario file and emit a report");
  std::string scenario_path;
  ParameterOverrides flags;
  std::string format = "json";
  std::string out_path;
  run_cmd->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  run_cmd->add_option("--tolerance", flags.tolerance, "Numerical tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--samples", flags.samples, "Random samples per property (default 500)");
  run_cmd->add_option("--seed", flags.seed, "Seed of the SplitMix64 generator (default 0)");
  run_cmd->add_option("--cap", flags.cap, "Cap on enumerated spectrum members (default 4096)");
  run_cmd->add_option("--report", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  run_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    const Scenario scenario = load_scenario(scenario_path);
    report = run(scenario, resolve(scenario.parameters, flags));
  } catch (const bkalg::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const bkalg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = format == "json" ? to_json(report).dump(2) + "\n" : to_text(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return report.passed() ? 0 : 1;
}
