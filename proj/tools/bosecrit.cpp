#include "bosecrit/errors.hpp"
#include "bosecrit/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bosecrit::ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bosecrit::Scenario load(const std::string& source) {
  if (auto builtin = bosecrit::builtin_scenario(source)) return *builtin;
  try {
    return bosecrit::parse_scenario(read_file(source));
  } catch (const bosecrit::ParseError& e) {
    throw bosecrit::ParseError(e.line(), source + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condensation and symmetry-breaking temperatures of a trapped Bose gas"};
  app.require_subcommand(1, 1);

  std::string scenario_path;
  std::string mode_text;
  std::string out_path;
  const std::pair<const char*, const char*> commands[] = {
      {"tsb", "symmetry-breaking temperature"},
      {"t0", "ideal-gas condensation temperature in both modes"},
      {"shift", "first-order condensation shift and the T_sb relations"},
      {"tc-numeric", "self-consistent Hartree-Fock condensation temperature"},
      {"kappa", "field-to-density scale from the healing length"},
      {"density", "self-consistent density profile"},
      {"verify", "invariant checks"},
  };
  for (auto [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--scenario", scenario_path, "scenario file or built-in name (rb87-paper)")
        ->required();
    sub->add_option("--mode", mode_text, "paper-verbatim or derived-consistent")
        ->check(CLI::IsMember({"paper-verbatim", "derived-consistent"}));
    sub->add_option("--out", out_path, "write the CSV table to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bosecrit::kExitInvalid;
  }

  try {
    const bosecrit::Command command = bosecrit::parse_command(app.get_subcommands().front()->get_name());
    bosecrit::RunOptions options;
    if (!mode_text.empty()) options.mode = bosecrit::parse_formula_mode(mode_text);
    if (const char* tol = std::getenv("BOSECRIT_TOL")) options.tolerance = bosecrit::parse_tolerance(tol);

    const bosecrit::Scenario scenario = load(scenario_path);
    const bosecrit::RunResult result = bosecrit::run(command, scenario, options);
    std::cout << result.report;
    if (!result.table.empty()) {
      if (out_path.empty()) {
        std::cout << '\n' << result.table;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw bosecrit::ValidationError("cannot write '" + out_path + "'");
        out << result.table;
      }
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return bosecrit::exit_code_for(e);
  }
}
