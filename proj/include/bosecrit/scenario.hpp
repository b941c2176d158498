#pragma once

#include "bosecrit/scale.hpp"
#include "bosecrit/semiclassical.hpp"
#include "bosecrit/units.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bosecrit {

enum class Command { tsb, t0, shift, tc_numeric, kappa, density, verify };

Command parse_command(std::string_view text);
const char* to_string(Command command);

struct SweepAxis {
  std::string key;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  bool logarithmic = false;

  std::vector<double> values() const;
};

/// A parsed scenario file.
///
/// Format: one `key = value` per line, `#` starts a comment.  Numeric keys
/// carry their unit in the name and are converted to SI on validation:
///
///   mass_kg  N  lambda  kappa_si  a_nm  omega0_hz  omega0_rad_s  alpha_per_m2
///   xi_um  n_per_m3  tc_nk  t_nk  mu_over_kt  grid_points  r_max_um
///
/// plus `name = <id>`, `mode = paper-verbatim|derived-consistent` and
/// `sweep = <numeric key> <from> <to> <points> [linear|log]`.
/// omega0_hz is the ordinary trap frequency f (omega0 = 2 pi f).  When the
/// scattering length is given without kappa or lambda, kappa defaults to
/// the Rb-87 estimate 3e39 J^-1 m^-3/2.
struct Scenario {
  std::string name = "scenario";
  FormulaMode mode = FormulaMode::derived_consistent;
  std::map<std::string, double> values;
  std::optional<SweepAxis> sweep;

  std::optional<GasParameters> gas;
  std::optional<HealingInput> healing;

  /// Copy with one numeric key replaced and the derived parts rebuilt.
  Scenario with_value(const std::string& key, double value) const;
};

/// ParseError (with line number) for syntax problems and unknown keys;
/// ValidationError / InconsistentParameters / NonPhysical for bad values.
Scenario parse_scenario(std::string_view text);

/// Rebuilds `gas` and `healing` from `values`.
void rebuild(Scenario& scenario);

/// Built-in scenarios by name; currently only "rb87-paper".
std::optional<Scenario> builtin_scenario(std::string_view name);
std::string builtin_scenario_text(std::string_view name);

struct RunOptions {
  std::optional<FormulaMode> mode;
  /// Relative tolerance of the radial quadrature; the fixed-point and
  /// root tolerances are tied to it.
  double tolerance = 1e-10;
};

/// Solver options implied by a run tolerance.
SolverOptions solver_options(double tolerance);

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitConvergence = 2,
  kExitInvariant = 3,
};

struct RunResult {
  std::string report;
  std::string table;  // CSV, may be empty
  int exit_code = kExitOk;
};

/// Executes one command.  Library errors propagate; map them with
/// exit_code_for().
RunResult run(Command command, const Scenario& scenario, const RunOptions& options = {});

int exit_code_for(const std::exception& error);

/// Fixed 17-significant-digit formatting used for every table cell.
std::string format_number(double value);

/// Parses BOSECRIT_TOL; must be a float in (0, 1e-3).
double parse_tolerance(std::string_view text);

}  // namespace bosecrit
