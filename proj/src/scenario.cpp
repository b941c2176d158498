#include "bosecrit/scenario.hpp"

#include "bosecrit/errors.hpp"
#include "bosecrit/field.hpp"
#include "bosecrit/specialfn.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cctype>
#include <cstdio>
#include <exception>
#include <sstream>

namespace bosecrit {

namespace {

constexpr std::array kNumericKeys = {
    "mass_kg", "N",        "lambda", "kappa_si", "a_nm",     "omega0_hz",   "omega0_rad_s",
    "alpha_per_m2", "xi_um", "n_per_m3", "tc_nk", "t_nk", "mu_over_kt", "grid_points", "r_max_um",
};
constexpr std::array kGasKeys = {
    "mass_kg", "N", "lambda", "kappa_si", "omega0_hz", "omega0_rad_s", "alpha_per_m2",
};
constexpr double kDefaultKappa = kRb87QuotedKappa;

bool is_numeric_key(std::string_view key) {
  return std::find(kNumericKeys.begin(), kNumericKeys.end(), key) != kNumericKeys.end();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view token) {
  double v = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

const double* find(const Scenario& s, const char* key) {
  auto it = s.values.find(key);
  return it == s.values.end() ? nullptr : &it->second;
}

}  // namespace

Command parse_command(std::string_view text) {
  if (text == "tsb") return Command::tsb;
  if (text == "t0") return Command::t0;
  if (text == "shift") return Command::shift;
  if (text == "tc-numeric") return Command::tc_numeric;
  if (text == "kappa") return Command::kappa;
  if (text == "density") return Command::density;
  if (text == "verify") return Command::verify;
  throw ValidationError("unknown command '" + std::string(text) + "'");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::tsb: return "tsb";
    case Command::t0: return "t0";
    case Command::shift: return "shift";
    case Command::tc_numeric: return "tc-numeric";
    case Command::kappa: return "kappa";
    case Command::density: return "density";
    case Command::verify: return "verify";
  }
  return "?";
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[i] = logarithmic ? from * std::pow(to / from, t) : from + (to - from) * t;
  }
  if (points > 1) out.back() = to;
  return out;
}

void rebuild(Scenario& s) {
  s.gas.reset();
  s.healing.reset();

  const bool any_gas = std::any_of(kGasKeys.begin(), kGasKeys.end(),
                                   [&](const char* k) { return s.values.count(k) != 0; });
  if (any_gas) {
    const double* mass = find(s, "mass_kg");
    const double* count = find(s, "N");
    if (!mass || !count) throw ValidationError("gas parameters need both mass_kg and N");
    GasInput in;
    in.mass = *mass;
    in.particle_number = *count;
    if (const double* v = find(s, "lambda")) in.lambda = *v;
    if (const double* v = find(s, "kappa_si")) in.kappa = *v;
    if (const double* v = find(s, "a_nm")) in.scattering_length = *v * si::nanometre;
    if (const double* v = find(s, "alpha_per_m2")) in.alpha = *v;
    const double* hz = find(s, "omega0_hz");
    const double* rad = find(s, "omega0_rad_s");
    if (hz && rad) throw ValidationError("give omega0_hz or omega0_rad_s, not both");
    if (hz) in.omega0 = 2.0 * si::pi * *hz;
    if (rad) in.omega0 = *rad;
    if (in.scattering_length && !in.kappa && !in.lambda) in.kappa = kDefaultKappa;
    s.gas = validate(in);
  }

  if (const double* xi = find(s, "xi_um")) {
    const double* a = find(s, "a_nm");
    const double* n = find(s, "n_per_m3");
    const double* tc = find(s, "tc_nk");
    if (!a || !n || !tc) throw ValidationError("xi_um needs a_nm, n_per_m3 and tc_nk");
    HealingInput h;
    h.healing_length = *xi * si::micrometre;
    h.scattering_length = *a * si::nanometre;
    h.central_density = *n;
    h.tc = *tc * si::nanokelvin;
    if (const double* m = find(s, "mass_kg")) h.mass = *m;
    if (!(h.healing_length > 0.0 && h.scattering_length > 0.0 && h.central_density > 0.0 &&
          h.tc > 0.0 && h.mass > 0.0))
      throw NonPhysical("healing-length inputs must all be positive");
    s.healing = h;
  }

  if (const double* g = find(s, "grid_points")) {
    if (*g < 2.0 || *g != std::floor(*g)) throw ValidationError("grid_points must be an integer >= 2");
  }
}

Scenario Scenario::with_value(const std::string& key, double value) const {
  Scenario copy = *this;
  copy.values[key] = value;
  rebuild(copy);
  return copy;
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  bool have_name = false, have_mode = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos || line.find('=', eq + 1) != std::string_view::npos)
      throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!valid_identifier(key) || value.empty()) throw ParseError(line_no, "expected 'key = value'");
    const std::string k(key);

    if (k == "name") {
      if (have_name) throw ParseError(line_no, "duplicate key 'name'");
      if (!valid_identifier(value)) throw ParseError(line_no, "name must be a single identifier");
      s.name = std::string(value);
      have_name = true;
    } else if (k == "mode") {
      if (have_mode) throw ParseError(line_no, "duplicate key 'mode'");
      try {
        s.mode = parse_formula_mode(std::string(value));
      } catch (const DomainError&) {
        throw ParseError(line_no, "mode must be paper-verbatim or derived-consistent");
      }
      have_mode = true;
    } else if (k == "sweep") {
      if (s.sweep) throw ParseError(line_no, "duplicate key 'sweep'");
      const auto tokens = split_ws(value);
      if (tokens.size() != 4 && tokens.size() != 5)
        throw ParseError(line_no, "sweep = <key> <from> <to> <points> [linear|log]");
      SweepAxis axis;
      axis.key = std::string(tokens[0]);
      if (!is_numeric_key(axis.key) || axis.key == "grid_points")
        throw ParseError(line_no, "sweep axis '" + axis.key + "' is not a sweepable parameter");
      const auto from = to_double(tokens[1]);
      const auto to = to_double(tokens[2]);
      const auto points = to_double(tokens[3]);
      if (!from || !to || !points || *points < 1 || *points != std::floor(*points) || *points > 100000)
        throw ParseError(line_no, "sweep range must be two numbers and a positive point count");
      axis.from = *from;
      axis.to = *to;
      axis.points = static_cast<int>(*points);
      if (tokens.size() == 5) {
        if (tokens[4] == "log") axis.logarithmic = true;
        else if (tokens[4] != "linear") throw ParseError(line_no, "sweep spacing must be linear or log");
      }
      if (axis.logarithmic && !(axis.from > 0.0 && axis.to > 0.0))
        throw ParseError(line_no, "log sweep needs positive bounds");
      s.sweep = axis;
    } else if (is_numeric_key(k)) {
      if (s.values.count(k)) throw ParseError(line_no, "duplicate key '" + k + "'");
      const auto v = to_double(value);
      if (!v) throw ParseError(line_no, "value of '" + k + "' is not a number");
      s.values[k] = *v;
    } else {
      throw ParseError(line_no, "unknown key '" + k + "'");
    }
  }
  rebuild(s);
  if (s.sweep) {
    // Every sweep point must validate on its own.
    for (double v : s.sweep->values()) (void)s.with_value(s.sweep->key, v);
  }
  return s;
}

std::string builtin_scenario_text(std::string_view name) {
  if (name == "rb87-paper") {
    return "# 87Rb healing-length estimate of the scale kappa\n"
           "name = rb87-paper\n"
           "mass_kg = 1.443e-25\n"
           "N = 1000000\n"
           "omega0_hz = 100\n"
           "a_nm = 5.77\n"
           "kappa_si = 3e39\n"
           "xi_um = 0.4\n"
           "n_per_m3 = 1e19\n"
           "tc_nk = 200\n";
  }
  return {};
}

std::optional<Scenario> builtin_scenario(std::string_view name) {
  const std::string text = builtin_scenario_text(name);
  if (text.empty()) return std::nullopt;
  return parse_scenario(text);
}

SolverOptions solver_options(double tolerance) {
  SolverOptions o;
  o.quadrature_tol = tolerance;
  o.density_tol = std::min(1e-12, tolerance * 1e-2);
  o.temperature_tol = std::max(tolerance * 0.1, 1e-13);
  return o;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_tolerance(std::string_view text) {
  const auto v = to_double(trim(text));
  if (!v || !(*v > 0.0 && *v < 1e-3))
    throw ValidationError("BOSECRIT_TOL must be a number in (0, 1e-3)");
  return *v;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConvergenceError*>(&error)) return kExitConvergence;
  return kExitInvalid;
}

namespace {

std::string show(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Evaluation {
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, double>> cells;
  int exit_code = kExitOk;

  void line(std::string text) { lines.push_back(std::move(text)); }
  void cell(std::string name, double value) { cells.emplace_back(std::move(name), value); }
};

const GasParameters& need_gas(const Scenario& s, Command c) {
  if (!s.gas)
    throw ValidationError(std::string(to_string(c)) +
                          " needs gas parameters (mass_kg, N, a trap and a coupling)");
  return *s.gas;
}

Evaluation eval_tsb(const Scenario& s) {
  const GasParameters& gas = need_gas(s, Command::tsb);
  Evaluation e;
  const double t = symmetry_breaking_temperature(gas);
  e.line("lambda = " + show(gas.lambda));
  if (std::isinf(t)) {
    e.line("T_sb = inf K  [TCS]");
    e.line("warning: ideal gas (lambda = 0), the symmetry-breaking temperature diverges");
  } else {
    e.line("k_B T_sb = 2 m c^2 / sqrt(lambda)  [TCS]");
    e.line("T_sb = " + show(t) + " K  [TCS]");
  }
  e.cell("t_sb_k", t);
  return e;
}

Evaluation eval_t0(const Scenario& s) {
  const GasParameters& gas = need_gas(s, Command::t0);
  Evaluation e;
  const double paper = ideal_condensation_temperature(gas, FormulaMode::paper_verbatim);
  const double derived = ideal_condensation_temperature(gas, FormulaMode::derived_consistent);
  e.line("T_0 (paper-verbatim, (N sqrt(2 alpha^3)/zeta(3))^1/3 hbar c) = " + show(paper) + " K  [CTI]");
  e.line("T_0 (derived-consistent, hbar omega0 (N/zeta(3))^1/3) = " + show(derived) + " K  [CTI]");
  e.line("ratio paper/derived = " + show(paper / derived) + " (2^-1/3 = " + show(std::cbrt(0.5)) +
         ", from the 1/sqrt(2 alpha^3) vs 1/(2 alpha)^3/2 prefactor of [NC1])");
  e.cell("t0_paper_k", paper);
  e.cell("t0_derived_k", derived);
  e.cell("ratio", paper / derived);
  return e;
}

Evaluation eval_shift(const Scenario& s, FormulaMode mode) {
  const GasParameters& gas = need_gas(s, Command::shift);
  Evaluation e;
  const ThetaValue& tp = theta_constant(FormulaMode::paper_verbatim);
  const ThetaValue& td = theta_constant(FormulaMode::derived_consistent);
  const double sp = condensation_shift(gas, FormulaMode::paper_verbatim);
  const double sd = condensation_shift(gas, FormulaMode::derived_consistent);
  const double t0 = ideal_condensation_temperature(gas, mode);
  const double shift = mode == FormulaMode::paper_verbatim ? sp : sd;
  const double tc = t0 * (1.0 + shift);
  const double tsb = symmetry_breaking_temperature(gas);
  e.line("G_3/2(1) = " + format_number(tp.g32_at_one) + " (radius " +
         std::to_string(tp.truncation_radius) + ", tail " + show(tp.tail_estimate) + ")");
  e.line("Theta (paper-verbatim) = " + show(tp.value) + "  [CTE]");
  e.line("Theta (derived-consistent) = " + show(td.value));
  e.line("a / a_ho = " + show(gas.scattering_length / harmonic_length(gas)));
  e.line("Delta T_c / T_0 (paper-verbatim) = " + show(sp) + "  [SHIFT]");
  e.line("Delta T_c / T_0 (derived-consistent) = " + show(sd) + "  [SHIFT]");
  e.line(std::string("mode ") + to_string(mode) + ": T_0 = " + show(t0) + " K  [CTI], T_c = " +
         show(tc) + " K, T_r = " + show(tc / t0));
  e.line("T_sb = " + show(tsb) + " K  [TCS]");
  e.cell("theta", mode == FormulaMode::paper_verbatim ? tp.value : td.value);
  e.cell("shift", shift);
  e.cell("t0_k", t0);
  e.cell("tc_k", tc);
  e.cell("t_ratio", tc / t0);
  e.cell("t_sb_k", tsb);
  if (gas.lambda > 0.0 && gas.kappa > 0.0) {
    const RelationResult rel = tsb_tc_relation(gas, tc / t0);
    e.line("T_sb from T_r, general form = " + show(rel.general) + " K  [REL]");
    e.line("T_sb from T_r, harmonic form with 5.2 = " + show(rel.harmonic) + " K  [HO]");
    e.line("general / harmonic = " + show(rel.ratio) + "; unrounded constant replacing 5.2 = " +
           show(harmonic_relation_constant()));
    e.cell("rel_k", rel.general);
    e.cell("ho_k", rel.harmonic);
  } else {
    e.line("ideal gas: shift vanishes and T_sb diverges");
  }
  return e;
}

Evaluation eval_tc_numeric(const Scenario& s, const SolverOptions& opts) {
  const GasParameters& gas = need_gas(s, Command::tc_numeric);
  Evaluation e;
  const CriticalTemperatureResult r = numeric_condensation_temperature(gas, opts);
  const double sp = condensation_shift(gas, FormulaMode::paper_verbatim);
  const double sd = condensation_shift(gas, FormulaMode::derived_consistent);
  const double tsb = symmetry_breaking_temperature(gas);
  e.line("T_0 (derived-consistent) = " + show(r.t0) + " K  [CTI]");
  e.line("T_c (self-consistent Hartree-Fock oracle) = " + show(r.tc) + " K  [DE1] [F1] [NC] [PQ]");
  e.line("numeric Delta T_c / T_0 = " + show(r.shift));
  e.line("analytic Delta T_c / T_0: paper-verbatim " + show(sp) + ", derived-consistent " +
         show(sd) + "  [SHIFT]");
  const double rp = sp != 0.0 ? r.shift / sp : std::nan("");
  const double rd = sd != 0.0 ? r.shift / sd : std::nan("");
  e.line("numeric / analytic: paper-verbatim " + show(rp) + ", derived-consistent " + show(rd));
  e.line("T_sb = " + show(tsb) + " K  [TCS]");
  if (gas.lambda > 0.0) {
    const bool ordered = tsb > r.t0 && r.t0 > r.tc;
    e.line(std::string("ordering T_sb > T_0 > T_c: ") + (ordered ? "yes" : "NO"));
  }
  e.cell("t0_k", r.t0);
  e.cell("tc_numeric_k", r.tc);
  e.cell("shift_numeric", r.shift);
  e.cell("shift_paper", sp);
  e.cell("shift_derived", sd);
  e.cell("ratio_paper", rp);
  e.cell("ratio_derived", rd);
  return e;
}

Evaluation eval_kappa(const Scenario& s) {
  if (!s.healing) throw ValidationError("kappa needs xi_um, a_nm, n_per_m3 and tc_nk");
  const HealingInput& h = *s.healing;
  Evaluation e;
  e.cell("n_per_m3", h.central_density);
  const double n_star = kappa_critical_density(h);
  try {
    const KappaResult r = kappa_from_healing(h);
    e.line("n = " + show(h.central_density) + " m^-3: kappa = " + show(r.kappa) +
           " J^-1 m^-3/2  [kappa], mu = " + show(r.mu) + " J  [HL1]");
    e.cell("kappa_si", r.kappa);
    e.cell("mu_j", r.mu);
    e.cell("radicand_positive", 1.0);
  } catch (const NegativeRadicand&) {
    e.line("n = " + show(h.central_density) + " m^-3: radicand negative (n* = " + show(n_star) +
           " m^-3)  [kappa]");
    e.cell("kappa_si", std::nan(""));
    e.cell("mu_j", std::nan(""));
    e.cell("radicand_positive", 0.0);
  }
  return e;
}

std::vector<double> density_grid(const Scenario& s, const GasParameters& gas, const ThermalState& st) {
  int points = 64;
  if (const double* g = find(s, "grid_points")) points = static_cast<int>(*g);
  double r_max = radial_cutoff(gas, st);
  if (const double* r = find(s, "r_max_um")) {
    if (!(*r > 0.0)) throw ValidationError("r_max_um must be positive");
    r_max = *r * si::micrometre;
  }
  std::vector<double> radii(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) radii[i] = r_max * i / (points - 1);
  return radii;
}

void append_row(std::string& table, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) table += ',';
    table += format_number(row[i]);
  }
  table += '\n';
}

RunResult run_density(const Scenario& s, const SolverOptions& opts) {
  if (s.sweep) throw ValidationError("density does not support sweeps");
  const GasParameters& gas = need_gas(s, Command::density);
  const double t = find(s, "t_nk") ? *find(s, "t_nk") * si::nanokelvin
                                   : ideal_condensation_temperature(gas, FormulaMode::derived_consistent);
  double mu;
  std::string mu_source;
  if (const double* x = find(s, "mu_over_kt")) {
    mu = *x * gas.thermal_energy(t);
    mu_source = "from mu_over_kt";
  } else {
    const ChemicalPotentialResult c = chemical_potential(gas, t, opts);
    mu = c.chemical_potential;
    mu_source = c.saturated ? "pinned at mu_c  [PQ]" : "fixed by N  [NC]";
  }
  const ThermalState st = make_state(gas, t, mu);
  const std::vector<double> radii = density_grid(s, gas, st);
  const DensityProfile profile = self_consistent_density(gas, st, radii, opts);

  RunResult out;
  std::ostringstream rep;
  rep << "scenario: " << s.name << "\ncommand: density\n";
  rep << "T = " << show(t) << " K, mu = " << show(mu) << " J (" << mu_source << ")\n";
  rep << "n(r) = (m k_B T / 2 pi hbar^2)^3/2 g_3/2(z(r)) solved self-consistently  [DE1] [F1]\n";
  rep << "grid points = " << radii.size() << ", r_max = " << show(radii.back()) << " m\n";
  rep << "n(0) = " << show(profile.density.front()) << " m^-3, z(0) = " << show(profile.fugacity.front())
      << "\n";
  if (!profile.all_converged()) {
    rep << "warning: some grid points did not converge\n";
    out.exit_code = kExitConvergence;
  }
  out.report = rep.str();
  out.table = "r_m,n_per_m3,converged\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    append_row(out.table, {profile.radii[i], profile.density[i], static_cast<double>(profile.converged[i])});
  return out;
}

struct Check {
  bool ok;
  std::string text;
};

RunResult run_verify(const Scenario& s, const SolverOptions& opts) {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  auto check = [&](bool ok, std::string text) { checks.push_back({ok, std::move(text)}); };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };

  for (double nu : {1.5, 2.0, 3.0}) {
    const double g = bose_function(nu, 1.0);
    const double z = zeta(nu);
    check(rel(g, z) <= 1e-10, "g_" + show(nu) + "(1) = zeta(" + show(nu) + ")  [BEF]");
  }
  double worst = 0.0;
  for (double nu : {2.0, 2.5, 3.0})
    for (double z : {0.1, 0.5, 0.9}) worst = std::max(worst, check_derivative_identity(nu, z));
  check(worst < 1e-6, "z d/dz g_nu = g_(nu-1), worst residual " + show(worst) + "  [BEF1]");
  {
    const DoubleSumResult a = g_double_sum_at(1.0, 256);
    const DoubleSumResult b = g_double_sum_at(1.0, 512);
    check(rel(a.value, b.value) < 1e-8,
          "G_3/2(1) = " + format_number(b.value) + " stable under radius doubling");
  }

  if (s.gas) {
    const GasParameters& gas = *s.gas;
    GasParameters ideal = gas;
    ideal.lambda = 0.0;
    const double t0 = ideal_condensation_temperature(ideal, FormulaMode::derived_consistent);
    const ThermalState at_t0 = make_state(ideal, t0, 0.0);
    const double n_numeric = total_number(ideal, at_t0, NumberMode::numeric, opts);
    check(rel(n_numeric, gas.particle_number) < 1e-3,
          "ideal closure: N(T_0) = " + show(n_numeric) + " vs N = " + show(gas.particle_number) +
              "  [CTI] [NC]");
    const double np = total_number(ideal, at_t0, NumberMode::paper_verbatim, opts);
    const double nd = total_number(ideal, at_t0, NumberMode::derived_consistent, opts);
    check(rel(nd, n_numeric) < 1e-6, "derived-consistent normalisation matches quadrature  [NC1]");
    notes.push_back("normalisation prefactor: paper-verbatim / derived-consistent = " + show(np / nd) +
                    " (1/sqrt(2 alpha^3) vs 1/(2 alpha)^3/2)  [NC1]");

    if (gas.lambda == 0.0) {
      const CriticalTemperatureResult r = numeric_condensation_temperature(gas, opts);
      check(rel(r.tc, r.t0) < 1e-4, "ideal gas: numeric T_c = T_0 (" + show(r.tc) + " K)");
      check(std::isinf(symmetry_breaking_temperature(gas)), "ideal gas: T_sb diverges  [TCS]");
      check(condensation_shift(gas) == 0.0, "ideal gas: shift vanishes  [SHIFT]");
    } else {
      const CriticalTemperatureResult r = numeric_condensation_temperature(gas, opts);
      const double tsb = symmetry_breaking_temperature(gas);
      check(r.shift < 0.0, "numeric shift negative: " + show(r.shift));
      check(tsb > r.t0 && r.t0 > r.tc, "ordering T_sb > T_0 > T_c");
      SolverOptions no_bath = opts;
      no_bath.include_thermal_bath = false;
      const CriticalTemperatureResult nb = numeric_condensation_temperature(gas, no_bath);
      check(rel(nb.tc, r.tc) < 1e-8,
            "thermal bath leaves T_c unchanged (rel. change " + show(rel(nb.tc, r.tc)) + ")  [PQ]");
      const ThermalState crit = critical_state(gas, r.tc, opts);
      std::vector<double> radii(33);
      const double R = radial_cutoff(gas, crit);
      for (std::size_t i = 0; i < radii.size(); ++i) radii[i] = R * i / (radii.size() - 1);
      const DensityProfile prof = self_consistent_density(gas, crit, radii, opts);
      const bool bounded = std::all_of(prof.fugacity.begin(), prof.fugacity.end(),
                                       [](double z) { return z <= 1.0; });
      check(prof.all_converged() && bounded, "critical profile converged with z(r) <= 1  [F1]");
      check(thermal_term_identity(gas, r.tc) < 1e-12, "thermal term identity at T_c");
      FieldPotentialInput in{gas, r.tc, 0.0, false};
      const double phi = 0.5 * minima(gas, 0.0).phi_min_plus;
      check(potential_value(in, phi) == potential_value(in, -phi), "Z2 symmetry of V_T  [Pot1]");
      for (FormulaMode m : {FormulaMode::paper_verbatim, FormulaMode::derived_consistent})
        notes.push_back(std::string("shift numeric / analytic (") + to_string(m) +
                        ") = " + show(r.shift / condensation_shift(gas, m)) + "  [SHIFT]");
    }
  }

  if (s.healing) {
    try {
      const KappaResult k = kappa_from_healing(*s.healing);
      notes.push_back("kappa = " + show(k.kappa) + " J^-1 m^-3/2  [kappa]");
    } catch (const NegativeRadicand& err) {
      notes.push_back(std::string("kappa: ") + err.what());
    }
  }

  RunResult out;
  std::ostringstream rep;
  rep << "scenario: " << s.name << "\ncommand: verify\n";
  bool all = true;
  for (const Check& c : checks) {
    rep << (c.ok ? "[PASS] " : "[FAIL] ") << c.text << '\n';
    all = all && c.ok;
  }
  for (const std::string& n : notes) rep << "[INFO] " << n << '\n';
  rep << (all ? "all checks passed\n" : "invariant suite FAILED\n");
  out.report = rep.str();
  out.exit_code = all ? kExitOk : kExitInvariant;
  return out;
}

Evaluation evaluate(Command c, const Scenario& s, FormulaMode mode, const SolverOptions& opts) {
  switch (c) {
    case Command::tsb: return eval_tsb(s);
    case Command::t0: return eval_t0(s);
    case Command::shift: return eval_shift(s, mode);
    case Command::tc_numeric: return eval_tc_numeric(s, opts);
    case Command::kappa: return eval_kappa(s);
    default: break;
  }
  throw ValidationError("command cannot be evaluated pointwise");
}

}  // namespace

RunResult run(Command command, const Scenario& scenario, const RunOptions& options) {
  const SolverOptions opts = solver_options(options.tolerance);
  const FormulaMode mode = options.mode.value_or(scenario.mode);
  if (command == Command::density) return run_density(scenario, opts);
  if (command == Command::verify) return run_verify(scenario, opts);

  std::optional<SweepAxis> sweep = scenario.sweep;
  if (!sweep && command == Command::kappa) {
    // Density range 1e13 - 1e15 cm^-3 quoted for trapped Rb-87.
    sweep = SweepAxis{"n_per_m3", 1e19, 1e21, 21, true};
  }

  std::vector<Scenario> points;
  std::vector<double> axis;
  if (sweep) {
    axis = sweep->values();
    for (double v : axis) points.push_back(scenario.with_value(sweep->key, v));
  } else {
    points.push_back(scenario);
  }

  std::vector<Evaluation> results(points.size());
  std::vector<std::exception_ptr> failures(points.size());
  const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      results[i] = evaluate(command, points[i], mode, opts);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  RunResult out;
  std::ostringstream rep;
  rep << "scenario: " << scenario.name << "\ncommand: " << to_string(command) << "\nmode: "
      << to_string(mode) << '\n';
  if (command == Command::kappa) {
    const HealingInput& h = *scenario.healing;
    rep << "xi = " << show(h.healing_length) << " m, a = " << show(h.scattering_length)
        << " m (scattering length read in nm), T_c = " << show(h.tc) << " K\n";
    rep << "radicand positive for n < n* = " << show(kappa_critical_density(h)) << " m^-3\n";
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (sweep) rep << "# " << sweep->key << " = " << show(axis[i]) << '\n';
    for (const std::string& l : results[i].lines) rep << l << '\n';
  }
  out.report = rep.str();

  const bool sweep_is_column = sweep && !(command == Command::kappa && sweep->key == "n_per_m3");
  std::vector<std::string> header;
  if (sweep_is_column) header.push_back(sweep->key);
  for (const auto& [name, v] : results.front().cells) header.push_back(name);
  for (std::size_t i = 0; i < header.size(); ++i) out.table += (i ? "," : "") + header[i];
  out.table += '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<double> row;
    if (sweep_is_column) row.push_back(axis[i]);
    for (const auto& [name, v] : results[i].cells) row.push_back(v);
    append_row(out.table, row);
  }
  return out;
}

}  // namespace bosecrit
