#pragma once

#include "bosecrit/specialfn.hpp"
#include "bosecrit/units.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bosecrit {

/// Which spelling of the closed-form results to evaluate.
///
/// paper_verbatim keeps the printed prefactors, e.g. 1/sqrt(2 alpha^3) in
/// the particle-number normalisation.  derived_consistent integrates the
/// Hartree-Fock density over the harmonic trap directly, which gives
/// 1/(2 alpha)^3/2 and the textbook k_B T_0 = hbar omega0 (N/zeta(3))^1/3.
enum class FormulaMode { paper_verbatim, derived_consistent };

/// total_number evaluates either one of the closed forms or the
/// quadrature of the self-consistent density.
enum class NumberMode { numeric, paper_verbatim, derived_consistent };

const char* to_string(FormulaMode mode);
FormulaMode parse_formula_mode(const std::string& text);

struct ThermalState {
  double temperature = 0.0;         // K
  double chemical_potential = 0.0;  // J
  double beta = 0.0;                // 1/J
  double fugacity = 0.0;            // exp(beta mu)
};

/// Builds a state with the derived members filled.  T must be positive.
ThermalState make_state(const GasParameters& params, double temperature, double chemical_potential);

/// Numerical controls of the self-consistent solver and the quadratures.
struct SolverOptions {
  double density_tol = 1e-12;     // relative, per grid point
  int max_iterations = 200;       // fixed-point iterations per point
  double damping = 0.5;
  double quadrature_tol = 1e-10;  // relative, radial integral
  int quadrature_depth = 20;
  double temperature_tol = 1e-11; // relative, critical temperature root
  /// Keep the (lambda / 4mc^2)(k_B T)^2 bath energy in the spectrum and in
  /// the critical chemical potential.  Both or neither.
  bool include_thermal_bath = true;
  SeriesAccuracy series{1e-14, 10000};
};

// --- energies -----------------------------------------------------------

/// (lambda / 4 m c^2)(k_B T)^2.
double bath_energy(const GasParameters& params, double temperature);
/// (lambda kappa^-2 / 2 m c^2) n.
double mean_field_energy(const GasParameters& params, double density);
/// m c^2 alpha r^2 = m omega0^2 r^2 / 2.
double trap_energy(const GasParameters& params, double radius);
/// (m k_B T / 2 pi hbar^2)^3/2, the inverse cube of the thermal wavelength.
double quantum_density(const GasParameters& params, double temperature);

/// Semiclassical single-particle energy
///   [mc^2] + p^2/2m + (lambda kappa^-2/2mc^2) n + (lambda/4mc^2)(k_B T)^2 + mc^2 alpha r^2.
double energy_spectrum(const GasParameters& params, double momentum, double density,
                       double temperature, double radius, bool include_rest_mass,
                       bool include_thermal_bath = true);

/// Local fugacity exp(beta (mu - mean field - bath - trap)).  DomainError
/// when the result exceeds 1 + 1e-12, i.e. mu lies above mu_c.
double local_fugacity(const GasParameters& params, const ThermalState& state, double density,
                      double radius, bool include_thermal_bath = true);

// --- self-consistent density --------------------------------------------

struct DensityPoint {
  double density = 0.0;
  double fugacity = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct DensityProfile {
  std::vector<double> radii;
  std::vector<double> density;
  std::vector<double> fugacity;
  std::vector<std::uint8_t> converged;

  bool all_converged() const;
};

/// Solves n = n_Q g_3/2(z(r; n)) at one radius by damped fixed-point
/// iteration.  The map is monotone, so every iterate also narrows a
/// bracket; a damped step that leaves the bracket is replaced by its
/// midpoint.  Non-convergence is reported through the flag.
DensityPoint solve_local_density(const GasParameters& params, const ThermalState& state,
                                 double radius, const SolverOptions& opts = {});

/// Grid evaluation, parallel over points when OpenMP is enabled.
DensityProfile self_consistent_density(const GasParameters& params, const ThermalState& state,
                                       std::span<const double> radii,
                                       const SolverOptions& opts = {});

/// Single-threaded reference for self_consistent_density.
DensityProfile self_consistent_density_serial(const GasParameters& params,
                                              const ThermalState& state,
                                              std::span<const double> radii,
                                              const SolverOptions& opts = {});

/// Same as self_consistent_density but raises ConvergenceError on the
/// first unconverged point.
DensityProfile require_converged(DensityProfile profile);

/// Ideal-gas density n_0(r) = n_Q g_3/2(exp(beta (mu - mc^2 alpha r^2))).
double ideal_density(const GasParameters& params, const ThermalState& state, double radius);

/// Density to first order in lambda around n_0.
///   derived_consistent: n_0 - beta (U n_0 + bath) n_Q g_1/2(z_0).
///   paper_verbatim:     the printed bracket, kept for reproduction.  It is
///                       not dimensionally homogeneous in SI.
/// DomainError when z_0 is inside the g_1/2 divergence guard.
double first_order_density(const GasParameters& params, const ThermalState& state, double radius,
                           FormulaMode mode = FormulaMode::derived_consistent,
                           bool include_thermal_bath = true);

// --- normalisation and temperatures ---------------------------------------

/// Radius past which 4 pi r^2 n(r) is below 1e-16 of its peak.
double radial_cutoff(const GasParameters& params, const ThermalState& state);

/// Particle number.  numeric integrates 4 pi r^2 n(r) of the
/// self-consistent density over [0, R] (R from radial_cutoff times
/// `cutoff_scale`); the closed forms need mu <= 0.
double total_number(const GasParameters& params, const ThermalState& state, NumberMode mode,
                    const SolverOptions& opts = {}, double cutoff_scale = 1.0);

/// mu_c = (lambda kappa^-2 / 2mc^2) n(0) + (lambda / 4mc^2)(k_B T)^2.
double critical_chemical_potential(const GasParameters& params, double temperature,
                                   double central_density, bool include_thermal_bath = true);

/// The state at which the trap centre reaches z = 1: n(0) = n_Q zeta(3/2)
/// and mu = mu_c.
ThermalState critical_state(const GasParameters& params, double temperature,
                            const SolverOptions& opts = {});

struct ChemicalPotentialResult {
  double chemical_potential = 0.0;
  double critical = 0.0;  // mu_c(T)
  /// T is at or below the condensation temperature: mu is pinned at mu_c
  /// and the excess particles form the ground-state population.
  bool saturated = false;
  double thermal_number = 0.0;
};

/// Chemical potential fixing the particle number at temperature T.
ChemicalPotentialResult chemical_potential(const GasParameters& params, double temperature,
                                           const SolverOptions& opts = {});

/// Ideal-gas condensation temperature.
///   paper_verbatim:     k_B T_0 = (N sqrt(2 alpha^3) / zeta(3))^1/3 hbar c.
///   derived_consistent: k_B T_0 = hbar omega0 (N / zeta(3))^1/3.
double ideal_condensation_temperature(const GasParameters& params, FormulaMode mode);

struct ThetaValue {
  double value = 0.0;
  double g32_at_one = 0.0;
  int truncation_radius = 0;
  double tail_estimate = 0.0;
};

/// Constant of the first-order shift.
///   paper_verbatim:     (zeta(3)zeta(2) - G(1)) / (3 (2pi)^5/4 zeta(3)) * (4 / (pi^3 zeta(3)))^1/6
///   derived_consistent: (zeta(3/2)zeta(2) - G(1)) / (3 2^9/4 pi^3/2 zeta(3)^7/6)
/// with G(1) = G_3/2(1).  Cached after the first call.
const ThetaValue& theta_constant(FormulaMode mode = FormulaMode::paper_verbatim);

/// Delta T_c / T_0 = -lambda kappa^-2 alpha^1/4 m^1/2 / (c^3/2 hbar^5/2) Theta N^1/6.
/// With lambda = 16 pi hbar^2 c^2 kappa^2 a this is -16 pi 2^-1/4 Theta (a/a_ho) N^1/6.
double condensation_shift(const GasParameters& params,
                          FormulaMode mode = FormulaMode::paper_verbatim);

struct CriticalTemperatureResult {
  double tc = 0.0;
  double t0 = 0.0;     // derived-consistent ideal temperature
  double shift = 0.0;  // (tc - t0) / t0
  int evaluations = 0;
};

/// Self-consistent condensation temperature: the T at which the chemical
/// potential fixed by N reaches mu_c(T), i.e. total_number(critical_state(T)) = N.
/// ConvergenceError carries the bracket history.
CriticalTemperatureResult numeric_condensation_temperature(const GasParameters& params,
                                                           const SolverOptions& opts = {});

struct RelationResult {
  double general = 0.0;    // printed general relation
  double harmonic = 0.0;   // printed harmonic-trap form with the constant 5.2
  double ratio = 0.0;      // general / harmonic
};

/// T_sb expressed through T_r = T_c / T_0.  PoleError at T_r = 1,
/// DomainError for T_r > 1.
RelationResult tsb_tc_relation(const GasParameters& params, double t_ratio);

/// The constant that replaces 5.2 when the harmonic form is derived from
/// the general relation: 8 pi (2^7/8 (2pi)^-5/4 Theta)^2.
double harmonic_relation_constant();

struct TemperatureReport {
  FormulaMode mode = FormulaMode::derived_consistent;
  double t0 = 0.0;
  double tc = 0.0;          // t0 (1 + shift)
  double tc_numeric = 0.0;  // NaN when not computed
  double shift = 0.0;
  double t_sb = 0.0;
  double t_ratio = 0.0;
  double theta = 0.0;
  bool ordering_ok = false;
};

TemperatureReport temperature_report(const GasParameters& params, FormulaMode mode,
                                     bool with_numeric, const SolverOptions& opts = {});

}  // namespace bosecrit
