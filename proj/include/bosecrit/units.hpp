#pragma once

#include <optional>

namespace bosecrit {

/// Fundamental constants used by every formula.  SI by default; the
/// natural-unit set (c = hbar = k_B = 1) exists for rescaling checks.
struct PhysicalConstants {
  double c = 299792458.0;             // m/s
  double hbar = 1.054571817e-34;      // J s
  double kB = 1.380649e-23;           // J/K

  static constexpr PhysicalConstants si() { return {}; }
  static constexpr PhysicalConstants natural() { return {1.0, 1.0, 1.0}; }
};

namespace si {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double nanometre = 1e-9;
inline constexpr double micrometre = 1e-6;
inline constexpr double nanokelvin = 1e-9;
inline constexpr double rb87_mass = 1.443e-25;  // kg
}  // namespace si

/// Raw, possibly redundant description of the gas.  Either the coupling
/// lambda or the pair (kappa, scattering length) must be given, and either
/// the trap stiffness alpha or the angular frequency omega0.
struct GasInput {
  double mass = 0.0;
  double particle_number = 1.0;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::optional<double> scattering_length;
  std::optional<double> alpha;
  std::optional<double> omega0;
  PhysicalConstants constants{};
};

/// Validated gas description with every member populated and mutually
/// consistent:
///   lambda = 16 pi hbar^2 c^2 kappa^2 a,   alpha = (omega0 / c)^2 / 2.
struct GasParameters {
  double mass = 0.0;               // kg
  double lambda = 0.0;             // dimensionless
  double kappa = 0.0;              // J^-1 m^-3/2
  double scattering_length = 0.0;  // m
  double alpha = 0.0;              // m^-2
  double omega0 = 0.0;             // rad/s
  double particle_number = 1.0;
  PhysicalConstants constants{};

  /// lambda / kappa^2, the coefficient multiplying n(r) in the mean-field
  /// energy.  Expressed through the scattering length so that it stays
  /// finite (and kappa independent) for any kappa > 0.
  double density_coupling() const;

  double rest_energy() const { return mass * constants.c * constants.c; }
  double thermal_energy(double temperature) const { return constants.kB * temperature; }
  bool ideal() const { return lambda == 0.0; }
};

/// Relative tolerance for the two redundancy constraints.
inline constexpr double kConsistencyTolerance = 1e-12;

/// Fills the missing members of `input` and checks the supplied ones.
/// Throws NonPhysical for positivity violations and InconsistentParameters
/// when a redundant pair disagrees or the coupling is underdetermined.
GasParameters validate(const GasInput& input);

/// lambda implied by (kappa, a).
double coupling_from_scale(double kappa, double scattering_length, const PhysicalConstants& k);

/// alpha implied by omega0.
double trap_stiffness(double omega0, const PhysicalConstants& k);

/// Characteristic oscillator length (hbar / (m omega0))^1/2.
double harmonic_length(const GasParameters& params);
double harmonic_length(double mass, double omega0, const PhysicalConstants& k);

}  // namespace bosecrit
