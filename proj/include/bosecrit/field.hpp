#pragma once

#include "bosecrit/units.hpp"

namespace bosecrit {

/// Evaluation point of the one-loop thermal potential of a self-interacting
/// real scalar field in a thermal bath, plus an external potential phi.
struct FieldPotentialInput {
  GasParameters params;
  double temperature = 0.0;   // K
  double external_phi = 0.0;  // dimensionless, alpha r^2 for the trap
  /// Keep the field-independent -(pi^2/90)(k_B T)^4 / (hbar^2 c^2) offset.
  bool include_T4 = false;
};

struct SymmetryReport {
  double t_sb = 0.0;
  double phi_min_plus = 0.0;
  double phi_min_minus = 0.0;
  bool broken = false;
};

/// V_T(Phi) = -(m^2c^2/2hbar^2) Phi^2 + (lambda/4hbar^2c^2) Phi^4
///            + (lambda/8hbar^2c^2)(k_B T)^2 Phi^2 - (m^2c^2/hbar^2) phi Phi^2
///            [- (pi^2/90hbar^2c^2)(k_B T)^4].
double potential_value(const FieldPotentialInput& input, double field);

/// Temperature at which Phi = 0 turns from a minimum into a maximum:
/// k_B T_sb = (2 m c^2 / sqrt(lambda)) (1 + 2 phi)^1/2.
/// Returns +infinity for the ideal gas (lambda = 0).
double symmetry_breaking_temperature(const GasParameters& params, double external_phi = 0.0);

/// The two degenerate minima +-(mc^2/sqrt(lambda)) (1 + 2phi - lambda (k_B T / 2mc^2)^2)^1/2,
/// collapsing to 0 once the radicand is no longer positive.
/// Throws DomainError for lambda = 0.
SymmetryReport minima(const GasParameters& params, double temperature, double external_phi = 0.0);

/// Relative mismatch between the two spellings of the thermal term of the
/// finite-temperature wave equation, lambda k_B^2 T^2 / (8 m c^2) and
/// (m c^2 / 2)(T / T_sb)^2.  Zero up to rounding.
double thermal_term_identity(const GasParameters& params, double temperature);

}  // namespace bosecrit
