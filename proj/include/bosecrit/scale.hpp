#pragma once

#include "bosecrit/errors.hpp"
#include "bosecrit/units.hpp"

#include <vector>

namespace bosecrit {

struct HealingInput {
  double healing_length = 0.0;     // xi, m
  double scattering_length = 0.0;  // a, m
  double central_density = 0.0;    // n, m^-3
  double tc = 0.0;                 // K
  double mass = si::rb87_mass;     // kg, only enters the implied chemical potential
  PhysicalConstants constants{};
};

/// Raised when xi^-2 <= 16 pi a n; carries the density n* = xi^-2 / (16 pi a)
/// at which the radicand vanishes.
class NegativeRadicand : public DomainError {
public:
  NegativeRadicand(double critical_density, const std::string& what)
      : DomainError(what), critical_density_(critical_density) {}
  double critical_density() const noexcept { return critical_density_; }

private:
  double critical_density_;
};

/// xi = hbar / sqrt(2 m mu).
double healing_length_from_mu(const GasParameters& params, double mu);
double healing_length_from_mu(double mass, double mu, const PhysicalConstants& k);

/// Inverse of the above, mu = hbar^2 / (2 m xi^2).
double mu_from_healing_length(double mass, double xi, const PhysicalConstants& k);

struct KappaResult {
  double kappa = 0.0;             // J^-1 m^-3/2
  double mu = 0.0;                // J, critical mu implied by the healing-length relation
  double critical_density = 0.0;  // n*, m^-3
};

/// kappa = sqrt((xi^-2 - 16 pi a n) / (8 pi a (k_B T_c)^2)).
KappaResult kappa_from_healing(const HealingInput& input);

/// Density at which the kappa radicand vanishes.
double kappa_critical_density(const HealingInput& input);

struct KappaRow {
  double density = 0.0;
  double kappa = 0.0;  // NaN when the radicand is not positive
  double mu = 0.0;
  bool radicand_positive = false;
};

/// kappa(n) on `points` logarithmically spaced densities in [n_lo, n_hi].
/// Rows past n* are kept and flagged.
std::vector<KappaRow> kappa_sweep(HealingInput input, double n_lo, double n_hi, int points);

/// 87Rb estimate: xi = 0.4 um, a = 5.77 nm, n = 1e19 m^-3, T_c = 200 nK.
/// The scattering length is read as nanometres; centimetres give a
/// negative radicand.
HealingInput rb87_paper_scenario();

/// Quoted order of magnitude for the Rb-87 scale, J^-1 m^-3/2.
inline constexpr double kRb87QuotedKappa = 3e39;

}  // namespace bosecrit
