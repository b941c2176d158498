#include "bosecrit/field.hpp"

#include "bosecrit/errors.hpp"

#include <cmath>
#include <limits>

namespace bosecrit {

double potential_value(const FieldPotentialInput& in, double field) {
  const GasParameters& p = in.params;
  const PhysicalConstants& k = p.constants;
  const double hc2 = k.hbar * k.hbar * k.c * k.c;
  const double mass_term = p.mass * p.mass * k.c * k.c / (k.hbar * k.hbar);
  const double kT = k.kB * in.temperature;
  const double f2 = field * field;

  double v = -0.5 * mass_term * f2 + p.lambda / (4.0 * hc2) * f2 * f2 +
             p.lambda / (8.0 * hc2) * kT * kT * f2 - mass_term * in.external_phi * f2;
  if (in.include_T4) {
    const double pi2 = si::pi * si::pi;
    v -= pi2 / (90.0 * hc2) * kT * kT * kT * kT;
  }
  return v;
}

double symmetry_breaking_temperature(const GasParameters& p, double external_phi) {
  if (!(1.0 + 2.0 * external_phi > 0.0))
    throw DomainError("symmetry_breaking_temperature: 1 + 2 phi must be positive");
  if (p.lambda == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * p.rest_energy() / std::sqrt(p.lambda) * std::sqrt(1.0 + 2.0 * external_phi) /
         p.constants.kB;
}

SymmetryReport minima(const GasParameters& p, double temperature, double external_phi) {
  if (!(p.lambda > 0.0)) throw DomainError("minima: requires lambda > 0");
  SymmetryReport r;
  r.t_sb = symmetry_breaking_temperature(p, external_phi);
  const double x = p.thermal_energy(temperature) / (2.0 * p.rest_energy());
  const double radicand = 1.0 + 2.0 * external_phi - p.lambda * x * x;
  r.broken = radicand > 0.0;
  if (r.broken) {
    r.phi_min_plus = p.rest_energy() / std::sqrt(p.lambda) * std::sqrt(radicand);
    r.phi_min_minus = -r.phi_min_plus;
  }
  return r;
}

double thermal_term_identity(const GasParameters& p, double temperature) {
  if (!(p.lambda > 0.0)) throw DomainError("thermal_term_identity: requires lambda > 0");
  const double kT = p.thermal_energy(temperature);
  const double bath = p.lambda * kT * kT / (8.0 * p.rest_energy());
  const double ratio = temperature / symmetry_breaking_temperature(p);
  const double scaled = 0.5 * p.rest_energy() * ratio * ratio;
  const double scale = std::max(std::abs(bath), std::abs(scaled));
  return scale == 0.0 ? 0.0 : std::abs(bath - scaled) / scale;
}

}  // namespace bosecrit
