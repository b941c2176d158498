#include "bosecrit/units.hpp"

#include "bosecrit/errors.hpp"

#include <cmath>
#include <string>

namespace bosecrit {

namespace {

bool close(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 || std::abs(a - b) <= kConsistencyTolerance * scale;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw NonPhysical(std::string(what) + " must be positive and finite");
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw NonPhysical(std::string(what) + " must be non-negative and finite");
}

double coupling_unit(const PhysicalConstants& k) {
  return 16.0 * si::pi * k.hbar * k.hbar * k.c * k.c;
}

}  // namespace

double GasParameters::density_coupling() const {
  if (lambda == 0.0) return 0.0;
  return coupling_unit(constants) * scattering_length;
}

double coupling_from_scale(double kappa, double scattering_length, const PhysicalConstants& k) {
  return coupling_unit(k) * kappa * kappa * scattering_length;
}

double trap_stiffness(double omega0, const PhysicalConstants& k) {
  const double w = omega0 / k.c;
  return 0.5 * w * w;
}

GasParameters validate(const GasInput& in) {
  const PhysicalConstants& k = in.constants;
  require_positive(k.c, "speed of light");
  require_positive(k.hbar, "hbar");
  require_positive(k.kB, "Boltzmann constant");
  require_positive(in.mass, "particle mass");
  if (!(in.particle_number >= 1.0) || !std::isfinite(in.particle_number))
    throw NonPhysical("particle number must be at least 1");

  GasParameters out;
  out.mass = in.mass;
  out.particle_number = in.particle_number;
  out.constants = k;

  // Trap: alpha <-> omega0.
  if (in.alpha) require_positive(*in.alpha, "trap stiffness alpha");
  if (in.omega0) require_positive(*in.omega0, "trap frequency omega0");
  if (in.alpha && in.omega0) {
    if (!close(*in.alpha, trap_stiffness(*in.omega0, k)))
      throw InconsistentParameters("alpha and omega0 disagree: alpha != (omega0/c)^2 / 2");
    out.alpha = *in.alpha;
    out.omega0 = *in.omega0;
  } else if (in.omega0) {
    out.omega0 = *in.omega0;
    out.alpha = trap_stiffness(out.omega0, k);
  } else if (in.alpha) {
    out.alpha = *in.alpha;
    out.omega0 = k.c * std::sqrt(2.0 * out.alpha);
  } else {
    throw InconsistentParameters("trap underdetermined: supply alpha or omega0");
  }

  // Coupling: lambda <-> (kappa, a).
  if (in.lambda) require_non_negative(*in.lambda, "coupling lambda");
  if (in.kappa) require_non_negative(*in.kappa, "scale kappa");
  if (in.scattering_length) require_non_negative(*in.scattering_length, "scattering length");

  const double unit = coupling_unit(k);
  if (in.kappa && in.scattering_length) {
    const double implied = coupling_from_scale(*in.kappa, *in.scattering_length, k);
    if (in.lambda && !close(*in.lambda, implied))
      throw InconsistentParameters("lambda disagrees with 16 pi hbar^2 c^2 kappa^2 a");
    out.kappa = *in.kappa;
    out.scattering_length = *in.scattering_length;
    out.lambda = in.lambda ? *in.lambda : implied;
  } else if (in.lambda && in.kappa) {
    out.lambda = *in.lambda;
    out.kappa = *in.kappa;
    if (out.kappa == 0.0 && out.lambda > 0.0)
      throw NonPhysical("kappa = 0 is incompatible with lambda > 0");
    out.scattering_length = out.kappa == 0.0 ? 0.0 : out.lambda / (unit * out.kappa * out.kappa);
  } else if (in.lambda && in.scattering_length) {
    out.lambda = *in.lambda;
    out.scattering_length = *in.scattering_length;
    if (out.scattering_length == 0.0) {
      if (out.lambda > 0.0)
        throw NonPhysical("a = 0 is incompatible with lambda > 0");
      out.kappa = 1.0;
    } else {
      out.kappa = std::sqrt(out.lambda / (unit * out.scattering_length));
    }
  } else if (in.lambda) {
    // Only the product lambda kappa^-2 is observable here; fix the unit scale.
    out.lambda = *in.lambda;
    out.kappa = 1.0;
    out.scattering_length = out.lambda / unit;
  } else {
    throw InconsistentParameters("coupling underdetermined: supply lambda or both kappa and a");
  }
  return out;
}

double harmonic_length(double mass, double omega0, const PhysicalConstants& k) {
  require_positive(mass, "particle mass");
  require_positive(omega0, "trap frequency omega0");
  return std::sqrt(k.hbar / (mass * omega0));
}

double harmonic_length(const GasParameters& params) {
  return harmonic_length(params.mass, params.omega0, params.constants);
}

}  // namespace bosecrit
