#pragma once

#include "bosecrit/field.hpp"
#include "bosecrit/units.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>

namespace fixtures {

/// Rb-87 in an isotropic trap of frequency f (Hz) with a = ratio * a_ho.
inline bosecrit::GasParameters rb87_gas(double n, double a_over_aho, double f = 100.0,
                                        double kappa = 3e39) {
  using namespace bosecrit;
  const double omega = 2.0 * si::pi * f;
  const double aho = harmonic_length(si::rb87_mass, omega, PhysicalConstants::si());
  GasInput in;
  in.mass = si::rb87_mass;
  in.particle_number = n;
  in.omega0 = omega;
  in.kappa = kappa;
  in.scattering_length = a_over_aho * aho;
  return validate(in);
}

/// (1/Gamma(nu)) int_0^inf x^(nu-1) / (e^x / z - 1) dx.
inline double bose_integral(double nu, double z) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    return std::pow(x, nu - 1.0) * z / (std::exp(x) - z);
  };
  return integrator.integrate(f, 1e-15) / boost::math::tgamma(nu);
}

// Location of the positive minimum of V_T by Brent's method, refined by
// bisection on the sign of a central-difference slope.
inline double numeric_minimum(const bosecrit::FieldPotentialInput& in, double upper) {
  auto v = [&](double f) { return bosecrit::potential_value(in, f); };
  // Brent's stopping rule has an absolute floor, so search in units of `upper`.
  auto scaled = [&](double u) { return v(u * upper); };
  auto [u, fu] = boost::math::tools::brent_find_minima(scaled, 1e-6, 1.0, 52);
  (void)fu;
  const double x = u * upper;
  auto slope = [&](double f) {
    const double h = 1e-6 * f;
    return v(f + h) - v(f - h);
  };
  double lo = x * (1.0 - 1e-5);
  double hi = x * (1.0 + 1e-5);
  if (!(slope(lo) < 0.0 && slope(hi) > 0.0)) return x;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixtures
