#include "bosecrit/scale.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace bosecrit {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

double healing_length_from_mu(double mass, double mu, const PhysicalConstants& k) {
  require_positive(mass, "mass");
  if (!(mu > 0.0)) throw DomainError("healing length needs a positive chemical potential");
  return k.hbar / std::sqrt(2.0 * mass * mu);
}

double healing_length_from_mu(const GasParameters& params, double mu) {
  return healing_length_from_mu(params.mass, mu, params.constants);
}

double mu_from_healing_length(double mass, double xi, const PhysicalConstants& k) {
  require_positive(mass, "mass");
  require_positive(xi, "healing length");
  return k.hbar * k.hbar / (2.0 * mass * xi * xi);
}

double kappa_critical_density(const HealingInput& in) {
  require_positive(in.healing_length, "healing length");
  require_positive(in.scattering_length, "scattering length");
  return 1.0 / (in.healing_length * in.healing_length * 16.0 * si::pi * in.scattering_length);
}

KappaResult kappa_from_healing(const HealingInput& in) {
  require_positive(in.central_density, "central density");
  require_positive(in.tc, "condensation temperature");
  require_positive(in.mass, "mass");
  const double n_star = kappa_critical_density(in);
  const double xi_inv2 = 1.0 / (in.healing_length * in.healing_length);
  const double a = in.scattering_length;
  double radicand_top = xi_inv2 - 16.0 * si::pi * a * in.central_density;
  // n = n* to rounding is the boundary, where kappa vanishes.
  if (std::abs(radicand_top) <= 1e-12 * xi_inv2) radicand_top = 0.0;
  if (radicand_top < 0.0) {
    std::ostringstream msg;
    msg << "kappa radicand negative: n = " << in.central_density << " m^-3 exceeds n* = " << n_star
        << " m^-3";
    throw NegativeRadicand(n_star, msg.str());
  }
  const double kTc = in.constants.kB * in.tc;
  KappaResult r;
  r.critical_density = n_star;
  r.kappa = std::sqrt(radicand_top / (8.0 * si::pi * a * kTc * kTc));
  // mu = lambda (kappa^-2 n + (k_B T_c)^2 / 2) / (2 m c^2) with lambda = 16 pi hbar^2 c^2 kappa^2 a.
  const double hbar = in.constants.hbar;
  r.mu = 8.0 * si::pi * hbar * hbar * a *
         (in.central_density + r.kappa * r.kappa * kTc * kTc / 2.0) / in.mass;
  return r;
}

std::vector<KappaRow> kappa_sweep(HealingInput input, double n_lo, double n_hi, int points) {
  require_positive(n_lo, "sweep lower density");
  require_positive(n_hi, "sweep upper density");
  if (points < 1 || (points == 1 && n_lo != n_hi))
    throw DomainError("kappa sweep needs at least two points for a range");
  std::vector<KappaRow> rows(static_cast<std::size_t>(points));
  const double step = points > 1 ? std::log(n_hi / n_lo) / (points - 1) : 0.0;
#pragma omp parallel for
  for (std::int64_t i = 0; i < points; ++i) {
    HealingInput at = input;
    at.central_density = i + 1 == points ? n_hi : n_lo * std::exp(step * static_cast<double>(i));
    KappaRow& row = rows[static_cast<std::size_t>(i)];
    row.density = at.central_density;
    const double top = 1.0 / (at.healing_length * at.healing_length) -
                       16.0 * si::pi * at.scattering_length * at.central_density;
    if (top > 0.0) {
      const KappaResult r = kappa_from_healing(at);
      row.kappa = r.kappa;
      row.mu = r.mu;
      row.radicand_positive = true;
    } else {
      row.kappa = std::numeric_limits<double>::quiet_NaN();
      row.mu = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return rows;
}

HealingInput rb87_paper_scenario() {
  HealingInput in;
  in.healing_length = 0.4 * si::micrometre;
  in.scattering_length = 5.77 * si::nanometre;
  in.central_density = 1e19;
  in.tc = 200.0 * si::nanokelvin;
  in.mass = si::rb87_mass;
  return in;
}

}  // namespace bosecrit
