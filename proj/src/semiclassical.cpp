#include "bosecrit/semiclassical.hpp"

#include "bosecrit/errors.hpp"
#include "bosecrit/field.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <queue>
#include <sstream>

namespace bosecrit {

namespace {

constexpr double kPi = si::pi;
constexpr double kFugacitySlack = 1e-12;

double fugacity_exponent(const GasParameters& p, const ThermalState& s, double density,
                         double radius, bool bath) {
  return s.beta * (s.chemical_potential - mean_field_energy(p, density) -
                   (bath ? bath_energy(p, s.temperature) : 0.0) - trap_energy(p, radius));
}

void require_closed_form_fugacity(const ThermalState& s) {
  if (s.fugacity > 1.0 + kFugacitySlack)
    throw DomainError("closed-form normalisation needs mu <= 0");
}

struct Panel {
  double a, b, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

struct Integral {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  bool converged = false;
};

// Global adaptive bisection over the fixed 31-point Kronrod rule.  The
// worst panel is split until the summed error estimate meets the target.
template <class F>
Integral adaptive_integral(F&& f, double a, double b, double tol, int max_depth) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto panel = [&](double lo, double hi, int depth) {
    double err = 0.0;
    const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
    return Panel{lo, hi, v, err * 0.5 * (hi - lo), depth};
  };
  std::priority_queue<Panel> queue;
  queue.push(panel(a, b, 0));
  double value = queue.top().value;
  double error = queue.top().error;
  double magnitude = std::abs(value);
  constexpr std::size_t kMaxPanels = 1u << 14;
  constexpr double kRoundingFloor = 64.0 * std::numeric_limits<double>::epsilon();
  while (error > tol * std::abs(value) && queue.size() < kMaxPanels) {
    const Panel worst = queue.top();
    if (worst.depth >= max_depth || error <= kRoundingFloor * magnitude) break;
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = panel(worst.a, mid, worst.depth + 1);
    const Panel right = panel(mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
    queue.push(left);
    queue.push(right);
  }
  Integral out;
  out.error = 0.0;
  out.value = 0.0;
  // Re-sum to drop the rounding of the running totals.
  for (; !queue.empty(); queue.pop()) {
    out.value += queue.top().value;
    out.error += queue.top().error;
    out.l1 += std::abs(queue.top().value);
  }
  out.converged = out.error <= tol * std::abs(out.value);
  return out;
}

}  // namespace

const char* to_string(FormulaMode mode) {
  return mode == FormulaMode::paper_verbatim ? "paper-verbatim" : "derived-consistent";
}

FormulaMode parse_formula_mode(const std::string& text) {
  if (text == "paper-verbatim") return FormulaMode::paper_verbatim;
  if (text == "derived-consistent") return FormulaMode::derived_consistent;
  throw DomainError("unknown formula mode '" + text + "'");
}

ThermalState make_state(const GasParameters& p, double temperature, double chemical_potential) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw NonPhysical("temperature must be positive");
  if (!std::isfinite(chemical_potential)) throw NonPhysical("chemical potential must be finite");
  ThermalState s;
  s.temperature = temperature;
  s.chemical_potential = chemical_potential;
  s.beta = 1.0 / p.thermal_energy(temperature);
  s.fugacity = std::exp(s.beta * chemical_potential);
  return s;
}

double bath_energy(const GasParameters& p, double temperature) {
  const double kT = p.thermal_energy(temperature);
  return p.lambda / (4.0 * p.rest_energy()) * kT * kT;
}

double mean_field_energy(const GasParameters& p, double density) {
  return p.density_coupling() / (2.0 * p.rest_energy()) * density;
}

double trap_energy(const GasParameters& p, double radius) {
  return p.rest_energy() * p.alpha * radius * radius;
}

double quantum_density(const GasParameters& p, double temperature) {
  const double hbar = p.constants.hbar;
  return std::pow(p.mass * p.thermal_energy(temperature) / (2.0 * kPi * hbar * hbar), 1.5);
}

double energy_spectrum(const GasParameters& p, double momentum, double density,
                       double temperature, double radius, bool include_rest_mass,
                       bool include_thermal_bath) {
  double e = momentum * momentum / (2.0 * p.mass) + mean_field_energy(p, density) +
             trap_energy(p, radius);
  if (include_thermal_bath) e += bath_energy(p, temperature);
  if (include_rest_mass) e += p.rest_energy();
  return e;
}

double local_fugacity(const GasParameters& p, const ThermalState& s, double density,
                      double radius, bool include_thermal_bath) {
  const double z = std::exp(fugacity_exponent(p, s, density, radius, include_thermal_bath));
  if (z > 1.0 + kFugacitySlack)
    throw DomainError("local fugacity exceeds 1: chemical potential above mu_c");
  return std::min(z, 1.0);
}

bool DensityProfile::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](std::uint8_t c) { return c != 0; });
}

DensityPoint solve_local_density(const GasParameters& p, const ThermalState& s, double radius,
                                 const SolverOptions& opts) {
  const double nq = quantum_density(p, s.temperature);
  const double x0 = fugacity_exponent(p, s, 0.0, radius, opts.include_thermal_bath);
  const double k = s.beta * mean_field_energy(p, 1.0);

  // Clamped at z = 1 so the map stays defined while iterates overshoot.
  auto map = [&](double n) {
    const double e = x0 - k * n;
    return nq * bose_function(1.5, e >= 0.0 ? 1.0 : std::exp(e), opts.series);
  };

  DensityPoint out;
  double lo = 0.0;
  double hi = map(0.0);
  double n = hi;
  double width = hi;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const double f = map(n);
    out.iterations = it;
    if (std::abs(f - n) <= opts.density_tol * std::max(n, f)) {
      out.density = f;
      out.converged = true;
      break;
    }
    (f > n ? lo : hi) = n;
    if (hi - lo <= opts.density_tol * hi) {
      out.density = 0.5 * (lo + hi);
      out.converged = true;
      break;
    }
    double next = n + opts.damping * (f - n);
    // Bisect when the damped step leaves the bracket or stalls.
    if (!(next > lo && next < hi) || (it % 3 == 0 && hi - lo > 0.5 * width)) next = 0.5 * (lo + hi);
    if (it % 3 == 0) width = hi - lo;
    n = next;
    out.density = n;
  }

  const double e = x0 - k * out.density;
  if (e > kFugacitySlack)
    throw DomainError("self-consistent density: chemical potential above mu_c");
  out.fugacity = std::min(1.0, std::exp(e));
  return out;
}

namespace {

DensityProfile fill_profile(const GasParameters& p, const ThermalState& s,
                            std::span<const double> radii, const SolverOptions& opts,
                            [[maybe_unused]] bool parallel) {
  const auto count = static_cast<std::int64_t>(radii.size());
  DensityProfile profile;
  profile.radii.assign(radii.begin(), radii.end());
  profile.density.resize(radii.size());
  profile.fugacity.resize(radii.size());
  profile.converged.resize(radii.size());

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const DensityPoint point = solve_local_density(p, s, radii[i], opts);
      profile.density[i] = point.density;
      profile.fugacity[i] = point.fugacity;
      profile.converged[i] = point.converged ? 1 : 0;
    } catch (...) {
#pragma omp critical(bosecrit_profile_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return profile;
}

}  // namespace

DensityProfile self_consistent_density(const GasParameters& p, const ThermalState& s,
                                       std::span<const double> radii, const SolverOptions& opts) {
  return fill_profile(p, s, radii, opts, true);
}

DensityProfile self_consistent_density_serial(const GasParameters& p, const ThermalState& s,
                                              std::span<const double> radii,
                                              const SolverOptions& opts) {
  return fill_profile(p, s, radii, opts, false);
}

DensityProfile require_converged(DensityProfile profile) {
  for (std::size_t i = 0; i < profile.converged.size(); ++i) {
    if (!profile.converged[i]) {
      std::ostringstream msg;
      msg << "self-consistent density did not converge at r = " << profile.radii[i] << " m";
      throw ConvergenceError(msg.str());
    }
  }
  return profile;
}

double ideal_density(const GasParameters& p, const ThermalState& s, double radius) {
  const double z = std::exp(s.beta * (s.chemical_potential - trap_energy(p, radius)));
  if (z > 1.0 + kFugacitySlack) throw DomainError("ideal density: fugacity above 1");
  return quantum_density(p, s.temperature) * bose_function(1.5, std::min(z, 1.0), SeriesAccuracy{1e-14, 10000});
}

double first_order_density(const GasParameters& p, const ThermalState& s, double radius,
                           FormulaMode mode, bool include_thermal_bath) {
  const double z0 = std::exp(s.beta * (s.chemical_potential - trap_energy(p, radius)));
  if (z0 > 1.0 - kDivergenceGuard)
    throw DomainError("first-order density: g_1/2 diverges at the trap centre");
  const SeriesAccuracy acc{1e-14, 10000};
  const double nq = quantum_density(p, s.temperature);
  const double g32 = bose_function(1.5, z0, acc);
  const double n0 = nq * g32;
  if (p.lambda == 0.0 || z0 == 0.0) return n0;
  const double g12 = bose_function(0.5, z0, acc);

  if (mode == FormulaMode::derived_consistent) {
    const double shift = mean_field_energy(p, n0) +
                         (include_thermal_bath ? bath_energy(p, s.temperature) : 0.0);
    return n0 - s.beta * shift * nq * g12;
  }

  const PhysicalConstants& k = p.constants;
  const double kT = p.thermal_energy(s.temperature);
  const double lambda_over_kappa2 = p.density_coupling();
  const double m_over = p.mass / (kPi * k.hbar * k.hbar);
  const double first = kT * kT / (4.0 * k.c * k.c) * lambda_over_kappa2 / p.lambda *
                       m_over * m_over * m_over * g32;
  const double h6 = std::pow(k.hbar, 6);
  const double second =
      include_thermal_bath
          ? std::sqrt(std::pow(kT, 5) * p.mass / (32.0 * kPi * kPi * kPi * h6 * std::pow(k.c, 4))) *
                g32 / g12
          : 0.0;
  return n0 - p.lambda * g12 * (first - second);
}

double radial_cutoff(const GasParameters& p, const ThermalState& s) {
  // x e^-x falls to 1e-16 of its peak value e^-1 where x - ln x = 1 + 16 ln 10.
  const double target = 1.0 + 16.0 * std::log(10.0);
  double x = target;
  for (int i = 0; i < 50; ++i) x = target + std::log(x);
  return std::sqrt(x * p.thermal_energy(s.temperature) / (p.rest_energy() * p.alpha));
}

double total_number(const GasParameters& p, const ThermalState& s, NumberMode mode,
                    const SolverOptions& opts, double cutoff_scale) {
  const PhysicalConstants& k = p.constants;
  const double kT = p.thermal_energy(s.temperature);

  if (mode == NumberMode::numeric) {
    const double R = cutoff_scale * radial_cutoff(p, s);
    auto integrand = [&](double r) {
      const DensityPoint point = solve_local_density(p, s, r, opts);
      if (!point.converged)
        throw ConvergenceError("self-consistent density did not converge inside the quadrature");
      return 4.0 * kPi * r * r * point.density;
    };
    const Integral n = adaptive_integral(integrand, 0.0, R, opts.quadrature_tol, opts.quadrature_depth);
    if (!n.converged) {
      std::ostringstream msg;
      msg << "radial quadrature: error estimate " << n.error << " above tolerance for N = " << n.value;
      throw QuadratureError(msg.str());
    }
    return n.value;
  }

  require_closed_form_fugacity(s);
  const double z = std::min(s.fugacity, 1.0);
  const SeriesAccuracy acc{1e-13, 10000};
  const double g3 = bose_function(3.0, z, acc);
  const double ratio = kT / (k.hbar * k.c);
  const double cube = ratio * ratio * ratio;
  if (p.lambda == 0.0) {
    const double prefactor = mode == NumberMode::paper_verbatim
                                 ? 1.0 / std::sqrt(2.0 * p.alpha * p.alpha * p.alpha)
                                 : std::pow(2.0 * p.alpha, -1.5);
    return prefactor * cube * g3;
  }

  const double g2 = opts.include_thermal_bath ? bose_function(2.0, z, acc) : 0.0;
  const double G = g_double_sum(z, acc);
  const double c5 = std::pow(k.c, 5);
  const double h3 = k.hbar * k.hbar * k.hbar;
  const double two_alpha_32 = std::pow(2.0 * p.alpha, 1.5);
  if (mode == NumberMode::paper_verbatim) {
    const double mean =
        p.density_coupling() / (8.0 * h3 * h3 * c5) * std::pow(p.mass / (kPi * p.alpha), 1.5) * G *
        std::pow(kT, 3.5);
    const double bath = g2 * std::pow(kT, 4) / (two_alpha_32 * p.mass * h3 * c5);
    return cube * g3 / std::sqrt(2.0 * p.alpha * p.alpha * p.alpha) - p.lambda * (mean - bath);
  }
  const double mean = p.density_coupling() * std::sqrt(p.mass) * std::pow(kT, 3.5) * G /
                      (16.0 * std::pow(kPi, 1.5) * h3 * h3 * c5 * std::pow(p.alpha, 1.5));
  const double bath = p.lambda * std::pow(kT, 4) * g2 / (4.0 * two_alpha_32 * p.mass * h3 * c5);
  return cube * g3 / two_alpha_32 - mean - bath;
}

double critical_chemical_potential(const GasParameters& p, double temperature,
                                   double central_density, bool include_thermal_bath) {
  if (!(central_density >= 0.0)) throw DomainError("central density must be non-negative");
  return mean_field_energy(p, central_density) +
         (include_thermal_bath ? bath_energy(p, temperature) : 0.0);
}

ThermalState critical_state(const GasParameters& p, double temperature, const SolverOptions& opts) {
  const double centre = quantum_density(p, temperature) * zeta(1.5);
  return make_state(p, temperature,
                    critical_chemical_potential(p, temperature, centre, opts.include_thermal_bath));
}

namespace {

struct RootHistory {
  std::vector<std::pair<double, double>> brackets;

  std::string describe() const {
    std::ostringstream out;
    out.precision(12);
    for (auto [a, b] : brackets) out << " [" << a << ", " << b << "]";
    return out.str();
  }
};

}  // namespace

ChemicalPotentialResult chemical_potential(const GasParameters& p, double temperature,
                                           const SolverOptions& opts) {
  ChemicalPotentialResult out;
  const ThermalState crit = critical_state(p, temperature, opts);
  out.critical = crit.chemical_potential;
  const double n_crit = total_number(p, crit, NumberMode::numeric, opts);
  const double target = p.particle_number;
  if (n_crit <= target) {
    out.chemical_potential = out.critical;
    out.saturated = true;
    out.thermal_number = n_crit;
    return out;
  }

  const double kT = p.thermal_energy(temperature);
  auto excess = [&](double mu) {
    return total_number(p, make_state(p, temperature, mu), NumberMode::numeric, opts) - target;
  };
  RootHistory history;
  double step = kT;
  double lo = out.critical - step;
  double f_lo = excess(lo);
  for (int i = 0; f_lo > 0.0; ++i) {
    history.brackets.emplace_back(lo, out.critical);
    if (i == 60) throw ConvergenceError("chemical potential: no lower bracket;" + history.describe());
    step *= 2.0;
    lo = out.critical - step;
    f_lo = excess(lo);
  }
  std::uintmax_t max_iter = 200;
  const double abs_tol = 1e-13 * kT;
  auto [a, b] = boost::math::tools::toms748_solve(
      excess, lo, out.critical, f_lo, n_crit - target,
      [abs_tol](double x, double y) { return std::abs(x - y) <= abs_tol; }, max_iter);
  if (max_iter >= 200)
    throw ConvergenceError("chemical potential: root solve exhausted iterations");
  out.chemical_potential = 0.5 * (a + b);
  out.thermal_number = target;
  return out;
}

double ideal_condensation_temperature(const GasParameters& p, FormulaMode mode) {
  const PhysicalConstants& k = p.constants;
  const double n = p.particle_number;
  if (mode == FormulaMode::paper_verbatim) {
    const double root = std::sqrt(2.0 * p.alpha * p.alpha * p.alpha);
    return std::cbrt(n * root / zeta(3.0)) * k.hbar * k.c / k.kB;
  }
  return k.hbar * p.omega0 * std::cbrt(n / zeta(3.0)) / k.kB;
}

namespace {

ThetaValue compute_theta(FormulaMode mode) {
  const DoubleSumResult g = g_double_sum_detail(1.0, SeriesAccuracy{1e-13, 10000});
  ThetaValue t;
  t.g32_at_one = g.value;
  t.truncation_radius = g.radius;
  t.tail_estimate = g.tail_estimate;
  const double z3 = zeta(3.0);
  const double z2 = zeta(2.0);
  if (mode == FormulaMode::paper_verbatim) {
    t.value = (z3 * z2 - g.value) / (3.0 * std::pow(2.0 * kPi, 1.25) * z3) *
              std::pow(4.0 / (kPi * kPi * kPi * z3), 1.0 / 6.0);
  } else {
    t.value = (zeta(1.5) * z2 - g.value) /
              (3.0 * std::pow(2.0, 2.25) * std::pow(kPi, 1.5) * std::pow(z3, 7.0 / 6.0));
  }
  return t;
}

}  // namespace

const ThetaValue& theta_constant(FormulaMode mode) {
  static const ThetaValue paper = compute_theta(FormulaMode::paper_verbatim);
  static const ThetaValue derived = compute_theta(FormulaMode::derived_consistent);
  return mode == FormulaMode::paper_verbatim ? paper : derived;
}

double condensation_shift(const GasParameters& p, FormulaMode mode) {
  if (p.lambda == 0.0) return 0.0;
  const PhysicalConstants& k = p.constants;
  return -p.density_coupling() * std::pow(p.alpha, 0.25) * std::sqrt(p.mass) /
         (std::pow(k.c, 1.5) * std::pow(k.hbar, 2.5)) * theta_constant(mode).value *
         std::pow(p.particle_number, 1.0 / 6.0);
}

CriticalTemperatureResult numeric_condensation_temperature(const GasParameters& p,
                                                           const SolverOptions& opts) {
  CriticalTemperatureResult out;
  out.t0 = ideal_condensation_temperature(p, FormulaMode::derived_consistent);
  const double target = p.particle_number;
  auto excess = [&](double t) {
    ++out.evaluations;
    return total_number(p, critical_state(p, t, opts), NumberMode::numeric, opts) / target - 1.0;
  };

  RootHistory history;
  double lo = 0.9 * out.t0;
  double hi = 1.1 * out.t0;
  double f_lo = excess(lo);
  double f_hi = excess(hi);
  for (int i = 0; f_lo > 0.0; ++i) {
    history.brackets.emplace_back(lo, hi);
    if (i == 40) throw ConvergenceError("critical temperature: no lower bracket;" + history.describe());
    lo *= 0.8;
    f_lo = excess(lo);
  }
  for (int i = 0; f_hi < 0.0; ++i) {
    history.brackets.emplace_back(lo, hi);
    if (i == 40) throw ConvergenceError("critical temperature: no upper bracket;" + history.describe());
    hi *= 1.25;
    f_hi = excess(hi);
  }
  history.brackets.emplace_back(lo, hi);

  const std::uintmax_t limit = 100;
  std::uintmax_t max_iter = limit;
  const double tol = opts.temperature_tol;
  auto [a, b] = boost::math::tools::toms748_solve(
      excess, lo, hi, f_lo, f_hi,
      [tol](double x, double y) { return std::abs(x - y) <= tol * std::min(x, y); }, max_iter);
  history.brackets.emplace_back(a, b);
  if (max_iter >= limit)
    throw ConvergenceError("critical temperature: root solve exhausted iterations;" +
                           history.describe());
  out.tc = 0.5 * (a + b);
  out.shift = (out.tc - out.t0) / out.t0;
  return out;
}

double harmonic_relation_constant() {
  const double x = std::pow(2.0, 0.875) * std::pow(2.0 * kPi, -1.25) *
                   theta_constant(FormulaMode::paper_verbatim).value;
  return 8.0 * kPi * x * x;
}

RelationResult tsb_tc_relation(const GasParameters& p, double t_ratio) {
  if (t_ratio == 1.0) throw PoleError("T_sb relation: pole at T_r = 1");
  if (!(t_ratio < 1.0)) throw DomainError("T_sb relation: requires T_r < 1");
  if (!(p.kappa > 0.0)) throw DomainError("T_sb relation: requires kappa > 0");
  const PhysicalConstants& k = p.constants;
  const double pole = 1.0 / (1.0 - t_ratio);
  const double n12 = std::pow(p.particle_number, 1.0 / 12.0);
  const double theta = theta_constant(FormulaMode::paper_verbatim).value;

  RelationResult r;
  r.general = pole / p.kappa * std::pow(p.alpha, 0.125) / k.kB *
              std::pow(p.mass * k.c / (2.0 * kPi * k.hbar), 1.25) * 2.0 * theta * n12;
  r.harmonic = pole * p.mass * k.c / (p.kappa * k.hbar * k.kB) *
               std::sqrt(5.2 / (8.0 * kPi * harmonic_length(p))) * n12;
  r.ratio = r.general / r.harmonic;
  return r;
}

TemperatureReport temperature_report(const GasParameters& p, FormulaMode mode, bool with_numeric,
                                     const SolverOptions& opts) {
  TemperatureReport r;
  r.mode = mode;
  r.t0 = ideal_condensation_temperature(p, mode);
  r.shift = condensation_shift(p, mode);
  r.tc = r.t0 * (1.0 + r.shift);
  r.t_sb = symmetry_breaking_temperature(p);
  r.t_ratio = r.tc / r.t0;
  r.theta = theta_constant(mode).value;
  r.tc_numeric = std::numeric_limits<double>::quiet_NaN();
  r.ordering_ok = r.t_sb > r.t0 && r.t0 > r.tc;
  if (with_numeric) {
    const CriticalTemperatureResult numeric = numeric_condensation_temperature(p, opts);
    r.tc_numeric = numeric.tc;
    r.ordering_ok = r.ordering_ok && r.t_sb > numeric.t0 && numeric.t0 > numeric.tc;
  }
  return r;
}

}  // namespace bosecrit
