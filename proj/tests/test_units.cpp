#include "bosecrit/errors.hpp"
#include "bosecrit/field.hpp"
#include "bosecrit/semiclassical.hpp"
#include "bosecrit/units.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace bosecrit;
using fixtures::rel;

namespace {

GasInput base_input() {
  GasInput in;
  in.mass = si::rb87_mass;
  in.particle_number = 1e5;
  in.omega0 = 2.0 * si::pi * 100.0;
  return in;
}

}  // namespace

TEST_CASE("zero kappa gives the ideal gas") {
  GasInput in = base_input();
  in.kappa = 0.0;
  in.scattering_length = 1e-9;
  const GasParameters p = validate(in);
  CHECK(p.lambda == 0.0);
  CHECK(p.ideal());
  CHECK(p.density_coupling() == 0.0);
}

TEST_CASE("alpha from omega0 in natural units") {
  GasInput in;
  in.mass = 1.0;
  in.omega0 = 1.0;
  in.lambda = 0.1;
  in.constants = PhysicalConstants::natural();
  const GasParameters p = validate(in);
  CHECK(p.alpha == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("lambda from kappa and a round-trips") {
  GasInput in = base_input();
  in.kappa = 3e39;
  in.scattering_length = 5.77e-9;
  const GasParameters p = validate(in);
  const PhysicalConstants k = PhysicalConstants::si();
  const double lambda = 16.0 * si::pi * k.hbar * k.hbar * k.c * k.c * 9e78 * 5.77e-9;
  CHECK(rel(p.lambda, lambda) < 1e-14);

  GasInput back = base_input();
  back.lambda = p.lambda;
  back.scattering_length = p.scattering_length;
  CHECK(rel(validate(back).kappa, 3e39) < 1e-12);

  GasInput via_kappa = base_input();
  via_kappa.lambda = p.lambda;
  via_kappa.kappa = p.kappa;
  CHECK(rel(validate(via_kappa).scattering_length, 5.77e-9) < 1e-12);
}

TEST_CASE("round trips on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PhysicalConstants k = PhysicalConstants::si();
  for (int i = 0; i < 200; ++i) {
    const double kappa = std::pow(10.0, 30.0 + 15.0 * u(rng));
    const double a = std::pow(10.0, -12.0 + 6.0 * u(rng));
    const double omega = std::pow(10.0, 6.0 * u(rng));
    const double lambda = coupling_from_scale(kappa, a, k);
    GasInput in = base_input();
    in.lambda = lambda;
    in.scattering_length = a;
    in.alpha = trap_stiffness(omega, k);
    in.omega0.reset();
    const GasParameters p = validate(in);
    CHECK(rel(p.kappa, kappa) < 1e-12);
    CHECK(rel(p.omega0, omega) < 1e-12);
  }
}

TEST_CASE("redundant pairs must agree") {
  GasInput in = base_input();
  in.kappa = 3e39;
  in.scattering_length = 5.77e-9;
  in.lambda = 1.0;
  CHECK_THROWS_AS(validate(in), InconsistentParameters);

  GasInput trap = base_input();
  trap.lambda = 1.0;
  trap.alpha = 2.0 * trap_stiffness(*trap.omega0, PhysicalConstants::si());
  CHECK_THROWS_AS(validate(trap), InconsistentParameters);

  GasInput agree = base_input();
  agree.lambda = 1.0;
  agree.alpha = trap_stiffness(*agree.omega0, PhysicalConstants::si()) * (1.0 + 1e-14);
  CHECK_NOTHROW(validate(agree));
}

TEST_CASE("underdetermined and non-physical inputs") {
  GasInput no_coupling = base_input();
  CHECK_THROWS_AS(validate(no_coupling), InconsistentParameters);

  GasInput no_trap = base_input();
  no_trap.omega0.reset();
  no_trap.lambda = 1.0;
  CHECK_THROWS_AS(validate(no_trap), InconsistentParameters);

  GasInput kappa_only = base_input();
  kappa_only.kappa = 3e39;
  CHECK_THROWS_AS(validate(kappa_only), InconsistentParameters);

  GasInput bad_mass = base_input();
  bad_mass.lambda = 1.0;
  bad_mass.mass = 0.0;
  CHECK_THROWS_AS(validate(bad_mass), NonPhysical);

  GasInput few = base_input();
  few.lambda = 1.0;
  few.particle_number = 0.5;
  CHECK_THROWS_AS(validate(few), NonPhysical);

  GasInput negative = base_input();
  negative.lambda = -1.0;
  CHECK_THROWS_AS(validate(negative), NonPhysical);

  GasInput zero_a = base_input();
  zero_a.lambda = 1.0;
  zero_a.scattering_length = 0.0;
  CHECK_THROWS_AS(validate(zero_a), NonPhysical);
}

TEST_CASE("harmonic length") {
  const PhysicalConstants nat = PhysicalConstants::natural();
  CHECK(harmonic_length(1.0, 1.0, nat) == doctest::Approx(1.0));
  CHECK(harmonic_length(4.0, 1.0, nat) == doctest::Approx(0.5));
  const double rb = harmonic_length(si::rb87_mass, 2.0 * si::pi * 100.0, PhysicalConstants::si());
  CHECK(rb == doctest::Approx(1.078e-6).epsilon(2e-3));
  CHECK_THROWS_AS(harmonic_length(0.0, 1.0, nat), NonPhysical);
  CHECK_THROWS_AS(harmonic_length(1.0, -1.0, nat), NonPhysical);
}

TEST_CASE("SI and natural units differ by dimensional rescaling") {
  // In natural units the same physics is expressed with m -> mc^2 (J),
  // omega0 -> hbar omega0 (J); temperatures come out as k_B T (J).
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PhysicalConstants k = PhysicalConstants::si();
  for (int i = 0; i < 3; ++i) {
    const double mass = si::rb87_mass * (0.5 + u(rng));
    const double omega = 2.0 * si::pi * (50.0 + 200.0 * u(rng));
    const double lambda = std::pow(10.0, 10.0 + 15.0 * u(rng));
    const double n = std::pow(10.0, 4.0 + 3.0 * u(rng));

    GasInput s;
    s.mass = mass;
    s.omega0 = omega;
    s.lambda = lambda;
    s.particle_number = n;
    const GasParameters psi = validate(s);

    GasInput nat;
    nat.mass = mass * k.c * k.c;
    nat.omega0 = k.hbar * omega;
    nat.lambda = lambda;
    nat.particle_number = n;
    nat.constants = PhysicalConstants::natural();
    const GasParameters pn = validate(nat);

    CHECK(rel(k.kB * symmetry_breaking_temperature(psi), symmetry_breaking_temperature(pn)) < 1e-13);
    for (FormulaMode m : {FormulaMode::paper_verbatim, FormulaMode::derived_consistent})
      CHECK(rel(k.kB * ideal_condensation_temperature(psi, m), ideal_condensation_temperature(pn, m)) <
            1e-13);
  }
}
