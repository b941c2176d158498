#include "bosecrit/errors.hpp"
#include "bosecrit/specialfn.hpp"
#include "fixtures.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <vector>

using namespace bosecrit;
using fixtures::rel;

namespace {

constexpr double kPi = 3.14159265358979323846;

// 50-digit reference values of G_3/2(z).
constexpr double kG1 = 1.2084711000711152;
constexpr double kG01 = 0.0037533360525595918;
constexpr double kG05 = 0.12614446317468331;
constexpr double kG09 = 0.69012862696616168;

// g_nu(w) without any of the library's machinery.
double reference_bose(double nu, double w) {
  if (w <= 0.5) {
    double sum = 0.0;
    double power = 1.0;
    for (int j = 1; j < 80; ++j) {
      power *= w;
      sum += power / std::pow(j, nu);
    }
    return sum;
  }
  return fixtures::bose_integral(nu, w);
}

// G(z) = Gamma(3/2)^-1 int_0^inf t^1/2 g_1/2(z e^-t) g_3/2(z e^-t) dt.
double reference_g(double z) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) {
    const double w = z * std::exp(-t);
    return std::sqrt(t) * reference_bose(0.5, w) * reference_bose(1.5, w);
  };
  return integrator.integrate(f, 1e-12) / std::tgamma(1.5);
}

}  // namespace

TEST_CASE("bose function examples") {
  CHECK(bose_function(1.5, 0.0) == 0.0);
  CHECK(rel(bose_function(2.0, 1.0), kPi * kPi / 6.0) < 1e-12);
  CHECK(rel(bose_function(1.0, 0.5), std::log(2.0)) < 1e-10);
  CHECK(rel(bose_function(1.0, 0.5, {1e-15, 10000}), std::log(2.0)) < 1e-14);
  CHECK(rel(bose_function(3.0, 1.0), 1.2020569031595942) < 1e-12);
}

TEST_CASE("zeta values") {
  CHECK(rel(zeta(2.0), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel(zeta(4.0), std::pow(kPi, 4) / 90.0) < 1e-14);
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  CHECK_THROWS_AS(zeta(0.5), DomainError);

  // Partial sums of n^-3 bracket zeta(3) with the integral tail bounds.
  double partial = 0.0;
  const int m = 20000;
  for (int n = 1; n <= m; ++n) partial += 1.0 / (static_cast<double>(n) * n * n);
  const double lower = partial + 0.5 / ((m + 1.0) * (m + 1.0));
  const double upper = partial + 0.5 / (static_cast<double>(m) * m);
  CHECK(zeta(3.0) >= lower - 1e-15);
  CHECK(zeta(3.0) <= upper + 1e-15);
}

TEST_CASE("bose function domain") {
  CHECK_THROWS_AS(bose_function(1.5, -0.1), DomainError);
  CHECK_THROWS_AS(bose_function(1.5, 1.1), DomainError);
  CHECK_THROWS_AS(bose_function(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bose_function(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(bose_function(0.5, 1.0 - 1e-10), DomainError);
  CHECK_NOTHROW(bose_function(0.5, 1.0 - 1e-8));
  CHECK_THROWS_AS(bose_function(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(bose_function(1.5, 0.5, SeriesAccuracy{1e-2, 100}), DomainError);
  CHECK_THROWS_AS(bose_function(1.5, 0.5, SeriesAccuracy{1e-10, 5}), DomainError);
}

TEST_CASE("series agrees with the integral definition") {
  for (double nu : {1.5, 2.0, 3.0})
    for (double z : {0.1, 0.5, 0.9}) {
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(rel(bose_function(nu, z), fixtures::bose_integral(nu, z)) < 1e-8);
    }
  // Non-tabulated orders use the same code path.
  CHECK(rel(bose_function(2.5, 0.7), fixtures::bose_integral(2.5, 0.7)) < 1e-8);
  CHECK(rel(bose_function(0.5, 0.95), fixtures::bose_integral(0.5, 0.95)) < 1e-8);
  CHECK(rel(bose_function(1.0, 0.9), -std::log(0.1)) < 1e-12);
}

TEST_CASE("both evaluation branches meet at z = 1/2") {
  for (double nu : {0.5, 1.5, 2.0, 3.0}) {
    const double below = bose_function(nu, std::nextafter(0.5, 0.0), {1e-14, 10000});
    const double above = bose_function(nu, std::nextafter(0.5, 1.0), {1e-14, 10000});
    CHECK(rel(above, below) < 1e-13);
  }
}

TEST_CASE("derivative identity on a 20-point grid") {
  int count = 0;
  for (double nu : {1.5, 2.0, 2.5, 3.0})
    for (double z : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      CAPTURE(nu);
      CAPTURE(z);
      CHECK(check_derivative_identity(nu, z) < 1e-6);
      ++count;
    }
  CHECK(count == 20);
  CHECK(check_derivative_identity(1.5, 1e-6) < 1e-6);
  CHECK_THROWS_AS(check_derivative_identity(1.0, 0.5), DomainError);
}

TEST_CASE("monotone in z and ordered in nu") {
  for (double nu : {0.5, 1.5, 2.0, 3.0}) {
    double previous = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double z = nu <= 1.0 ? 0.99 * i / 100.0 : i / 100.0;
      const double g = bose_function(nu, z);
      CHECK(g > previous);
      previous = g;
    }
  }
  for (double z : {0.1, 0.5, 0.9, 0.999}) {
    CHECK(bose_function(0.5, z) >= bose_function(1.5, z));
    CHECK(bose_function(1.5, z) >= bose_function(2.0, z));
    CHECK(bose_function(2.0, z) >= bose_function(3.0, z));
  }
}

TEST_CASE("double sum small-z behaviour") {
  CHECK(g_double_sum(0.0) == 0.0);
  CHECK(g_double_sum(0.1) == doctest::Approx(3.54e-3).epsilon(0.07));
  const double leading = std::pow(2.0, -1.5);
  double last = 1.0;
  for (double z : {1e-2, 1e-3, 1e-4}) {
    const double d = std::abs(g_double_sum(z) / (z * z) - leading);
    CHECK(d < last);
    last = d;
  }
  CHECK(last < 1e-4);
  CHECK_THROWS_AS(g_double_sum(-0.1), DomainError);
  CHECK_THROWS_AS(g_double_sum(1.5), DomainError);
}

TEST_CASE("double sum against reference values") {
  CHECK(rel(g_double_sum(0.1, {1e-14, 10000}), kG01) < 1e-12);
  CHECK(rel(g_double_sum(0.5, {1e-14, 10000}), kG05) < 1e-12);
  CHECK(rel(g_double_sum(0.9, {1e-14, 10000}), kG09) < 1e-12);
  CHECK(rel(g_double_sum(1.0, {1e-13, 10000}), kG1) < 1e-12);
}

TEST_CASE("double sum against its integral representation") {
  for (double z : {0.3, 0.5, 0.9, 0.97}) {
    CAPTURE(z);
    CHECK(rel(g_double_sum(z), reference_g(z)) < 1e-8);
  }
}

TEST_CASE("double sum stable under radius doubling") {
  for (int m : {64, 128, 256, 512}) {
    const DoubleSumResult a = g_double_sum_at(1.0, m);
    const DoubleSumResult b = g_double_sum_at(1.0, 2 * m);
    CHECK(rel(a.value, b.value) < 1e-8);
    CHECK(std::abs(a.value - kG1) <= std::max(a.tail_estimate, 1e-14));
  }
  const DoubleSumResult d = g_double_sum_detail(1.0, {1e-12, 10000});
  CHECK(d.tail_estimate < 1e-12 * d.value);
  CHECK(d.radius >= 64);
  // Below z = 1/2 the tail is bounded, not modelled.
  const DoubleSumResult low = g_double_sum_at(0.3, 16);
  CHECK(std::abs(low.value - g_double_sum(0.3, {1e-14, 10000})) <= low.tail_estimate);
}

TEST_CASE("double sum gives up when the term cap is too low") {
  CHECK_THROWS_AS(g_double_sum_detail(1.0, {1e-15, 10}), ConvergenceError);
}
