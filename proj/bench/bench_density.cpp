// Self-consistent density profile: OpenMP grid evaluation against the serial reference.

#include "bosecrit/semiclassical.hpp"
#include "fixtures.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace bosecrit;

namespace {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 4096;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  const GasParameters gas = fixtures::rb87_gas(1e6, 1e-3);
  const double t = 0.98 * ideal_condensation_temperature(gas, FormulaMode::derived_consistent);
  const ThermalState state = critical_state(gas, t);
  const double r_max = radial_cutoff(gas, state);
  std::vector<double> radii(points);
  for (int i = 0; i < points; ++i) radii[i] = r_max * i / (points - 1);

  DensityProfile serial;
  DensityProfile parallel;
  const double ts = best_of(repeats, [&] { serial = self_consistent_density_serial(gas, state, radii); });
  const double tp = best_of(repeats, [&] { parallel = self_consistent_density(gas, state, radii); });

  bool identical = serial.density == parallel.density && serial.converged == parallel.converged;
  std::printf("points        %d\n", points);
  std::printf("threads       %d\n", max_threads());
  std::printf("serial        %.6f s\n", ts);
  std::printf("parallel      %.6f s\n", tp);
  std::printf("speedup       %.2f\n", ts / tp);
  std::printf("per point     %.3f us (serial)\n", 1e6 * ts / points);
  std::printf("identical     %s\n", identical ? "yes" : "no");
  std::printf("converged     %s\n", serial.all_converged() ? "yes" : "no");
  return identical ? 0 : 1;
}
