#include "bosecrit/specialfn.hpp"

#include "bosecrit/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <limits>
#include <shared_mutex>
#include <string>
#include <vector>

namespace bosecrit {

namespace {

constexpr int kExpansionTerms = 80;
constexpr double kSeriesBranch = 0.5;

bool is_integer(double x) { return x == std::nearbyint(x); }

double zeta_any(double s) {
  // Pole at s = 1 is never requested; trivial zeros are returned exactly.
  if (s < 0.0 && is_integer(s) && std::fmod(-s, 2.0) == 0.0) return 0.0;
  return std::riemann_zeta(s);
}

// zeta(nu - k) / k! for k = 0..kExpansionTerms-1, zero at the integer pole.
// Tables are built once per order and shared between threads.
class ExpansionCache {
public:
  std::shared_ptr<const std::vector<double>> get(double nu) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(nu); it != tables_.end()) return it->second;
    }
    auto table = std::make_shared<std::vector<double>>(kExpansionTerms);
    double factorial = 1.0;
    for (int k = 0; k < kExpansionTerms; ++k) {
      if (k > 0) factorial *= k;
      const double s = nu - k;
      (*table)[k] = s == 1.0 ? 0.0 : zeta_any(s) / factorial;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.emplace(nu, std::move(table));
    return it->second;
  }

private:
  std::shared_mutex mutex_;
  std::map<double, std::shared_ptr<const std::vector<double>>> tables_;
};

ExpansionCache& expansion_cache() {
  static ExpansionCache cache;
  return cache;
}

double direct_series(double nu, double z, const SeriesAccuracy& acc) {
  double sum = 0.0;
  double zj = 1.0;
  for (int j = 1; j <= acc.max_terms; ++j) {
    zj *= z;
    sum += zj * std::pow(static_cast<double>(j), -nu);
    // j^-nu is decreasing, so the remainder is below a geometric series.
    const double next = zj * z * std::pow(static_cast<double>(j + 1), -nu);
    if (next / (1.0 - z) <= acc.target_rel_error * sum) return sum;
  }
  throw ConvergenceError("bose_function: series did not reach target within max_terms");
}

double log_expansion(double nu, double mu, const SeriesAccuracy& acc) {
  const auto table = expansion_cache().get(nu);
  const std::vector<double>& c = *table;

  double sum;
  if (is_integer(nu)) {
    const int n = static_cast<int>(nu);
    double harmonic = 0.0;
    double factorial = 1.0;
    for (int i = 1; i <= n - 1; ++i) {
      harmonic += 1.0 / i;
      factorial *= i;
    }
    sum = std::pow(mu, n - 1) / factorial * (harmonic - std::log(-mu));
  } else {
    sum = std::tgamma(1.0 - nu) * std::pow(-mu, nu - 1.0);
  }

  const int limit = std::min(kExpansionTerms, acc.max_terms);
  double power = 1.0;
  double previous = INFINITY;
  for (int k = 0; k < limit; ++k) {
    if (k > 0) power *= mu;
    const double term = c[k] * power;
    sum += term;
    // Coefficients vanish at the trivial zeros, so look at two terms.
    if (k > nu + 1.0 && std::abs(term) + std::abs(previous) <= acc.target_rel_error * std::abs(sum))
      return sum;
    previous = term;
  }
  throw ConvergenceError("bose_function: log expansion did not reach target");
}

}  // namespace

void SeriesAccuracy::check() const {
  if (!(target_rel_error > 0.0 && target_rel_error < 1e-3))
    throw DomainError("SeriesAccuracy: target_rel_error must lie in (0, 1e-3)");
  if (max_terms < 10) throw DomainError("SeriesAccuracy: max_terms must be at least 10");
}

double bose_function(double nu, double z, SeriesAccuracy acc) {
  acc.check();
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw DomainError("bose_function: order must be positive, got " + std::to_string(nu));
  if (!(z >= 0.0 && z <= 1.0))
    throw DomainError("bose_function: fugacity outside [0, 1]: " + std::to_string(z));
  if (nu <= 1.0 && z > 1.0 - kDivergenceGuard)
    throw DomainError("bose_function: order <= 1 diverges at z -> 1");
  if (z == 0.0) return 0.0;
  if (z == 1.0) return std::riemann_zeta(nu);
  if (z <= kSeriesBranch) return direct_series(nu, z, acc);
  return log_expansion(nu, std::log(z), acc);
}

double zeta(double nu) {
  if (!(nu > 1.0)) throw DomainError("zeta: argument must exceed 1");
  return std::riemann_zeta(nu);
}

namespace {

// Coefficients c_p of the large-s expansion of the diagonal sums
//   d(s) = s^-3/2 sum_{i=1}^{s-1} i^-1/2 (s-i)^-3/2 ~ sum_{p>=2} c_p s^-p,
// from the standard convolution asymptotics of two power sequences.
constexpr int kTailOrders = 12;

const std::vector<double>& diagonal_coefficients() {
  static const std::vector<double> c = [] {
    std::vector<double> out(kTailOrders + 2, 0.0);
    for (int p = 2; p < kTailOrders + 2; ++p) {
      auto pochhammer_over_factorial = [](double a, int k) {
        double r = 1.0;
        for (int i = 0; i < k; ++i) r *= (a + i) / (i + 1);
        return r;
      };
      const int k = p - 2;
      double v = pochhammer_over_factorial(0.5, k) * zeta_any(1.5 - k);
      if (p >= 3) v += pochhammer_over_factorial(1.5, p - 3) * zeta_any(0.5 - (p - 3));
      out[p] = v;
    }
    return out;
  }();
  return c;
}

}  // namespace

DoubleSumResult g_double_sum_at(double z, int radius) {
  if (!(z >= 0.0 && z <= 1.0))
    throw DomainError("g_double_sum: fugacity outside [0, 1]: " + std::to_string(z));
  if (radius < 2) throw DomainError("g_double_sum: radius must be at least 2");

  DoubleSumResult r;
  r.radius = radius;
  if (z == 0.0) return r;

  std::vector<double> half(radius + 1), three_half(radius + 1);
  for (int i = 1; i <= radius; ++i) {
    half[i] = 1.0 / std::sqrt(static_cast<double>(i));
    three_half[i] = half[i] / i;
  }

  double partial = 0.0;
  double zs = z;
  for (int s = 2; s <= radius; ++s) {
    zs *= z;
    double diagonal = 0.0;
    for (int i = 1; i < s; ++i) diagonal += half[i] * three_half[s - i];
    partial += zs * three_half[s] * diagonal;
  }

  const double M = radius;
  if (z <= kSeriesBranch) {
    // d(s) <= (4 / sqrt(s) + sqrt(2) zeta(3/2)) s^-2.
    const double bound = 4.0 / std::sqrt(M + 1.0) + std::sqrt(2.0) * std::riemann_zeta(1.5);
    r.value = partial;
    r.tail_estimate = bound * std::pow(z, M + 1.0) / ((M + 1.0) * (M + 1.0) * (1.0 - z));
    return r;
  }

  const auto& c = diagonal_coefficients();
  const SeriesAccuracy tight{1e-16, 10000};
  double tail = 0.0;
  for (int p = 2; p <= kTailOrders; ++p) {
    double head = 0.0;
    double zp = 1.0;
    for (int s = 1; s <= radius; ++s) {
      zp *= z;
      head += zp * std::pow(static_cast<double>(s), -p);
    }
    tail += c[p] * (bose_function(p, z, tight) - head);
  }
  r.value = partial + tail;
  // First omitted order, bounded by sum_{s>M} s^-(P+1) <= M^-P / P.
  r.tail_estimate = std::abs(c[kTailOrders + 1]) * std::pow(M, -kTailOrders) / kTailOrders +
                    4.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  return r;
}

DoubleSumResult g_double_sum_detail(double z, SeriesAccuracy acc) {
  acc.check();
  int radius = 64;
  DoubleSumResult previous = g_double_sum_at(z, radius);
  if (previous.value == 0.0) return previous;
  while (true) {
    radius *= 2;
    if (radius > acc.max_terms)
      throw ConvergenceError("g_double_sum: radius exceeded max_terms before convergence");
    DoubleSumResult current = g_double_sum_at(z, radius);
    const double tol = acc.target_rel_error * std::abs(current.value);
    if (std::abs(current.value - previous.value) <= tol && current.tail_estimate <= tol)
      return current;
    previous = current;
  }
}

double check_derivative_identity(double nu, double z) {
  if (!(nu > 1.0)) throw DomainError("derivative identity needs nu > 1");
  if (!(z > 0.0 && z < 1.0)) throw DomainError("derivative identity needs z in (0, 1)");
  const double h = 1e-6 * z;
  if (z + h > 1.0) throw DomainError("derivative identity: z too close to 1 for the step");
  const SeriesAccuracy tight{1e-16, 100000};
  const double slope = (bose_function(nu, z + h, tight) - bose_function(nu, z - h, tight)) / (2.0 * h);
  const double lower = bose_function(nu - 1.0, z, tight);
  return std::abs(z * slope - lower) / lower;
}

}  // namespace bosecrit
