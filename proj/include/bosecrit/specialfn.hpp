#pragma once

namespace bosecrit {

/// Stopping rule shared by the series evaluators.
struct SeriesAccuracy {
  double target_rel_error = 1e-10;
  int max_terms = 10000;

  /// Throws DomainError unless 0 < target < 1e-3 and max_terms >= 10.
  void check() const;
};

/// Bose-Einstein function g_nu(z) = sum_{j>=1} z^j / j^nu for z in [0, 1].
///
/// Small z uses the defining series with a geometric tail bound.  For
/// z > 1/2 the expansion in mu = ln z is used,
///
///   g_nu(e^mu) = Gamma(1-nu) (-mu)^(nu-1) + sum_k zeta(nu-k) mu^k / k!,
///
/// with the harmonic-number form of the singular term for integer nu.
/// Orders nu <= 1 diverge at z = 1 and are refused above 1 - 1e-9.
double bose_function(double nu, double z, SeriesAccuracy acc = {});

/// Riemann zeta(nu) for nu > 1, i.e. g_nu(1).
double zeta(double nu);

/// Smallest distance below z = 1 at which divergent orders are evaluated.
inline constexpr double kDivergenceGuard = 1e-9;

struct DoubleSumResult {
  double value = 0.0;
  /// Magnitude bound on what the truncation (plus tail model) leaves out.
  double tail_estimate = 0.0;
  /// Triangle radius M: all pairs with i + j <= M are summed explicitly.
  int radius = 0;
};

/// G_{3/2}(z) = sum_{i,j>=1} z^(i+j) / (i^1/2 j^3/2 (i+j)^3/2) at a fixed
/// triangle radius.  Diagonals s = i + j beyond the radius are folded in
/// through the large-s expansion of the diagonal sums (for z > 1/2) or
/// bounded rigorously (z <= 1/2, where the tail is not added).
DoubleSumResult g_double_sum_at(double z, int radius);

/// G_{3/2}(z) with the radius doubled until the value and the tail
/// estimate both meet the target.  ConvergenceError past acc.max_terms.
DoubleSumResult g_double_sum_detail(double z, SeriesAccuracy acc = {});

inline double g_double_sum(double z, SeriesAccuracy acc = {}) {
  return g_double_sum_detail(z, acc).value;
}

/// |z g_nu'(z) - g_{nu-1}(z)| / g_{nu-1}(z) with a central difference of
/// step 1e-6 z.  Requires nu > 1 and z in (0, 1).
double check_derivative_identity(double nu, double z);

}  // namespace bosecrit
