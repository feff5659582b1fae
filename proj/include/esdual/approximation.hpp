#pragma once

#include <cstdint>
#include <vector>

#include "esdual/discrete_distribution.hpp"
#include "esdual/level.hpp"

namespace esdual {

/// Rounds every atom up to the grid delta * ceil(x / delta). As a coupling on
/// the same space the result X' satisfies X <= X' <= X + delta pointwise.
DiscreteDistribution upper_discretization(const DiscreteDistribution& d, double delta);

/// Smallest integer bound certified to leave the shortfall untouched by
/// upper truncation: floor(q^+_gamma) + 1 with gamma = (1 + alpha) / 2.
/// For every m at or above it and every beta < alpha, the upper quantile of
/// the clipped law equals that of the original, hence so does the shortfall.
double truncation_stability_bound(const DiscreteDistribution& d, Level alpha);

/// Certificate that some feasible reweighting drives E_Q(X) negative when
/// the shortfall is positive: truncation levels such that the clipped law
/// keeps a positive epsilon-shifted shortfall while the clipping error in L1
/// stays below alpha * epsilon. Any feasible Q with a negative expectation
/// of the shifted clipped variable then satisfies
///   E_Q(X) <= l1_error / alpha - epsilon < 0.
struct TruncationCertificate {
  std::int64_t upper_level;
  std::int64_t lower_level;
  double epsilon;
  double truncated_shifted_es;  // ES of (clipped X) + epsilon, must be > 0
  double l1_error;              // E|X - clipped X|, must be < alpha * epsilon
};

/// Doubling search over levels 1, 2, 4, ... (upper and lower in lockstep);
/// returns the first pair satisfying both conditions. Terminates for every
/// finite-support law. Requires 0 < epsilon < expected_shortfall(d, alpha),
/// which itself must be positive; otherwise throws PreconditionViolated.
TruncationCertificate truncation_certificate(const DiscreteDistribution& d, Level alpha,
                                             double epsilon);

/// Shortfall values of the decreasing approximations X + 1/n, n = 1..n_max.
/// The list is nondecreasing, equals ES(X) - 1/n termwise and converges to
/// ES(X) from below.
std::vector<double> verify_continuity_from_above(const DiscreteDistribution& d, Level alpha,
                                                 int n_max);

}  // namespace esdual
