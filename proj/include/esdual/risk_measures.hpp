#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "esdual/discrete_distribution.hpp"
#include "esdual/finite_space.hpp"
#include "esdual/level.hpp"

namespace esdual {

/// VaR_beta(X) = -inf{x : P(X <= x) > beta}, the sign-flipped upper quantile.
double value_at_risk(const DiscreteDistribution& d, Level beta);

/// Expected Shortfall at level alpha, closed form. With K the smallest index
/// whose cumulative probability reaches alpha,
///   ES = (1/alpha) * (sum_{k<K} -x_k p_k - x_K (alpha - sum_{k<K} p_k)).
/// The K search compares the accumulated sums exactly, with no epsilon fuzz.
double expected_shortfall(const DiscreteDistribution& d, Level alpha);

/// Expected Shortfall as the exact average of VaR over (0, alpha), i.e.
/// -quantile_integral(d, 0, alpha) / alpha. Independent route used as the
/// oracle for the closed form.
double expected_shortfall_integral(const DiscreteDistribution& d, Level alpha);

/// Exhaustive event enumeration is capped at 2^20 subsets.
inline constexpr std::size_t kMaxEnumerableOutcomes = 20;

struct WorstConditional {
  double value;                    // sup over events A with P(A) > alpha of E(-X | A)
  std::vector<std::size_t> event;  // maximizing outcome indices, ascending
  double event_probability;
};

/// Worst Conditional Expectation at level alpha (strict P(A) > alpha), by
/// exhaustive enumeration of all nonempty events. Deterministic: among ties
/// the lexicographically smallest index set wins.
/// Throws TooManyOutcomes when the space has more than 20 outcomes.
WorstConditional worst_conditional_expectation(const FiniteSpace& space,
                                               const std::string& label, Level alpha);

/// Computed risk summary for one (law, alpha) pair. es and es_oracle agree
/// within 1e-9; when wce is present it never exceeds es by more than 1e-9.
struct RiskReport {
  Level alpha;
  double var_at_alpha;
  double es;         // closed form
  double es_oracle;  // tail-average integral
  std::optional<double> wce;
};

RiskReport risk_report(const DiscreteDistribution& d, Level alpha);

/// Adds the worst conditional expectation when the space is enumerable
/// (at most kMaxEnumerableOutcomes outcomes).
RiskReport risk_report(const FiniteSpace& space, const std::string& label, Level alpha);

}  // namespace esdual
