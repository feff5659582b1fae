#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "esdual/errors.hpp"
#include "esdual/level.hpp"

namespace esdual {

/// A finite-support law: strictly increasing atoms x_1 < ... < x_N carrying
/// strictly positive probabilities that sum to one (within 1e-12).
///
/// Immutable after construction; all free functions below are pure, so the
/// type is safe to share across threads.
class DiscreteDistribution {
 public:
  /// Validating constructor. Merges duplicate values (summing their
  /// probabilities), drops zero-probability entries, sorts atoms ascending
  /// and renormalizes the total mass. Input mass must already be within
  /// 1e-9 of one; if it is within 1e-12 the probabilities are kept bitwise.
  ///
  /// Throws LengthMismatch, EmptySupport, NegativeProbability, MassNotOne,
  /// NonFiniteValue.
  DiscreteDistribution(std::vector<double> values, std::vector<double> probabilities);

  std::size_t size() const noexcept { return atoms_.size(); }
  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Cumulative mass up to and including atom k. The final entry is exactly
  /// 1.0, matching cdf() being 1 at and above the largest atom.
  std::span<const double> cumulative() const noexcept { return cum_; }

  double atom(std::size_t k) const { return atoms_[k]; }
  double prob(std::size_t k) const { return probs_[k]; }

 private:
  std::vector<double> atoms_;
  std::vector<double> probs_;
  std::vector<double> cum_;
};

/// Law from an explicit (value, probability) scenario table.
DiscreteDistribution from_scenarios(std::span<const double> values,
                                    std::span<const double> probabilities);

/// Empirical law of a sample: equal weights 1/n, repeated values accumulate.
DiscreteDistribution from_sample(std::span<const double> values);

/// F(x) = P(X <= x); right-continuous step function.
double cdf(const DiscreteDistribution& d, double x);

/// Upper quantile inf{x : F(x) > beta}; always one of the atoms.
double upper_quantile(const DiscreteDistribution& d, Level beta);

/// Law of max(min(X, upper), lower). Bounds may be +/-infinity.
DiscreteDistribution truncate(const DiscreteDistribution& d, double lower, double upper);

/// Law of X + c.
DiscreteDistribution shift(const DiscreteDistribution& d, double c);

/// E(X).
double mean(const DiscreteDistribution& d);

/// Exact integral of beta -> upper_quantile(d, beta) over (a, b) with
/// 0 <= a < b <= 1, computed piecewise on the cumulative breakpoints.
/// quantile_integral(d, 0, 1) reproduces mean(d) bit for bit.
double quantile_integral(const DiscreteDistribution& d, double a, double b);

}  // namespace esdual
