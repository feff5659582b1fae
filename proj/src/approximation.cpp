#include "esdual/approximation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "esdual/detail/summation.hpp"
#include "esdual/risk_measures.hpp"

namespace esdual {

namespace {

double l1_clipping_error(const DiscreteDistribution& d, double lower, double upper) {
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double clipped = std::max(std::min(d.atom(k), upper), lower);
    acc.add(std::abs(d.atom(k) - clipped) * d.prob(k));
  }
  return acc.value();
}

}  // namespace

DiscreteDistribution upper_discretization(const DiscreteDistribution& d, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidDelta("grid width must be a positive finite real");
  }
  std::vector<double> rounded(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    double up = delta * std::ceil(d.atom(k) / delta);
    // Guard against the quotient rounding down through an integer, which
    // would place the grid point just below the atom.
    if (up < d.atom(k)) up += delta;
    rounded[k] = up;
  }
  return DiscreteDistribution(std::move(rounded),
                              std::vector<double>(d.probs().begin(), d.probs().end()));
}

double truncation_stability_bound(const DiscreteDistribution& d, Level alpha) {
  const Level gamma((1.0 + alpha.value()) / 2.0);
  return std::floor(upper_quantile(d, gamma)) + 1.0;
}

TruncationCertificate truncation_certificate(const DiscreteDistribution& d, Level alpha,
                                             double epsilon) {
  const double es = expected_shortfall(d, alpha);
  if (!(es > 0.0)) {
    throw PreconditionViolated("certificate requires a strictly positive shortfall, got " +
                               std::to_string(es));
  }
  if (!(epsilon > 0.0 && epsilon < es)) {
    throw PreconditionViolated("epsilon must lie strictly between 0 and the shortfall");
  }

  const double target = alpha.value() * epsilon;
  for (std::int64_t level = 1;; level *= 2) {
    const double bound = static_cast<double>(level);
    const DiscreteDistribution clipped = truncate(d, -bound, bound);
    const double l1 = l1_clipping_error(d, -bound, bound);
    const double shifted_es = expected_shortfall(shift(clipped, epsilon), alpha);
    if (shifted_es > 0.0 && l1 < target) {
      return TruncationCertificate{level, level, epsilon, shifted_es, l1};
    }
    if (level > (std::int64_t{1} << 62) / 2) {
      // Unreachable for finite atoms: once the level passes the support
      // range the clipping error is exactly zero.
      throw PreconditionViolated("truncation level search exhausted");
    }
  }
}

std::vector<double> verify_continuity_from_above(const DiscreteDistribution& d, Level alpha,
                                                 int n_max) {
  if (n_max < 1) throw PreconditionViolated("need at least one approximation step");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    values.push_back(expected_shortfall(shift(d, 1.0 / n), alpha));
  }
  return values;
}

}  // namespace esdual
