#include "esdual/risk_measures.hpp"

#include <algorithm>

#include "esdual/detail/summation.hpp"

namespace esdual {

double value_at_risk(const DiscreteDistribution& d, Level beta) {
  return -upper_quantile(d, beta);
}

double expected_shortfall(const DiscreteDistribution& d, Level alpha) {
  const double a = alpha.value();
  const auto cum = d.cumulative();
  // K: first index whose cumulative mass reaches alpha (exact comparison).
  const std::size_t cut =
      static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), a) - cum.begin());
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < cut; ++k) acc.add(d.atom(k) * d.prob(k));
  const double residual = a - (cut == 0 ? 0.0 : cum[cut - 1]);
  acc.add(d.atom(cut) * residual);
  return -acc.value() / a;
}

double expected_shortfall_integral(const DiscreteDistribution& d, Level alpha) {
  return -quantile_integral(d, 0.0, alpha.value()) / alpha.value();
}

WorstConditional worst_conditional_expectation(const FiniteSpace& space,
                                               const std::string& label, Level alpha) {
  const std::size_t m = space.size();
  if (m > kMaxEnumerableOutcomes) {
    throw TooManyOutcomes("event enumeration is capped at " +
                          std::to_string(kMaxEnumerableOutcomes) + " outcomes, space has " +
                          std::to_string(m));
  }
  const auto values = space.variable(label);
  const auto probs = space.probs();

  const auto indices_of = [m](std::uint32_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    return idx;
  };

  bool found = false;
  double best = 0.0;
  std::uint32_t best_mask = 0;
  double best_prob = 0.0;
  const std::uint32_t n_events = 1u << m;
  for (std::uint32_t mask = 1; mask < n_events; ++mask) {
    double pa = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        pa += probs[i];
        loss -= values[i] * probs[i];
      }
    }
    if (!(pa > alpha.value())) continue;  // strict
    const double value = loss / pa;
    if (!found || value > best ||
        (value == best && std::ranges::lexicographical_compare(indices_of(mask),
                                                               indices_of(best_mask)))) {
      found = true;
      best = value;
      best_mask = mask;
      best_prob = pa;
    }
  }
  // P(Omega) = 1 > alpha, so at least the full event qualifies.
  return WorstConditional{best, indices_of(best_mask), best_prob};
}

RiskReport risk_report(const DiscreteDistribution& d, Level alpha) {
  return RiskReport{alpha, value_at_risk(d, alpha), expected_shortfall(d, alpha),
                    expected_shortfall_integral(d, alpha), std::nullopt};
}

RiskReport risk_report(const FiniteSpace& space, const std::string& label, Level alpha) {
  const DiscreteDistribution d = space.law(label);
  RiskReport report = risk_report(d, alpha);
  if (space.size() <= kMaxEnumerableOutcomes) {
    report.wce = worst_conditional_expectation(space, label, alpha).value;
  }
  return report;
}

}  // namespace esdual
