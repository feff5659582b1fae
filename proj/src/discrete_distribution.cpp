#include "esdual/discrete_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "esdual/detail/summation.hpp"

namespace esdual {

namespace {

constexpr double kEntryMassTolerance = 1e-9;
constexpr double kMassTolerance = 1e-12;

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> values,
                                           std::vector<double> probabilities) {
  if (values.size() != probabilities.size()) {
    throw LengthMismatch("values and probabilities differ in length (" +
                         std::to_string(values.size()) + " vs " +
                         std::to_string(probabilities.size()) + ")");
  }
  if (values.empty()) {
    throw EmptySupport("a distribution needs at least one scenario");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteValue("scenario values must be finite");
  }
  for (double p : probabilities) {
    if (!std::isfinite(p)) throw NonFiniteValue("probabilities must be finite");
    if (p < 0.0) throw NegativeProbability("probabilities must be nonnegative");
  }
  const double total = detail::compensated_sum(probabilities);
  if (std::abs(total - 1.0) > kEntryMassTolerance) {
    throw MassNotOne("probabilities sum to " + std::to_string(total) + ", expected 1");
  }

  // Sort scenarios by value, then merge equal values and drop null mass.
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  atoms_.reserve(values.size());
  probs_.reserve(values.size());
  for (std::size_t i : idx) {
    if (probabilities[i] == 0.0) continue;
    if (!atoms_.empty() && atoms_.back() == values[i]) {
      probs_.back() += probabilities[i];
    } else {
      atoms_.push_back(values[i]);
      probs_.push_back(probabilities[i]);
    }
  }

  // Mass within 1e-9 guarantees at least one positive entry survives.
  if (std::abs(total - 1.0) > kMassTolerance) {
    for (double& p : probs_) p /= total;
  }

  cum_.resize(probs_.size());
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    acc.add(probs_[k]);
    cum_[k] = acc.value();
  }
  cum_.back() = 1.0;
}

DiscreteDistribution from_scenarios(std::span<const double> values,
                                    std::span<const double> probabilities) {
  return DiscreteDistribution(std::vector<double>(values.begin(), values.end()),
                              std::vector<double>(probabilities.begin(), probabilities.end()));
}

DiscreteDistribution from_sample(std::span<const double> values) {
  if (values.empty()) throw EmptySupport("cannot build an empirical law from no observations");
  const double w = 1.0 / static_cast<double>(values.size());
  return DiscreteDistribution(std::vector<double>(values.begin(), values.end()),
                              std::vector<double>(values.size(), w));
}

double cdf(const DiscreteDistribution& d, double x) {
  const auto atoms = d.atoms();
  const auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
  if (it == atoms.begin()) return 0.0;
  return d.cumulative()[static_cast<std::size_t>(it - atoms.begin()) - 1];
}

double upper_quantile(const DiscreteDistribution& d, Level beta) {
  const auto cum = d.cumulative();
  // First cumulative value strictly above beta; exists because the last
  // entry is exactly 1 > beta.
  const auto it = std::upper_bound(cum.begin(), cum.end(), beta.value());
  return d.atoms()[static_cast<std::size_t>(it - cum.begin())];
}

DiscreteDistribution truncate(const DiscreteDistribution& d, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw InvalidBounds("truncation bounds must satisfy lower <= upper");
  }
  std::vector<double> clipped(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    clipped[k] = std::max(std::min(d.atom(k), upper), lower);
  }
  return DiscreteDistribution(std::move(clipped),
                              std::vector<double>(d.probs().begin(), d.probs().end()));
}

DiscreteDistribution shift(const DiscreteDistribution& d, double c) {
  if (!std::isfinite(c)) throw NonFiniteValue("shift amount must be finite");
  std::vector<double> moved(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) moved[k] = d.atom(k) + c;
  return DiscreteDistribution(std::move(moved),
                              std::vector<double>(d.probs().begin(), d.probs().end()));
}

double mean(const DiscreteDistribution& d) {
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < d.size(); ++k) acc.add(d.atom(k) * d.prob(k));
  return acc.value();
}

double quantile_integral(const DiscreteDistribution& d, double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    throw InvalidInterval("integration interval must satisfy 0 <= a < b <= 1");
  }
  const auto cum = d.cumulative();
  detail::KahanAccumulator acc;
  double lo = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double hi = cum[k];
    if (hi > a) {
      if (lo >= b) break;
      // Fully contained pieces use the stored probability, which is the
      // exact length of (c_{k-1}, c_k); this makes the integral over (0, 1)
      // reproduce the mean bit for bit.
      const double w = (a <= lo && hi <= b) ? d.prob(k) : std::min(b, hi) - std::max(a, lo);
      if (w > 0.0) acc.add(d.atom(k) * w);
    }
    lo = hi;
  }
  return acc.value();
}

}  // namespace esdual
