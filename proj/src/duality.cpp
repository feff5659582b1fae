#include "esdual/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ranges>

#include "esdual/detail/summation.hpp"
#include "esdual/risk_measures.hpp"

namespace esdual {

namespace {

constexpr double kConstructionTolerance = 1e-12;

// splitmix64; keeps sampling byte-stable across standard libraries, which
// std::shuffle / std::uniform_*_distribution would not.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class SmallRng {
 public:
  explicit SmallRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[below(i)]);
    }
    return order;
  }

 private:
  std::uint64_t state_;
};

void require_same_base(const DensityMeasure& q, std::span<const double> probs) {
  if (!std::ranges::equal(q.base_probs(), probs)) {
    throw BaseMismatch("density measure was built over a different base law");
  }
}

}  // namespace

DensityMeasure::DensityMeasure(const DiscreteDistribution& base, std::vector<double> densities)
    : base_probs_(base.probs().begin(), base.probs().end()), densities_(std::move(densities)) {
  if (base_probs_.size() != densities_.size()) {
    throw LengthMismatch("one density per atom required");
  }
}

DensityMeasure::DensityMeasure(const FiniteSpace& base, std::vector<double> densities)
    : base_probs_(base.probs().begin(), base.probs().end()), densities_(std::move(densities)) {
  if (base_probs_.size() != densities_.size()) {
    throw LengthMismatch("one density per outcome required");
  }
}

bool is_feasible(const DensityMeasure& q, Level alpha) {
  const double bound = 1.0 / alpha.value() + kConstructionTolerance;
  detail::KahanAccumulator mass;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double dk = q.density(k);
    if (!std::isfinite(dk) || dk < 0.0 || dk > bound) return false;
    mass.add(dk * q.base_probs()[k]);
  }
  return std::abs(mass.value() - 1.0) <= kConstructionTolerance;
}

double expectation_under(const DiscreteDistribution& d, const DensityMeasure& q, Sign sign) {
  require_same_base(q, d.probs());
  const double s = (sign == Sign::minus_x) ? -1.0 : 1.0;
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < d.size(); ++k) {
    acc.add(s * d.atom(k) * q.density(k) * d.prob(k));
  }
  return acc.value();
}

double expectation_under(const FiniteSpace& space, const std::string& label,
                         const DensityMeasure& q, Sign sign) {
  require_same_base(q, space.probs());
  const auto values = space.variable(label);
  const double s = (sign == Sign::minus_x) ? -1.0 : 1.0;
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc.add(s * values[k] * q.density(k) * space.probs()[k]);
  }
  return acc.value();
}

DensityMeasure worst_case_measure(const DiscreteDistribution& d, Level alpha) {
  const double a = alpha.value();
  const auto cum = d.cumulative();
  const std::size_t cut =
      static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), a) - cum.begin());
  std::vector<double> densities(d.size(), 0.0);
  const double inv_alpha = 1.0 / a;
  for (std::size_t k = 0; k < cut; ++k) densities[k] = inv_alpha;
  // Residual mass on the cut atom; minimality of the cut keeps its density
  // at or below 1/alpha.
  const double residual = a - (cut == 0 ? 0.0 : cum[cut - 1]);
  densities[cut] = residual / (a * d.prob(cut));
  return DensityMeasure(d, std::move(densities));
}

double dual_value_greedy(const DiscreteDistribution& d, Level alpha) {
  const double inv_alpha = 1.0 / alpha.value();
  double remaining = 1.0;
  detail::KahanAccumulator acc;
  for (std::size_t k = 0; k < d.size() && remaining > 0.0; ++k) {
    const double weight = std::min(d.prob(k) * inv_alpha, remaining);
    acc.add(-d.atom(k) * weight);
    remaining = (weight == remaining) ? 0.0 : remaining - weight;
  }
  return acc.value();
}

DensityMeasure greedy_vertex(const DiscreteDistribution& d, Level alpha,
                             std::span<const std::size_t> order) {
  if (order.size() != d.size()) {
    throw LengthMismatch("traversal order must cover every atom exactly once");
  }
  const double inv_alpha = 1.0 / alpha.value();
  std::vector<double> densities(d.size(), 0.0);
  double remaining = 1.0;
  for (std::size_t k : order) {
    if (remaining <= 0.0) break;
    const double capacity = d.prob(k) * inv_alpha;
    if (capacity <= remaining) {
      densities[k] = inv_alpha;  // saturated: exact bound, no division noise
      remaining = (capacity == remaining) ? 0.0 : remaining - capacity;
    } else {
      densities[k] = remaining / d.prob(k);
      remaining = 0.0;
    }
  }
  return DensityMeasure(d, std::move(densities));
}

DensityMeasure sample_feasible_measure(const DiscreteDistribution& d, Level alpha,
                                       std::uint64_t seed) {
  SmallRng rng(seed);
  const auto first = greedy_vertex(d, alpha, rng.permutation(d.size()));
  if (rng.next() % 2 == 0) return first;

  const auto second = greedy_vertex(d, alpha, rng.permutation(d.size()));
  const double lambda = rng.uniform01();
  std::vector<double> mixed(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    mixed[k] = lambda * first.density(k) + (1.0 - lambda) * second.density(k);
  }
  return DensityMeasure(d, std::move(mixed));
}

AcceptanceCheck acceptance_check(const DiscreteDistribution& d, Level alpha) {
  const double es = expected_shortfall(d, alpha);
  if (es <= 0.0) {
    return AcceptanceCheck{EsSign::non_positive, es, std::nullopt};
  }
  return AcceptanceCheck{EsSign::positive, es, worst_case_measure(d, alpha)};
}

SubadditivityCheck verify_subadditivity(const FiniteSpace& space, const std::string& label_x,
                                        const std::string& label_y, Level alpha) {
  const auto x = space.variable(label_x);
  const auto y = space.variable(label_y);
  std::vector<double> sum(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) sum[i] = x[i] + y[i];

  const double lhs = expected_shortfall(from_scenarios(sum, space.probs()), alpha);
  const double rhs =
      expected_shortfall(space.law(label_x), alpha) + expected_shortfall(space.law(label_y), alpha);
  return SubadditivityCheck{lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace esdual
