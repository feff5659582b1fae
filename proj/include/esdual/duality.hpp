#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esdual/discrete_distribution.hpp"
#include "esdual/finite_space.hpp"
#include "esdual/level.hpp"

namespace esdual {

/// A measure Q absolutely continuous w.r.t. a base law P, stored as the
/// per-atom densities dQ/dP (so Q's weights are q_k = d_k * p_k). The base's
/// probabilities are copied in, and expectations check them bitwise against
/// the distribution they are evaluated on.
///
/// Construction does not require feasibility; is_feasible() is the
/// membership test for the dual set at a given level.
class DensityMeasure {
 public:
  DensityMeasure(const DiscreteDistribution& base, std::vector<double> densities);
  DensityMeasure(const FiniteSpace& base, std::vector<double> densities);

  std::size_t size() const noexcept { return densities_.size(); }
  std::span<const double> densities() const noexcept { return densities_; }
  std::span<const double> base_probs() const noexcept { return base_probs_; }

  double density(std::size_t k) const { return densities_[k]; }

 private:
  std::vector<double> base_probs_;
  std::vector<double> densities_;
};

enum class Sign { plus_x, minus_x };

/// Membership in the dual set at level alpha: densities nonnegative and
/// bounded by 1/alpha + 1e-12, total mass within 1e-12 of one.
bool is_feasible(const DensityMeasure& q, Level alpha);

/// E_Q(+/-X) = sum over atoms of (+/-x_k) d_k p_k.
/// Throws BaseMismatch if q was not built over d's probabilities.
double expectation_under(const DiscreteDistribution& d, const DensityMeasure& q, Sign sign);

/// Same, over a labeled variable on a finite space.
double expectation_under(const FiniteSpace& space, const std::string& label,
                         const DensityMeasure& q, Sign sign);

/// The maximizing measure of the dual representation: mass p_k/alpha on every
/// atom strictly left of the alpha cut, the residual weight on the cut atom,
/// nothing beyond. Always feasible, and E_Q(-X) reproduces the closed-form
/// Expected Shortfall to within 1e-12.
DensityMeasure worst_case_measure(const DiscreteDistribution& d, Level alpha);

/// Optimal value of max sum(-x_k) q_k over 0 <= q_k <= p_k/alpha,
/// sum q_k = 1, by the ascending-value greedy fill. Independent of the
/// closed-form route; equals Expected Shortfall.
double dual_value_greedy(const DiscreteDistribution& d, Level alpha);

/// Vertex of the feasible polytope obtained by filling capacities p_k/alpha
/// in the given traversal order until mass one is placed. `order` must be a
/// permutation of {0, ..., N-1}.
DensityMeasure greedy_vertex(const DiscreteDistribution& d, Level alpha,
                             std::span<const std::size_t> order);

/// Random feasible measure, deterministic in the seed: a vertex from a
/// uniformly random traversal order, mixed (with probability 1/2) with a
/// second vertex by a uniform convex weight.
DensityMeasure sample_feasible_measure(const DiscreteDistribution& d, Level alpha,
                                       std::uint64_t seed);

enum class EsSign { non_positive, positive };

/// Sign dichotomy for the acceptance set. When es <= 0 every feasible Q has
/// E_Q(X) >= 0 and no witness is produced; when es > 0 the worst-case
/// measure certifies E_Q(X) = -es < 0.
struct AcceptanceCheck {
  EsSign sign;
  double es;
  std::optional<DensityMeasure> witness;
};

AcceptanceCheck acceptance_check(const DiscreteDistribution& d, Level alpha);

struct SubadditivityCheck {
  double lhs;  // ES of the law of X + Y
  double rhs;  // ES(X) + ES(Y)
  bool holds;  // lhs <= rhs + 1e-9
};

/// Throws MissingVariable if either label is absent from the space.
SubadditivityCheck verify_subadditivity(const FiniteSpace& space, const std::string& label_x,
                                        const std::string& label_y, Level alpha);

}  // namespace esdual
