#include "esdual/finite_space.hpp"

#include <cmath>

#include "esdual/detail/summation.hpp"

namespace esdual {

namespace {

std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> outcomes, std::vector<double> probabilities,
                         std::map<std::string, std::vector<double>> variables)
    : outcomes_(std::move(outcomes)),
      probs_(std::move(probabilities)),
      variables_(std::move(variables)) {
  validate();
}

FiniteSpace::FiniteSpace(std::vector<double> probabilities,
                         std::map<std::string, std::vector<double>> variables)
    : probs_(std::move(probabilities)), variables_(std::move(variables)) {
  outcomes_ = index_names(probs_.size());
  validate();
}

void FiniteSpace::validate() {
  if (probs_.empty()) throw EmptySupport("a finite space needs at least one outcome");
  if (outcomes_.size() != probs_.size()) {
    throw LengthMismatch("outcome names and probabilities differ in length");
  }
  for (double p : probs_) {
    if (!std::isfinite(p)) throw NonFiniteValue("outcome probabilities must be finite");
    // Zero-probability outcomes are rejected rather than dropped so that
    // reported event indices always match the caller's outcome order.
    if (p <= 0.0) throw NegativeProbability("outcome probabilities must be strictly positive");
  }
  const double total = detail::compensated_sum(probs_);
  if (std::abs(total - 1.0) > 1e-9) {
    throw MassNotOne("outcome probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  if (std::abs(total - 1.0) > 1e-12) {
    for (double& p : probs_) p /= total;
  }
  for (const auto& [label, values] : variables_) {
    if (values.size() != probs_.size()) {
      throw LengthMismatch("variable '" + label + "' has " + std::to_string(values.size()) +
                           " values for " + std::to_string(probs_.size()) + " outcomes");
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        throw NonFiniteValue("variable '" + label + "' has a non-finite value");
      }
    }
  }
}

bool FiniteSpace::has_variable(const std::string& label) const {
  return variables_.contains(label);
}

std::span<const double> FiniteSpace::variable(const std::string& label) const {
  const auto it = variables_.find(label);
  if (it == variables_.end()) throw MissingVariable("no variable labeled '" + label + "'");
  return it->second;
}

DiscreteDistribution FiniteSpace::law(const std::string& label) const {
  const auto values = variable(label);
  return from_scenarios(values, probs_);
}

}  // namespace esdual
