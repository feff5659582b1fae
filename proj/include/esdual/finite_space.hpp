#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "esdual/discrete_distribution.hpp"

namespace esdual {

/// An explicit finite probability space: named outcomes with strictly
/// positive probabilities summing to one, plus labeled random variables
/// given by their values on each outcome. Immutable after construction.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> outcomes, std::vector<double> probabilities,
              std::map<std::string, std::vector<double>> variables);

  /// Outcomes named by their index ("0", "1", ...).
  FiniteSpace(std::vector<double> probabilities,
              std::map<std::string, std::vector<double>> variables);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const std::string> outcomes() const noexcept { return outcomes_; }
  std::span<const double> probs() const noexcept { return probs_; }

  bool has_variable(const std::string& label) const;
  std::span<const double> variable(const std::string& label) const;  // throws MissingVariable
  const std::map<std::string, std::vector<double>>& variables() const noexcept {
    return variables_;
  }

  /// Marginal law of the labeled variable (duplicates merged).
  DiscreteDistribution law(const std::string& label) const;

 private:
  void validate();

  std::vector<std::string> outcomes_;
  std::vector<double> probs_;
  std::map<std::string, std::vector<double>> variables_;
};

}  // namespace esdual
