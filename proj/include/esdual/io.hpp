#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "esdual/discrete_distribution.hpp"
#include "esdual/duality.hpp"
#include "esdual/finite_space.hpp"
#include "esdual/level.hpp"

namespace esdual::io {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitInvalidParameter = 3;
inline constexpr int kExitVerificationFailure = 4;
inline constexpr int kExitSizeLimit = 5;

/// Scenario CSV: rows of (value) or (value, probability), comma separated,
/// '.' decimal point, optional single header detected by a non-numeric
/// first token. NaN and infinities are rejected.
struct ScenarioData {
  std::vector<double> values;
  std::vector<double> probabilities;  // empty when the file had one column
  bool has_probabilities = false;
};

ScenarioData parse_scenario_csv(std::istream& in);  // throws ParseError

/// Joint CSV: header line required, then rows of (probability, x, y).
struct JointData {
  std::vector<double> probabilities;
  std::vector<double> x;
  std::vector<double> y;
};

JointData parse_joint_csv(std::istream& in);  // throws ParseError

DiscreteDistribution scenario_distribution(const ScenarioData& data);

/// One outcome per row (no merging), single variable "X"; row order kept so
/// reported event indices are data-row indices.
FiniteSpace scenario_space(const ScenarioData& data);

/// Variables "X" and "Y" on one outcome per row.
FiniteSpace joint_space(const JointData& data);

/// Rounds to 12 significant digits (and squashes negative zero); applied to
/// every real before serialization so reports are byte-stable.
double round_sig(double v);

/// Per-level verification outcome, also usable directly from tests.
struct LevelVerification {
  double alpha = 0.0;
  double es = 0.0;
  double dual_value = 0.0;
  double max_sampled_objective = 0.0;
  bool attainment_pass = false;
  bool dominance_pass = false;
  bool dichotomy_pass = false;

  bool pass() const { return attainment_pass && dominance_pass && dichotomy_pass; }
};

/// Attainment: q is feasible and E_q(-X) reproduces the shortfall to 1e-12.
bool check_attainment(const DiscreteDistribution& d, Level alpha, const DensityMeasure& q);

/// Dominance: E_q(-X) never exceeds the shortfall by more than 1e-9.
bool check_dominance(const DiscreteDistribution& d, Level alpha, const DensityMeasure& q);

LevelVerification verify_at_level(const DiscreteDistribution& d, Level alpha, int samples,
                                  std::uint64_t seed);

/// A serialized JSON report plus the exit code the process should return.
struct CommandResult {
  int exit_code = kExitOk;
  std::string report;
};

CommandResult run_compute(const DiscreteDistribution& d, Level alpha);
CommandResult run_verify(const DiscreteDistribution& d, std::span<const double> alpha_grid,
                         int samples, std::uint64_t seed);
CommandResult run_subadd(const FiniteSpace& space, std::span<const double> alpha_grid);
CommandResult run_wce(const FiniteSpace& space, Level alpha);
CommandResult run_quantile(const DiscreteDistribution& d, std::span<const double> alpha_grid);

/// Exit code for a library error escaping a subcommand.
int exit_code_for(const Error& e);

}  // namespace esdual::io
