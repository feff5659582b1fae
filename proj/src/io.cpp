#include "esdual/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "esdual/approximation.hpp"
#include "esdual/risk_measures.hpp"

namespace esdual::io {

namespace {

using nlohmann::json;

constexpr double kCrossOracleTolerance = 1e-9;
constexpr double kAttainmentTolerance = 1e-12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_real(std::string_view token) {
  double value{};
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

double parse_finite(std::string_view token, std::size_t line_no) {
  const auto value = parse_real(token);
  if (!value) {
    throw ParseError(line_no, "expected a real number, got '" + std::string(token) + "'");
  }
  if (!std::isfinite(*value)) {
    throw ParseError(line_no, "non-finite value '" + std::string(token) + "' rejected");
  }
  return *value;
}

struct CsvRow {
  std::size_t line_no;
  std::vector<std::string_view> fields;
};

// Materializes non-blank lines with their 1-based line numbers.
std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

double round_to_12_digits(double v) {
  if (v == 0.0) return 0.0;  // squash -0.0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  double out{};
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), out);
  return out;
}

json rounded(double v) { return json(round_to_12_digits(v)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed ^ (stream * 0x9e3779b97f4a7c15ull + 0x1234567u);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

double round_sig(double v) { return round_to_12_digits(v); }

ScenarioData parse_scenario_csv(std::istream& in) {
  const auto lines = read_lines(in);
  ScenarioData data;
  bool header_checked = false;
  std::size_t expected_fields = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view raw = lines[i];
    if (trim(raw).empty()) continue;
    const auto fields = split_fields(raw);
    if (!header_checked) {
      header_checked = true;
      if (!parse_real(fields[0])) continue;  // single optional header line
    }
    if (fields.size() != 1 && fields.size() != 2) {
      throw ParseError(line_no, "expected 1 or 2 columns, got " + std::to_string(fields.size()));
    }
    if (expected_fields == 0) {
      expected_fields = fields.size();
    } else if (fields.size() != expected_fields) {
      throw ParseError(line_no, "inconsistent column count");
    }
    data.values.push_back(parse_finite(fields[0], line_no));
    if (fields.size() == 2) data.probabilities.push_back(parse_finite(fields[1], line_no));
  }
  if (data.values.empty()) throw ParseError(lines.size(), "no scenario rows found");
  data.has_probabilities = expected_fields == 2;
  return data;
}

JointData parse_joint_csv(std::istream& in) {
  const auto lines = read_lines(in);
  JointData data;
  bool header_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    const auto fields = split_fields(lines[i]);
    if (!header_seen) {
      header_seen = true;
      if (parse_real(fields[0])) {
        throw ParseError(line_no, "joint files require a header line");
      }
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 columns (probability,x,y), got " +
                                    std::to_string(fields.size()));
    }
    data.probabilities.push_back(parse_finite(fields[0], line_no));
    data.x.push_back(parse_finite(fields[1], line_no));
    data.y.push_back(parse_finite(fields[2], line_no));
  }
  if (data.probabilities.empty()) throw ParseError(lines.size(), "no joint rows found");
  return data;
}

DiscreteDistribution scenario_distribution(const ScenarioData& data) {
  if (data.has_probabilities) return from_scenarios(data.values, data.probabilities);
  return from_sample(data.values);
}

FiniteSpace scenario_space(const ScenarioData& data) {
  std::vector<double> probs = data.probabilities;
  if (!data.has_probabilities) {
    probs.assign(data.values.size(), 1.0 / static_cast<double>(data.values.size()));
  }
  return FiniteSpace(std::move(probs), {{"X", data.values}});
}

FiniteSpace joint_space(const JointData& data) {
  return FiniteSpace(data.probabilities, {{"X", data.x}, {"Y", data.y}});
}

bool check_attainment(const DiscreteDistribution& d, Level alpha, const DensityMeasure& q) {
  if (!is_feasible(q, alpha)) return false;
  const double attained = expectation_under(d, q, Sign::minus_x);
  return std::abs(attained - expected_shortfall(d, alpha)) <= kAttainmentTolerance;
}

bool check_dominance(const DiscreteDistribution& d, Level alpha, const DensityMeasure& q) {
  return expectation_under(d, q, Sign::minus_x) <=
         expected_shortfall(d, alpha) + kCrossOracleTolerance;
}

namespace {

// Sign dichotomy at one shift: the shifted law's acceptance branch must be
// consistent, its witness (when present) must realize a negative
// expectation, and on the non-positive branch no sampled measure may reach
// a negative expectation of the shifted variable.
bool dichotomy_holds_at(const DiscreteDistribution& d, Level alpha, double m, int samples,
                        std::uint64_t seed) {
  const DiscreteDistribution shifted = shift(d, m);
  const AcceptanceCheck check = acceptance_check(shifted, alpha);
  if ((check.sign == EsSign::positive) != (check.es > 0.0)) return false;

  if (check.sign == EsSign::positive) {
    if (!check.witness || !is_feasible(*check.witness, alpha)) return false;
    const double value = expectation_under(shifted, *check.witness, Sign::plus_x);
    return std::abs(value + check.es) <= kCrossOracleTolerance && value <= kAttainmentTolerance;
  }

  if (dual_value_greedy(shifted, alpha) > kCrossOracleTolerance) return false;
  for (int i = 0; i < samples; ++i) {
    const DensityMeasure q = sample_feasible_measure(shifted, alpha, mix_seed(seed, i));
    if (expectation_under(shifted, q, Sign::plus_x) < -kCrossOracleTolerance) return false;
  }
  return true;
}

}  // namespace

LevelVerification verify_at_level(const DiscreteDistribution& d, Level alpha, int samples,
                                  std::uint64_t seed) {
  LevelVerification out;
  out.alpha = alpha.value();
  out.es = expected_shortfall(d, alpha);
  out.dual_value = dual_value_greedy(d, alpha);

  out.attainment_pass = check_attainment(d, alpha, worst_case_measure(d, alpha)) &&
                        std::abs(out.es - out.dual_value) <= kCrossOracleTolerance;

  out.dominance_pass = true;
  double max_objective = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const DensityMeasure q = sample_feasible_measure(d, alpha, mix_seed(seed, i));
    const double objective = expectation_under(d, q, Sign::minus_x);
    max_objective = std::max(max_objective, objective);
    if (!is_feasible(q, alpha) || objective > out.es + kCrossOracleTolerance) {
      out.dominance_pass = false;
    }
  }
  out.max_sampled_objective = max_objective;

  const int dichotomy_samples = std::min(samples, 256);
  out.dichotomy_pass = true;
  int stream = 1;
  for (double m : {out.es - 1.0, out.es, out.es + 1.0}) {
    if (!dichotomy_holds_at(d, alpha, m, dichotomy_samples, mix_seed(seed, 0xd1c0 + stream))) {
      out.dichotomy_pass = false;
    }
    ++stream;
  }
  return out;
}

CommandResult run_compute(const DiscreteDistribution& d, Level alpha) {
  const RiskReport report = risk_report(d, alpha);
  const DensityMeasure worst = worst_case_measure(d, alpha);
  const double dual_value = dual_value_greedy(d, alpha);
  const double gap = std::abs(report.es - dual_value);

  json worst_rows = json::array();
  for (std::size_t k = 0; k < d.size(); ++k) {
    worst_rows.push_back({{"atom", rounded(d.atom(k))},
                          {"prob", rounded(d.prob(k))},
                          {"density", rounded(worst.density(k))}});
  }
  const json body = {{"alpha", rounded(alpha.value())},
                     {"var", rounded(report.var_at_alpha)},
                     {"es", rounded(report.es)},
                     {"es_oracle", rounded(report.es_oracle)},
                     {"dual_value", rounded(dual_value)},
                     {"duality_gap", rounded(gap)},
                     {"worst_case", worst_rows}};

  const bool consistent = gap <= kCrossOracleTolerance &&
                          std::abs(report.es - report.es_oracle) <= kCrossOracleTolerance &&
                          check_attainment(d, alpha, worst);
  return CommandResult{consistent ? kExitOk : kExitVerificationFailure, body.dump(2) + "\n"};
}

CommandResult run_verify(const DiscreteDistribution& d, std::span<const double> alpha_grid,
                         int samples, std::uint64_t seed) {
  json results = json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    const LevelVerification v =
        verify_at_level(d, Level(alpha_grid[i]), samples, mix_seed(seed, 0xa1fa + i));
    all_pass = all_pass && v.pass();
    results.push_back({{"alpha", rounded(v.alpha)},
                       {"es", rounded(v.es)},
                       {"dual_value", rounded(v.dual_value)},
                       {"max_sampled_objective", rounded(v.max_sampled_objective)},
                       {"attainment_pass", v.attainment_pass},
                       {"dominance_pass", v.dominance_pass},
                       {"dichotomy_pass", v.dichotomy_pass},
                       {"pass", v.pass()}});
  }
  const json body = {{"samples", samples}, {"results", results}, {"pass", all_pass}};
  return CommandResult{all_pass ? kExitOk : kExitVerificationFailure, body.dump(2) + "\n"};
}

CommandResult run_subadd(const FiniteSpace& space, std::span<const double> alpha_grid) {
  json results = json::array();
  bool all_hold = true;
  for (double a : alpha_grid) {
    const SubadditivityCheck check = verify_subadditivity(space, "X", "Y", Level(a));
    const double es_x = expected_shortfall(space.law("X"), Level(a));
    const double es_y = expected_shortfall(space.law("Y"), Level(a));
    all_hold = all_hold && check.holds;
    results.push_back({{"alpha", rounded(a)},
                       {"es_x", rounded(es_x)},
                       {"es_y", rounded(es_y)},
                       {"es_sum", rounded(check.lhs)},
                       {"holds", check.holds}});
  }
  const json body = {{"results", results}, {"pass", all_hold}};
  return CommandResult{all_hold ? kExitOk : kExitVerificationFailure, body.dump(2) + "\n"};
}

CommandResult run_wce(const FiniteSpace& space, Level alpha) {
  const WorstConditional wce = worst_conditional_expectation(space, "X", alpha);
  const double es = expected_shortfall(space.law("X"), alpha);
  json event = json::array();
  for (std::size_t i : wce.event) event.push_back(i);
  const json body = {{"alpha", rounded(alpha.value())},
                     {"wce", rounded(wce.value)},
                     {"es", rounded(es)},
                     {"gap", rounded(es - wce.value)},
                     {"argmax_event", event}};
  const bool consistent = wce.value <= es + kCrossOracleTolerance;
  return CommandResult{consistent ? kExitOk : kExitVerificationFailure, body.dump(2) + "\n"};
}

CommandResult run_quantile(const DiscreteDistribution& d, std::span<const double> alpha_grid) {
  json results = json::array();
  for (double a : alpha_grid) {
    const Level level(a);
    results.push_back({{"alpha", rounded(a)},
                       {"upper_quantile", rounded(upper_quantile(d, level))},
                       {"var", rounded(value_at_risk(d, level))}});
  }
  const json body = {{"results", results}};
  return CommandResult{kExitOk, body.dump(2) + "\n"};
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_level:
    case Errc::invalid_bounds:
    case Errc::invalid_interval:
    case Errc::invalid_delta:
    case Errc::precondition_violated:
      return kExitInvalidParameter;
    case Errc::too_many_outcomes:
      return kExitSizeLimit;
    default:
      return kExitParseError;
  }
}

}  // namespace esdual::io
