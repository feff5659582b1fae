#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "esdual/io.hpp"

namespace {

using namespace esdual;

struct Flags {
  std::string input;
  std::string output;
  std::optional<double> alpha;
  std::vector<double> alpha_grid;
  int samples = 10000;
  std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--input", flags.input, "Input CSV file");
  cmd->add_option("--output", flags.output, "Output JSON file (default stdout)");
  cmd->add_option("--alpha", flags.alpha, "Risk level in (0,1)");
  cmd->add_option("--alpha-grid", flags.alpha_grid, "Comma-separated risk levels")
      ->delimiter(',');
  cmd->add_option("--samples", flags.samples, "Feasible measures sampled per level (verify)");
  cmd->add_option("--seed", flags.seed, "Sampling seed (verify)");
}

int fail(int code, const std::string& message) {
  std::cerr << "esdual: " << message << "\n";
  return code;
}

// Single alpha, grid, or both-is-an-error depending on the subcommand.
std::vector<double> resolve_grid(const Flags& flags) {
  if (flags.alpha && !flags.alpha_grid.empty()) {
    throw InvalidLevel("pass either --alpha or --alpha-grid, not both");
  }
  if (flags.alpha) return {*flags.alpha};
  if (!flags.alpha_grid.empty()) return flags.alpha_grid;
  throw InvalidLevel("an --alpha or --alpha-grid value is required");
}

Level resolve_single_alpha(const Flags& flags) {
  if (!flags.alpha_grid.empty()) {
    throw InvalidLevel("this subcommand takes a single --alpha");
  }
  if (!flags.alpha) throw InvalidLevel("an --alpha value is required");
  return Level(*flags.alpha);
}

std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw ParseError(0, "an --input file is required");
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot read input file '" + path + "'");
  return in;
}

int emit(const io::CommandResult& result, const std::string& output) {
  if (output.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(output);
    if (!out) return fail(io::kExitParseError, "cannot write output file '" + output + "'");
    out << result.report;
  }
  return result.exit_code;
}

std::vector<double> validated_grid(const Flags& flags) {
  const auto grid = resolve_grid(flags);
  for (double a : grid) (void)Level{a};
  return grid;
}

int dispatch(const std::string& command, const Flags& flags) {
  if (command == "compute") {
    const Level alpha = resolve_single_alpha(flags);
    auto in = open_input(flags.input);
    const auto d = io::scenario_distribution(io::parse_scenario_csv(in));
    return emit(io::run_compute(d, alpha), flags.output);
  }
  if (command == "verify") {
    const auto grid = validated_grid(flags);
    if (flags.samples < 1) throw PreconditionViolated("--samples must be at least 1");
    auto in = open_input(flags.input);
    const auto d = io::scenario_distribution(io::parse_scenario_csv(in));
    return emit(io::run_verify(d, grid, flags.samples, flags.seed), flags.output);
  }
  if (command == "subadd") {
    const auto grid = validated_grid(flags);
    auto in = open_input(flags.input);
    const auto space = io::joint_space(io::parse_joint_csv(in));
    return emit(io::run_subadd(space, grid), flags.output);
  }
  if (command == "wce") {
    const Level alpha = resolve_single_alpha(flags);
    auto in = open_input(flags.input);
    const auto space = io::scenario_space(io::parse_scenario_csv(in));
    return emit(io::run_wce(space, alpha), flags.output);
  }
  if (command == "quantile") {
    const auto grid = validated_grid(flags);
    auto in = open_input(flags.input);
    const auto d = io::scenario_distribution(io::parse_scenario_csv(in));
    return emit(io::run_quantile(d, grid), flags.output);
  }
  return fail(io::kExitInvalidParameter, "unknown subcommand '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected Shortfall, duality and verification on finite-support laws"};
  app.require_subcommand(1);

  Flags flags;
  for (const char* name : {"compute", "verify", "subadd", "wce", "quantile"}) {
    add_common_flags(app.add_subcommand(name), flags);
  }
  app.get_subcommand("compute")->description("VaR/ES report with the worst-case measure");
  app.get_subcommand("verify")->description("Dual representation checks over an alpha grid");
  app.get_subcommand("subadd")->description("Subadditivity check on a joint (p,x,y) file");
  app.get_subcommand("wce")->description("Worst conditional expectation on a small space");
  app.get_subcommand("quantile")->description("Upper quantiles and VaR over an alpha grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return io::kExitInvalidParameter;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), flags);
  } catch (const Error& e) {
    return fail(io::exit_code_for(e), e.what());
  } catch (const std::exception& e) {
    return fail(io::kExitInvalidParameter, e.what());
  }
}
