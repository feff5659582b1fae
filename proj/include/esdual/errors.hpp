#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esdual {

// Error categories; the CLI maps these onto process exit codes.
enum class Errc {
  length_mismatch,
  empty_support,
  negative_probability,
  mass_not_one,
  non_finite_value,
  invalid_level,
  invalid_bounds,
  invalid_interval,
  invalid_delta,
  too_many_outcomes,
  base_mismatch,
  missing_variable,
  precondition_violated,
  parse_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& w) : Error(Errc::length_mismatch, w) {}
};
struct EmptySupport : Error {
  explicit EmptySupport(const std::string& w) : Error(Errc::empty_support, w) {}
};
struct NegativeProbability : Error {
  explicit NegativeProbability(const std::string& w) : Error(Errc::negative_probability, w) {}
};
struct MassNotOne : Error {
  explicit MassNotOne(const std::string& w) : Error(Errc::mass_not_one, w) {}
};
struct NonFiniteValue : Error {
  explicit NonFiniteValue(const std::string& w) : Error(Errc::non_finite_value, w) {}
};
struct InvalidLevel : Error {
  explicit InvalidLevel(const std::string& w) : Error(Errc::invalid_level, w) {}
};
struct InvalidBounds : Error {
  explicit InvalidBounds(const std::string& w) : Error(Errc::invalid_bounds, w) {}
};
struct InvalidInterval : Error {
  explicit InvalidInterval(const std::string& w) : Error(Errc::invalid_interval, w) {}
};
struct InvalidDelta : Error {
  explicit InvalidDelta(const std::string& w) : Error(Errc::invalid_delta, w) {}
};
struct TooManyOutcomes : Error {
  explicit TooManyOutcomes(const std::string& w) : Error(Errc::too_many_outcomes, w) {}
};
struct BaseMismatch : Error {
  explicit BaseMismatch(const std::string& w) : Error(Errc::base_mismatch, w) {}
};
struct MissingVariable : Error {
  explicit MissingVariable(const std::string& w) : Error(Errc::missing_variable, w) {}
};
struct PreconditionViolated : Error {
  explicit PreconditionViolated(const std::string& w) : Error(Errc::precondition_violated, w) {}
};

// Carries the 1-based line number of the offending CSV row.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& w)
      : Error(Errc::parse_error, "line " + std::to_string(line) + ": " + w), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace esdual
