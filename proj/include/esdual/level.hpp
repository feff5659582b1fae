#pragma once

#include <string>

#include "esdual/errors.hpp"

namespace esdual {

/// A risk level in the open interval (0, 1). Construction rejects anything
/// else, including NaN, so downstream code never re-validates.
class Level {
 public:
  explicit Level(double value) : value_(value) {
    if (!(value > 0.0 && value < 1.0)) {
      throw InvalidLevel("risk level must lie strictly between 0 and 1, got " +
                         std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }

 private:
  double value_;
};

}  // namespace esdual
