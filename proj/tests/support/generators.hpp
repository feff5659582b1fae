#pragma once

// Deterministic corpus generators shared by the unit and acceptance suites.
// Randomness is hand-rolled on top of splitmix64 so corpora are byte-stable
// across standard libraries and runs.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "esdual/discrete_distribution.hpp"
#include "esdual/finite_space.hpp"
#include "esdual/level.hpp"

namespace esdual::testing {

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Inclusive bounds.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (next() & 1u) != 0; }

  // Cauchy(scale) resampled into [-limit, limit]: heavy tails, bounded range
  // so absolute 1e-12 identities stay within double precision.
  double heavy_tailed(double scale = 10.0, double limit = 1000.0) {
    while (true) {
      const double x = scale * std::tan(3.14159265358979323846 * (uniform01() - 0.5));
      if (std::abs(x) <= limit) return x;
    }
  }

 private:
  std::uint64_t state_;
};

// Flat Dirichlet weights via normalized exponentials.
inline std::vector<double> dirichlet(TestRng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform01() * (1.0 - 1e-12));
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

inline DiscreteDistribution random_distribution(TestRng& rng, std::size_t max_atoms = 200) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_atoms)));
  std::vector<double> values(n);
  for (double& v : values) v = rng.heavy_tailed();
  return from_scenarios(values, dirichlet(rng, n));
}

inline Level random_level(TestRng& rng) {
  // Mostly mid-range, occasionally deep in the tail.
  const double a = rng.coin() || rng.coin() ? rng.uniform(0.02, 0.98) : rng.uniform(0.001, 0.02);
  return Level(a);
}

// Space with heavy-tailed variables "X" and "Y".
inline FiniteSpace random_space(TestRng& rng, std::size_t min_outcomes = 2,
                                std::size_t max_outcomes = 10) {
  const auto m = static_cast<std::size_t>(rng.uniform_int(
      static_cast<std::int64_t>(min_outcomes), static_cast<std::int64_t>(max_outcomes)));
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = rng.heavy_tailed();
    y[i] = rng.heavy_tailed();
  }
  return FiniteSpace(dirichlet(rng, m), {{"X", std::move(x)}, {"Y", std::move(y)}});
}

// Dyadic corpus: atoms on the 2^-8 grid in [-256, 256], probabilities on the
// 2^-12 grid, levels 2^-s. Every shortfall/shift/dual computation on these
// inputs is exact in double precision, so sign dichotomies can be asserted
// without tolerance.
inline DiscreteDistribution dyadic_distribution(TestRng& rng, std::size_t max_atoms = 200) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_atoms)));
  std::set<std::int64_t> grid_points;
  while (grid_points.size() < n) grid_points.insert(rng.uniform_int(-65536, 65536));
  std::vector<double> values;
  values.reserve(n);
  for (std::int64_t k : grid_points) values.push_back(static_cast<double>(k) / 256.0);

  // Composition of 4096 into n positive parts.
  std::set<std::int64_t> cuts;
  while (cuts.size() < n - 1) cuts.insert(rng.uniform_int(1, 4095));
  std::vector<double> probs;
  probs.reserve(n);
  std::int64_t prev = 0;
  for (std::int64_t c : cuts) {
    probs.push_back(static_cast<double>(c - prev) / 4096.0);
    prev = c;
  }
  probs.push_back(static_cast<double>(4096 - prev) / 4096.0);
  return from_scenarios(values, probs);
}

inline Level dyadic_level(TestRng& rng) {
  return Level(std::ldexp(1.0, -static_cast<int>(rng.uniform_int(1, 5))));
}

}  // namespace esdual::testing
