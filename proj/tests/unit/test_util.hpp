#pragma once

#include <cmath>
#include <random>

namespace testutil {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Deterministic uniform generator for property-style tests.
class Rng {
 public:
  explicit Rng(unsigned seed = 20271u) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }

 private:
  std::mt19937 gen_;
};

}  // namespace testutil
