#pragma once

#include <cstdint>
#include <random>

#include "rdlie/alternating.hpp"
#include "rdlie/linear.hpp"

namespace rdlie::testing {

/// Seeded source of small exact test data.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }

  /// Integer in [−range, range], zero with extra probability to keep maps sparse.
  Rational scalar(long range = 2, double zero_bias = 0.3) {
    if (coin(zero_bias)) return Rational(0);
    return Rational(integer(-range, range));
  }

  Vector vector(std::size_t n, long range = 2) {
    Vector v(n);
    for (auto& x : v) x = scalar(range);
    return v;
  }

  RationalMatrix matrix(std::size_t rows, std::size_t cols, long range = 2) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar(range);
    }
    return m;
  }

  /// Invertible integer matrix: a product of random elementary operations.
  RationalMatrix unimodular(std::size_t n, int steps = 6) {
    auto m = RationalMatrix::identity(n);
    if (n < 2) return coin() ? m : Rational(-1) * m;
    for (int s = 0; s < steps; ++s) {
      std::size_t a = index(n), b = index(n);
      if (a == b) continue;
      Rational f(integer(-1, 1));
      for (std::size_t c = 0; c < n; ++c) m(a, c) += f * m(b, c);
    }
    return m;
  }

  AlternatingMap alternating(std::size_t domain, std::size_t arity, std::size_t target, long range = 2) {
    AlternatingMap f(domain, arity, target);
    for (auto m : f.tuples()) {
      auto v = f.values(m);
      for (auto& x : v) x = scalar(range);
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace rdlie::testing
