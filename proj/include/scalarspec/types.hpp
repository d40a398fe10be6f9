// SPDX-License-Identifier: Apache-2.0
//
// Common scalar/vector aliases, error types, and small numeric utilities
// shared by every scalarspec module.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace scalarspec {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Error taxonomy.  Every module throws one of these; the base class lets
// callers (CLI, suites) catch anything domain-specific in one handler.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension below the minimum a formula is defined for.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A parameter outside its documented range (m, l_max, counts, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Scalar-curvature regime the construction does not support (r < 1).
class RegimeError : public Error {
public:
  using Error::Error;
};

/// Mean curvature has the wrong sign for the chosen normal.
class OrientationError : public Error {
public:
  using Error::Error;
};

/// A stated precondition (e.g. the Gauss constraint) fails numerically.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Operator coefficients lose positivity; the model is degenerate.
class EllipticityError : public Error {
public:
  using Error::Error;
};

/// Conformal parameter left the open unit ball.
class BallError : public Error {
public:
  using Error::Error;
};

/// Grid too coarse for a discrete solve.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// Iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Two algebraic routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// A weight vector that must be positive is not.
class WeightError : public Error {
public:
  using Error::Error;
};

/// Input violates a theorem hypothesis (e.g. n < 5 for the gradient gap).
class HypothesisError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic RNG.  Standard-library distributions are not pinned across
// implementations, so seeded sweeps own their generator.
// ---------------------------------------------------------------------------

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Standard normal vector of length n.
  VecX normal_vector(Index n) {
    VecX v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Compensated summation; keeps quadrature sums reorder-stable to ~1e-16.
// ---------------------------------------------------------------------------

class KahanSum {
public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Surface measure of the round d-sphere of radius rho embedded in R^{d+1}.
inline double sphere_volume(int dim, double rho) {
  if (dim < 0 || rho <= 0.0) throw ParameterError("sphere_volume: bad dimension or radius");
  // 2 pi^{(d+1)/2} / Gamma((d+1)/2) * rho^d
  const double half = 0.5 * (dim + 1);
  const double unit = 2.0 * std::pow(M_PI, half) / std::tgamma(half);
  return unit * std::pow(rho, dim);
}

/// |a - b| measured against max(1, |a|, |b|).
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace scalarspec
