// SPDX-License-Identifier: Apache-2.0
//
// Conformal balancing of sampled hypersurfaces: the weighted-centering
// solve over the Moebius family (damped Newton on the image barycenter),
// the conformal log-factor field rho and its gradient, the integral
// identities and inequalities behind the second-eigenvalue estimate, and
// the min-max verification chain itself.

#pragma once

#include "scalarspec/moebius.hpp"
#include "scalarspec/sampling.hpp"

#include <optional>

namespace scalarspec {

// ---------------------------------------------------------------------------
// The rho field
// ---------------------------------------------------------------------------

/// Per-sample conformal data for a ball point g:
///   f = <x, g>,  gtilde = <normal, g>,  rho = -ln lambda - ln(1 + f),
///   grad rho_i = -<g, e_i> / (1 + f)  in the principal frame.
/// e^{2 rho} equals the conformal factor (1 - |g|^2)/(1 + f)^2 pointwise.
struct RhoField {
  VecX f;
  VecX gtilde;
  VecX rho;
  MatX grad_rho;  // n x M

  static RhoField build(const SampledHypersurface& sample, const BallPoint& g);
};

/// Coordinates of the Moebius images F_g(x_j): column j holds the n+2
/// test-function values f^A(x_j).  Columns are unit vectors, so the
/// test functions square-sum to one at every sample.
MatX test_functions(const SampledHypersurface& sample, const BallPoint& g);

// ---------------------------------------------------------------------------
// Centering
// ---------------------------------------------------------------------------

struct CenteringResult {
  BallPoint g;
  int iterations = 0;
  double residual = 0.0;  // |sum w u F_g(x)|
  double mass = 0.0;      // sum w u
};

/// Find g in the unit ball with |sum_j w_j u_j F_g(x_j)| <= tol * sum w u.
/// Damped Newton with a finite-difference Jacobian (step 1e-6), halving
/// line search, initial guess -sum(w u x)/sum(w u) clamped to |g| <= 0.9,
/// and the ball safeguard |g| <= 1 - 1e-6.  Throws ConvergenceError after
/// 200 iterations.
CenteringResult centering_solve(const SampledHypersurface& sample, const VecX& u, double tol);

// ---------------------------------------------------------------------------
// Integral identities and inequalities
// ---------------------------------------------------------------------------

/// sum_A int (J_s f^A) f^A dv for the centered test functions, via the
/// closed form
///   int n(n-1) H e^{2 rho} dv - int (n(n-1)/2)(2H - (n-2)H3 + n H H2) dv.
double jacobi_rayleigh_sum(const SampledHypersurface& sample, const BallPoint& g);

/// Quadrature of the conformal mean-curvature inequality:
///   lhs    = int H e^{2 rho} dv
///   bound  = int (H + H2^2/H) dv - int [gradient gap] dv
///   defect = int (H2 + gtilde H/(1+f))^2 / H dv,
/// with lhs = bound - defect as an identity and lhs <= bound.  Both are
/// checked internally (identity to quad_tol relative, inequality to
/// 1e-9 * Vol) and violations throw ConsistencyError.
struct ConformalMeanBound {
  double lhs = 0.0;
  double bound = 0.0;
  double equality_defect = 0.0;
};

ConformalMeanBound conformal_mean_bound(const SampledHypersurface& sample, const BallPoint& g,
                                        double quad_tol = 1e-6);

/// int [ H |grad rho|^2 - (2/(n(n-1))) sum (nH delta_ij - h_ij) rho_i rho_j ] dv,
/// evaluated through the pointwise gap; nonnegative for n >= 5 up to
/// -1e-9 * Vol.  Throws HypothesisError for n < 5.
double gradient_gap_integral(const SampledHypersurface& sample, const BallPoint& g);

// ---------------------------------------------------------------------------
// Min-max chain
// ---------------------------------------------------------------------------

/// Result of the second-eigenvalue min-max verification:
///   lambda2 * Vol <= sum_A int (J_s f^A) f^A
///                 <= n(n-1) int (H2^2/H + (n-2)/2 H3 - n H H2 / 2) dv
///                 <= (n(n-1)(n-2)/2) max H3 * Vol   (r = 1 only).
/// Slacks are the right-minus-left differences; pass means every slack is
/// at least -tol * Vol.  The chain is theorem-backed when u is a first
/// eigenfunction (constant on these models); other u are stress inputs.
struct MinmaxReport {
  CenteringResult centering;
  double volume = 0.0;
  double lambda2 = 0.0;
  double rayleigh_sum = 0.0;
  double bound_symmetric = 0.0;             // n(n-1) int (H2^2/H + ...) dv
  std::optional<double> bound_h3 = {};      // r = 1 closed form
  double slack_minmax = 0.0;                // rayleigh_sum - lambda2 * Vol
  double slack_symmetric = 0.0;             // bound_symmetric - rayleigh_sum
  std::optional<double> slack_h3 = {};
  bool pass = false;
};

MinmaxReport minmax_chain_check(const SampledHypersurface& sample, const VecX& u, double tol);

/// For a balanced Clifford product (r = 1, H2 = 0 to 1e-10): apply the
/// stability operator to the ambient coordinates analytically and compare
/// the resulting eigenvalue with lambda2 and with (n(n-1)(n-2)/2) H3.
/// Returns the largest residual, or nullopt when the hypotheses fail.
std::optional<double> position_eigenfunction_check(const CliffordProduct& model);

}  // namespace scalarspec
