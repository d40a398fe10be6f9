// SPDX-License-Identifier: Apache-2.0
//
// Conformal (Moebius) transformations of the round unit sphere indexed by a
// point g of the open unit ball:
//   F_g(p) = (p + (mu <p,g> + lambda) g) / (lambda (<p,g> + 1)),
//   lambda = (1 - |g|^2)^{-1/2},  mu = (lambda - 1)/|g|^2,
// together with the differential dF_g, whose conformal factor is
// (1 - |g|^2)/(<p,g> + 1)^2.

#pragma once

#include "scalarspec/types.hpp"

namespace scalarspec {

/// A point of the open unit ball with its derived conformal coefficients.
/// mu = (lambda - 1)/|g|^2 has a removable singularity at g = 0; it is
/// evaluated through the identity mu = lambda / (1 + sqrt(1 - |g|^2)),
/// which is cancellation-free on the whole ball and equals the series
/// 1/2 + 3|g|^2/8 + ... near the center.
class BallPoint {
public:
  explicit BallPoint(VecX g) : g_(std::move(g)) {
    const double s = g_.squaredNorm();
    if (!(s < 1.0 - 1e-12)) throw BallError("BallPoint: |g| must stay below 1");
    lambda_ = 1.0 / std::sqrt(1.0 - s);
    mu_ = lambda_ / (1.0 + std::sqrt(1.0 - s));
  }

  static BallPoint zero(Index ambient_dim) { return BallPoint(VecX::Zero(ambient_dim)); }

  const VecX& g() const { return g_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  Index dim() const { return g_.size(); }

private:
  VecX g_;
  double lambda_;
  double mu_;
};

/// Image of the unit vector p under F_g; unit-norm by construction.
VecX moebius_map(const BallPoint& g, const VecX& p);

/// Differential dF_g(v) for v tangent to the sphere at p (checked to 1e-10).
/// The (1 - lambda)/|g|^2 coefficient is evaluated as -mu, which is finite
/// at g = 0 where the map reduces to the identity.
VecX moebius_differential(const BallPoint& g, const VecX& p, const VecX& v);

/// Conformal factor (1 - |g|^2)/(<p,g> + 1)^2 at p.
double conformal_factor(const BallPoint& g, const VecX& p);

}  // namespace scalarspec
