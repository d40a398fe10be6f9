// SPDX-License-Identifier: Apache-2.0
//
// Scalar calculus of curvature invariants for hypersurfaces of the unit
// sphere: normalized symmetric functions of the principal curvatures, the
// Newton identities linking them to power sums, the Gauss relation for the
// normalized scalar curvature, and the zero-order coefficient of the
// stability (Jacobi) operator.  Everything here is a pure function; the free
// functions accept any dense Eigen expression of the right shape.

#pragma once

#include "scalarspec/types.hpp"

#include <algorithm>
#include <array>

namespace scalarspec {

/// The n principal curvatures at a point, n >= 3, all finite.
struct PrincipalCurvatures {
  VecX k;

  explicit PrincipalCurvatures(VecX values) : k(std::move(values)) {
    if (k.size() < 3) throw DimensionError("PrincipalCurvatures: need n >= 3");
    if (!k.allFinite()) throw ParameterError("PrincipalCurvatures: non-finite entry");
  }

  int n() const { return static_cast<int>(k.size()); }
};

/// Pointwise (or homogeneous-model) curvature data: mean curvatures H, H2,
/// H3, squared second-fundamental-form norm S, cubic power sum f3, and the
/// normalized scalar curvature r from the Gauss relation
///   n(n-1) r = n(n-1) + n^2 H^2 - S.
template <typename Scalar>
struct CurvatureInvariantsT {
  int n = 0;
  Scalar H = 0;
  Scalar H2 = 0;
  Scalar H3 = 0;
  Scalar S = 0;
  Scalar f3 = 0;
  Scalar r = 0;
};

using CurvatureInvariants = CurvatureInvariantsT<double>;

/// Power sum p3 = sum k_i^3 recovered from the normalized symmetric
/// functions via the Newton identity.
template <typename Scalar>
Scalar newton_f3(int n, Scalar H, Scalar H2, Scalar H3) {
  if (n < 3) throw DimensionError("newton_f3: need n >= 3");
  const Scalar nn = Scalar(n);
  return nn * nn * nn * H * H * H + Scalar(0.5) * nn * (nn - 1) * (nn - 2) * H3 -
         Scalar(1.5) * nn * nn * (nn - 1) * H * H2;
}

/// Power sum p2 = sum k_i^2 (the norm S) from H and H2.
template <typename Scalar>
Scalar newton_S(int n, Scalar H, Scalar H2) {
  if (n < 2) throw DimensionError("newton_S: need n >= 2");
  const Scalar nn = Scalar(n);
  return nn * nn * H * H - nn * (nn - 1) * H2;
}

/// All curvature invariants of a principal-curvature vector.  Elementary
/// symmetric sums e1..e3 use the one-pass downward recurrence
/// e_j <- e_j + k e_{j-1}, so cost is O(n) per curvature with no subset
/// enumeration.  Convention-free: the input is not reoriented.
template <typename Derived>
CurvatureInvariantsT<typename Derived::Scalar> invariants_from_curvatures(
    const Eigen::MatrixBase<Derived>& k) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(k.size());
  if (n < 3) throw DimensionError("invariants_from_curvatures: need n >= 3");

  std::array<Scalar, 4> e{Scalar(1), Scalar(0), Scalar(0), Scalar(0)};
  Scalar p2 = 0, p3 = 0;
  for (int i = 0; i < n; ++i) {
    const Scalar ki = k[i];
    if (!std::isfinite(static_cast<double>(ki)))
      throw ParameterError("invariants_from_curvatures: non-finite curvature");
    for (int j = 3; j >= 1; --j) e[j] += ki * e[j - 1];
    p2 += ki * ki;
    p3 += ki * ki * ki;
  }

  const Scalar nn = Scalar(n);
  CurvatureInvariantsT<Scalar> inv;
  inv.n = n;
  inv.H = e[1] / nn;
  inv.H2 = Scalar(2) * e[2] / (nn * (nn - 1));
  inv.H3 = Scalar(6) * e[3] / (nn * (nn - 1) * (nn - 2));
  inv.S = p2;
  inv.f3 = p3;
  inv.r = Scalar(1) + (nn * nn * inv.H * inv.H - inv.S) / (nn * (nn - 1));
  return inv;
}

inline CurvatureInvariants invariants_from_curvatures(const PrincipalCurvatures& pc) {
  return invariants_from_curvatures(pc.k);
}

/// Residual of the Gauss relation n(n-1)r - n(n-1) - n^2 H^2 + S, scaled by
/// max(1, S).  Zero (to rounding) for invariants built from curvatures.
template <typename Scalar>
Scalar gauss_residual(const CurvatureInvariantsT<Scalar>& inv) {
  const Scalar nn = Scalar(inv.n);
  const Scalar raw = nn * (nn - 1) * inv.r - nn * (nn - 1) - nn * nn * inv.H * inv.H + inv.S;
  return raw / std::max(Scalar(1), std::abs(inv.S));
}

/// Zero-order coefficient of the stability operator,
///   n(n-1)H + n H S - f3,
/// cross-checked against the equivalent symmetric-function form
///   (n(n-1)/2) (2H - (n-2) H3 + n H H2).
/// Throws if the two routes disagree beyond 1e-10 relative.
template <typename Scalar>
Scalar jacobi_order0(int n, const CurvatureInvariantsT<Scalar>& inv) {
  if (n != inv.n) throw ParameterError("jacobi_order0: dimension mismatch");
  const Scalar nn = Scalar(n);
  const Scalar direct = nn * (nn - 1) * inv.H + nn * inv.H * inv.S - inv.f3;
  const Scalar reduced =
      Scalar(0.5) * nn * (nn - 1) * (Scalar(2) * inv.H - (nn - 2) * inv.H3 + nn * inv.H * inv.H2);
  const Scalar scale = std::max({Scalar(1), std::abs(direct), std::abs(reduced)});
  if (std::abs(direct - reduced) > Scalar(1e-10) * scale)
    throw ConsistencyError("jacobi_order0: algebraic forms disagree");
  return direct;
}

/// Pointwise gap between the conformal gradient energy H |grad rho|^2 and
/// its Cheng-Yau-weighted counterpart, evaluated in the principal frame:
///   (2/(n(n-1))) sum_i rho_i^2 ((n(n-3)/2) H + k_i).
/// Requires n >= 5, H > 0, and the Gauss constraint n^2 H^2 >= S; under
/// those hypotheses the value is nonnegative (to rounding), which is the
/// pointwise inequality the integral estimates rest on.
inline double cheng_yau_gradient_gap(const PrincipalCurvatures& pc, const VecX& grad_rho) {
  const int n = pc.n();
  if (n < 5) throw DimensionError("cheng_yau_gradient_gap: need n >= 5");
  if (grad_rho.size() != pc.k.size())
    throw ParameterError("cheng_yau_gradient_gap: gradient length mismatch");

  const double H = pc.k.mean();
  if (H <= 0.0) throw OrientationError("cheng_yau_gradient_gap: need H > 0");
  const double S = pc.k.squaredNorm();
  const double nn = n;
  if (nn * nn * H * H - S < -1e-9)
    throw PreconditionError("cheng_yau_gradient_gap: Gauss constraint violated");

  double acc = 0.0;
  const double coef = 0.5 * nn * (nn - 3);
  for (int i = 0; i < n; ++i) acc += grad_rho[i] * grad_rho[i] * (coef * H + pc.k[i]);
  return 2.0 / (nn * (nn - 1)) * acc;
}

/// Deterministic pseudo-random principal curvatures with H > 0 satisfying
/// the Gauss constraint n^2 H^2 - S = n(n-1)(r-1) to rounding.  Draws a
/// trace-free direction and rescales it so the constraint holds exactly.
inline PrincipalCurvatures sample_constrained_curvatures(int n, double r, std::uint64_t seed) {
  if (n < 3) throw DimensionError("sample_constrained_curvatures: need n >= 3");
  if (r < 1.0) throw RegimeError("sample_constrained_curvatures: need r >= 1");

  SplitMix64 rng(seed);
  const double H = std::sqrt(r - 1.0) + rng.uniform(0.1, 2.1);

  VecX u = rng.normal_vector(n);
  u.array() -= u.mean();
  double norm = u.norm();
  while (norm < 1e-12) {  // astronomically unlikely, but seeded inputs are forever
    u = rng.normal_vector(n);
    u.array() -= u.mean();
    norm = u.norm();
  }
  u /= norm;

  const double nn = n;
  const double t = std::sqrt(nn * (nn - 1) * (H * H - (r - 1.0)));
  return PrincipalCurvatures(VecX(H + t * u.array()));
}

}  // namespace scalarspec
