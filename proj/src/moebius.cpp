// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/moebius.hpp"

namespace scalarspec {

VecX moebius_map(const BallPoint& g, const VecX& p) {
  if (p.size() != g.dim()) throw ParameterError("moebius_map: dimension mismatch");
  const double f = p.dot(g.g());
  return (p + (g.mu() * f + g.lambda()) * g.g()) / (g.lambda() * (f + 1.0));
}

VecX moebius_differential(const BallPoint& g, const VecX& p, const VecX& v) {
  if (p.size() != g.dim() || v.size() != g.dim())
    throw ParameterError("moebius_differential: dimension mismatch");
  if (std::abs(v.dot(p)) > 1e-10 * std::max(1.0, v.norm()))
    throw ParameterError("moebius_differential: v not tangent at p");
  const double f = p.dot(g.g());
  const double vg = v.dot(g.g());
  const double lam = g.lambda();
  const double denom = lam * lam * (f + 1.0) * (f + 1.0);
  return (lam * (f + 1.0) * v - lam * vg * p - vg * g.mu() * g.g()) / denom;
}

double conformal_factor(const BallPoint& g, const VecX& p) {
  const double f = p.dot(g.g());
  return (1.0 - g.g().squaredNorm()) / ((f + 1.0) * (f + 1.0));
}

}  // namespace scalarspec
