// SPDX-License-Identifier: Apache-2.0
//
// Quadrature sampling of the model hypersurfaces.  Points on round spheres
// come from an antipodally symmetric recursive product rule (Gauss nodes in
// each polar angle, uniform nodes in the azimuth) that is exact for
// polynomials well beyond degree 3; the Clifford circle factor uses the
// uniform trapezoid rule.  A sample stores positions, oriented unit normals,
// positive weights, a principal orthonormal tangent frame, and the
// principal curvatures aligned to it.

#pragma once

#include "scalarspec/models.hpp"
#include "scalarspec/types.hpp"

#include <string>

namespace scalarspec {

// ---------------------------------------------------------------------------
// One-dimensional Gauss rules
// ---------------------------------------------------------------------------

struct Rule1D {
  VecX nodes;
  VecX weights;
};

/// q-point Gauss-Legendre rule on [-1, 1] (Newton on the Legendre
/// recurrence; nodes symmetric about 0).
Rule1D gauss_legendre(int q);

/// q-point Gauss-Chebyshev rule of the second kind: weight sqrt(1 - t^2),
/// closed-form nodes cos(i pi/(q+1)).
Rule1D gauss_chebyshev_u(int q);

// ---------------------------------------------------------------------------
// Sphere rules
// ---------------------------------------------------------------------------

/// Quadrature points (columns) and weights on the unit d-sphere in R^{d+1}.
/// Weights are positive, sum to the sphere volume, and the node set is
/// antipodally symmetric, so all odd moments vanish exactly.  With q polar
/// nodes per level and m_azimuth >= 2q azimuth nodes the rule integrates
/// polynomials up to total degree 2q-3 exactly.
struct SphereRule {
  MatX points;  // (d+1) x M
  VecX weights;
};

SphereRule sphere_rule(int dim, int polar_nodes, int azimuth_nodes);

// ---------------------------------------------------------------------------
// Sampled hypersurfaces
// ---------------------------------------------------------------------------

struct SamplingOptions {
  int circle_nodes;   // trapezoid nodes on the Clifford circle factor
  int polar_nodes;    // Gauss nodes per polar level of the sphere factor
  int azimuth_nodes;  // trapezoid nodes on the deepest azimuth circle

  static SamplingOptions from_resolution(int resolution);
};

/// Quadrature point cloud on a model hypersurface in the unit (n+1)-sphere.
/// Supported families: umbilical spheres and Clifford products with m = 1
/// (the explicit embedding (c cos t, c sin t, sqrt(1-c^2) w)).
struct SampledHypersurface {
  HypersurfaceModel model;
  MatX positions;  // (n+2) x M unit vectors
  MatX normals;    // (n+2) x M unit normals, oriented so H > 0
  VecX weights;    // M, positive
  MatX frames;     // (n+2) x (M*n); frame vector i of sample j in column j*n+i
  MatX shapes;     // n x M principal curvatures aligned to the frame
  double total_weight = 0.0;

  int dim() const { return model_dimension(model); }
  Index count() const { return weights.size(); }
  auto frame(Index j) const { return frames.middleCols(j * static_cast<Index>(dim()), dim()); }
};

SampledHypersurface sample_model(const HypersurfaceModel& model, int resolution);
SampledHypersurface sample_model(const HypersurfaceModel& model, const SamplingOptions& opts);

// ---------------------------------------------------------------------------
// Support-function calculus checks
// ---------------------------------------------------------------------------

/// Position and oriented normal at arclength t along the closed-form
/// geodesic through sample j whose initial velocity has the given unit
/// coefficients in the principal frame.
void geodesic_point(const SampledHypersurface& sample, Index j, const VecX& frame_coeffs, double t,
                    VecX& position, VecX& normal);

/// Verify, by second-order finite differences along closed-form geodesics,
/// the first and second derivatives of the support functions f = <a, x> and
/// gtilde = <a, normal>:
///   f_i = <a, e_i>,   f_ij = gtilde h_ij - f delta_ij,
///   gtilde_j = -sum_i <a, e_i> h_ij,
///   gtilde_jk = -gtilde sum_i h_ij h_ik + f h_jk      (parallel shape).
/// Returns the worst absolute residual over the probed samples/directions.
double support_hessian_check(const SampledHypersurface& sample, const VecX& a,
                             double step = 1e-4, Index max_probes = 32);

// ---------------------------------------------------------------------------
// JSON import/export (schema fixed by the CLI)
// ---------------------------------------------------------------------------

/// {"model": {...}, "samples": [{"x": [...], "normal": [...], "w": ..., "k": [...]}]}
std::string samples_to_json(const SampledHypersurface& sample);

/// Inverse of samples_to_json; tangent frames are rebuilt deterministically
/// from the positions (frames are not part of the wire format).
SampledHypersurface samples_from_json(const std::string& text);

}  // namespace scalarspec
