// SPDX-License-Identifier: Apache-2.0
//
// Closed-form geometry and spectra of the two homogeneous model families:
// umbilical (latitude) spheres and Clifford products S^m(c) x S^{n-m}(c'),
// c' = sqrt(1-c^2), inside the unit (n+1)-sphere.  Includes the balanced
// radius at which the product has normalized scalar curvature 1, the
// Laplace / Cheng-Yau / stability spectra, the four identities tying the
// balanced-product eigenvalues to H and H3, and evaluators for every
// eigenvalue bound the verification suites certify.

#pragma once

#include "scalarspec/curvature.hpp"
#include "scalarspec/types.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scalarspec {

// ---------------------------------------------------------------------------
// Model families
// ---------------------------------------------------------------------------

/// Totally umbilical, non-totally-geodesic hypersurface with normalized
/// scalar curvature r > 1; intrinsically a round n-sphere with H = sqrt(r-1).
struct UmbilicalSphere {
  int n;
  double r;
};

/// Product S^m(c) x S^{n-m}(sqrt(1-c^2)); principal curvatures take two
/// values, one per factor.  The stored curvature vector is oriented so
/// H > 0 (the normal is flipped on ingestion if needed).
struct CliffordProduct {
  int n;
  int m;
  double c;
};

using HypersurfaceModel = std::variant<UmbilicalSphere, CliffordProduct>;

/// Validating constructors.
HypersurfaceModel make_umbilical(int n, double r);
HypersurfaceModel make_clifford(int n, int m, double c);

int model_dimension(const HypersurfaceModel& model);
std::string model_name(const HypersurfaceModel& model);

/// Principal curvatures of the model, oriented so that H > 0.
PrincipalCurvatures model_curvatures(const HypersurfaceModel& model);

/// Radius c of the Clifford product whose scalar curvature is exactly
/// n(n-1):  c^2 = ((n-1)m + sqrt((n-1)m(n-m))) / (n(n-1)).
double critical_radius(int n, int m);

/// Curvature invariants of the model (H > 0 orientation).
CurvatureInvariants model_geometry(const HypersurfaceModel& model);

// ---------------------------------------------------------------------------
// Spectra
// ---------------------------------------------------------------------------

enum class OperatorTag { Laplacian, Box, Jacobi };

std::string to_string(OperatorTag tag);

/// Sorted eigenvalue/multiplicity list of one operator, enumerated up to a
/// stated cutoff in the factor harmonic degrees.
struct Spectrum {
  struct Entry {
    double eigenvalue;
    long long multiplicity;
  };
  std::vector<Entry> entries;  // strictly increasing eigenvalues
  OperatorTag operator_tag = OperatorTag::Laplacian;
  std::string cutoff;

  double lambda1() const;
  /// Second entry of the multiset: equals lambda1 when that eigenvalue is
  /// multiple, otherwise the next distinct eigenvalue.
  double lambda2() const;
};

/// Harmonic multiplicity of degree l on the round k-sphere.
long long sphere_harmonic_multiplicity(int k_dim, int l);

/// Laplace spectrum of the round k_dim-sphere of radius c: eigenvalues
/// l(l+k_dim-1)/c^2 for l = 0..l_max with harmonic multiplicities
/// (k_dim = 1 is the circle: l^2/c^2, multiplicity 2 for l >= 1).
Spectrum sphere_laplace_spectrum(int k_dim, double c, int l_max);

/// Spectrum of the Cheng-Yau operator on a Clifford product:
/// (nH - k_1) Delta_1 + (nH - k_n) Delta_2, enumerated over all factor
/// degree pairs l <= l_max with product multiplicities.
Spectrum box_spectrum(const CliffordProduct& model, int l_max);

/// Stability-operator spectrum.  Umbilical: (n-1) H lambda^Delta minus
/// n(n-1)H(1+H^2), with lambda^Delta = l(l+n-1) r.  Clifford: Cheng-Yau
/// spectrum shifted by the zero-order coefficient.
Spectrum js_spectrum(const HypersurfaceModel& model, int l_max);

/// Residuals of the four balanced-radius identities for S^m(c) x S^{n-m}:
///   [0] gap between the two Cheng-Yau branch values of lambda_2,
///   [1] order-zero coefficient minus 2n(n-1)H,
///   [2] lambda_2 + n(n-1)H,
///   [3] lambda_2 - (n(n-1)(n-2)/2) H3.
/// All four vanish (to < 1e-9) at c = critical_radius(n, m).
std::array<double, 4> verify_critical_identities(int n, int m);

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

/// Which certified bound a report row refers to.
enum class BoundTag { T11, T12, T13, T14, R41 };

std::string to_string(BoundTag tag);

struct BoundReport {
  HypersurfaceModel model;
  BoundTag tag;
  double bound_value = 0.0;
  double computed_value = 0.0;
  double slack = 0.0;  // bound - computed; pass iff computed <= bound + 1e-10
  bool pass = false;
  bool equality = false;  // |slack| < 1e-10
  bool skipped = false;   // hypotheses not met; reason says why
  std::string reason;
};

/// Evaluate every certified eigenvalue bound whose hypotheses the model
/// satisfies; bounds whose hypotheses fail come back as skipped rows.
///   T11: lambda_1 <= -n(n-1) r sqrt(r-1)          (r > 1)
///   T12: lambda_1 <= -2n(n-1) |H|                 (r = 1, H3 != 0)
///   T13: lambda_2 <= 0                            (r > 1, n >= 5)
///   T14: lambda_2 <= -(n(n-1)(n-2)/2) |H3|        (r = 1, n >= 5, H3 != 0)
///   R41: lambda_2 <= n(n-1)((r-1)^2/H + (n-2)/2 H3 - n(r-1)/2 H)  (r > 1, n >= 5)
std::vector<BoundReport> evaluate_bounds(const HypersurfaceModel& model, int l_max = 3);

}  // namespace scalarspec
