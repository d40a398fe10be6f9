// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical confirmation of the closed-form spectra: a
// flux-form finite-difference discretization of the zonal (polar-angle)
// Laplacian on round spheres, a Sturm-sequence bisection eigensolver for
// symmetric tridiagonal operators, and the assembly of the two discrete
// factor spectra into the product-model second eigenvalue.

#pragma once

#include "scalarspec/types.hpp"

#include <vector>

namespace scalarspec {

/// Cell-centered polar grid on the k_dim-sphere of radius c:
/// theta_i = (i - 1/2) pi / N, i = 1..N.  Cell centers stay strictly inside
/// (0, pi), so the weight sin^{k-1} theta never has to be evaluated at a pole.
struct ZonalGrid {
  int k_dim;
  double c;
  int cells;

  ZonalGrid(int k_dim_, double c_, int cells_) : k_dim(k_dim_), c(c_), cells(cells_) {
    if (k_dim < 2) throw ParameterError("ZonalGrid: need k_dim >= 2");
    if (!(c > 0.0)) throw ParameterError("ZonalGrid: need c > 0");
    if (cells < 16) throw ParameterError("ZonalGrid: need N >= 16");
  }

  double spacing() const { return M_PI / cells; }
  double node(int i) const { return (i + 0.5) * spacing(); }  // i = 0..cells-1
};

/// Symmetric tridiagonal operator in the similarity-transformed basis,
/// together with the quadrature weights of the original weighted inner
/// product (sin^{k-1} theta_i * h * c^k).
struct TridiagonalOperator {
  VecX diag;
  VecX offdiag;        // size diag.size() - 1
  VecX inner_weights;  // positive

  Index size() const { return diag.size(); }
};

/// Flux-form discretization of the zonal Laplacian
///   -(c^2 sin^{k-1} theta)^{-1} d/dtheta ( sin^{k-1} theta d/dtheta )
/// with the natural no-flux condition at both poles (the boundary fluxes
/// carry the weight sin^{k-1}(0) = sin^{k-1}(pi) = 0 and are omitted
/// exactly).  Constants are an exact null vector of the assembled operator.
TridiagonalOperator zonal_laplacian(const ZonalGrid& grid);

/// Number of eigenvalues of the symmetric tridiagonal operator strictly
/// below x, from the signs of the Sturm (LDL) sequence.
int sturm_count_below(const TridiagonalOperator& op, double x);

/// The `count` smallest eigenvalues, each bracketed by bisection down to an
/// interval of width 1e-12.  Deterministic across runs.
std::vector<double> smallest_eigenvalues(const TridiagonalOperator& op, int count);

/// Discrete second eigenvalue of the stability operator on
/// S^m(c) x S^{n-m}(sqrt(1-c^2)): both factor Laplacians are solved on
/// N-cell zonal grids (the circle factor m = 1 uses its exact spectrum
/// l^2/c^2 instead), combined through the branch minimum, and shifted by
/// the closed-form zero-order coefficient.
double discrete_clifford_lambda2(int n, int m, double c, int cells);

/// Observed convergence order from three errors at grid sizes N, 2N, 4N:
/// log2 |e_0 / e_1| averaged with log2 |e_1 / e_2|.
double observed_order(double err_coarse, double err_mid, double err_fine);

}  // namespace scalarspec
