// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/zonal.hpp"

#include "scalarspec/models.hpp"

#include <cmath>

namespace scalarspec {

TridiagonalOperator zonal_laplacian(const ZonalGrid& grid) {
  const int N = grid.cells;
  const double h = grid.spacing();
  const int km1 = grid.k_dim - 1;

  // Face and cell values of the zonal weight sin^{k-1} theta.  Radius enters
  // only through the single factor 1/c^2 applied at the end, so operators at
  // different radii are exact scalar multiples of each other.
  VecX s_cell(N), s_face(N - 1);
  for (int i = 0; i < N; ++i) s_cell[i] = std::pow(std::sin(grid.node(i)), km1);
  for (int i = 0; i < N - 1; ++i) s_face[i] = std::pow(std::sin((i + 1) * h), km1);

  const double scale = 1.0 / (grid.c * grid.c * h * h);

  TridiagonalOperator op;
  op.diag.resize(N);
  op.offdiag.resize(N - 1);
  op.inner_weights.resize(N);

  for (int i = 0; i < N; ++i) {
    const double lower = (i > 0) ? s_face[i - 1] : 0.0;
    const double upper = (i < N - 1) ? s_face[i] : 0.0;
    op.diag[i] = scale * (lower + upper) / s_cell[i];
    op.inner_weights[i] = std::pow(grid.c, grid.k_dim) * s_cell[i] * h;
  }
  for (int i = 0; i < N - 1; ++i)
    op.offdiag[i] = -scale * s_face[i] / std::sqrt(s_cell[i] * s_cell[i + 1]);

  return op;
}

int sturm_count_below(const TridiagonalOperator& op, double x) {
  const Index N = op.size();
  int count = 0;
  double q = op.diag[0] - x;
  if (q < 0.0) ++count;
  for (Index i = 1; i < N; ++i) {
    const double e = op.offdiag[i - 1];
    if (q == 0.0) q = 1e-300;  // keep the recurrence moving past an exact pivot
    q = op.diag[i] - x - e * e / q;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> smallest_eigenvalues(const TridiagonalOperator& op, int count) {
  const Index N = op.size();
  if (count < 1 || count > N) throw ParameterError("smallest_eigenvalues: bad count");

  // Gershgorin bracket for the whole spectrum.
  double lo = op.diag[0], hi = op.diag[0];
  for (Index i = 0; i < N; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(op.offdiag[i - 1]);
    if (i < N - 1) radius += std::abs(op.offdiag[i]);
    lo = std::min(lo, op.diag[i] - radius);
    hi = std::max(hi, op.diag[i] + radius);
  }

  constexpr double kWidth = 1e-12;
  std::vector<double> out;
  out.reserve(count);
  for (int j = 1; j <= count; ++j) {
    double a = lo, b = hi;
    while (b - a > kWidth) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;  // interval at rounding limit
      if (sturm_count_below(op, mid) >= j)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

double discrete_clifford_lambda2(int n, int m, double c, int cells) {
  if (cells < 64) throw ResolutionError("discrete_clifford_lambda2: need N >= 64");
  const HypersurfaceModel model = make_clifford(n, m, c);
  const PrincipalCurvatures pc = model_curvatures(model);
  const CurvatureInvariants inv = invariants_from_curvatures(pc);
  const double nH = n * inv.H;
  const double a = nH - pc.k[0];
  const double b = nH - pc.k[n - 1];
  if (!(a > 0.0) || !(b > 0.0))
    throw EllipticityError("discrete_clifford_lambda2: coefficients not positive");

  const double cs = std::sqrt(1.0 - c * c);
  double lam2_factor1;
  if (m == 1) {
    lam2_factor1 = 1.0 / (c * c);  // circle: exact l^2/c^2 at l = 1
  } else {
    const auto op = zonal_laplacian(ZonalGrid(m, c, cells));
    lam2_factor1 = smallest_eigenvalues(op, 2)[1];
  }
  const auto op2 = zonal_laplacian(ZonalGrid(n - m, cs, cells));
  const double lam2_factor2 = smallest_eigenvalues(op2, 2)[1];

  const double order0 = jacobi_order0(n, inv);
  return std::min(a * lam2_factor1, b * lam2_factor2) - order0;
}

double observed_order(double err_coarse, double err_mid, double err_fine) {
  const double r1 = std::abs(err_coarse) / std::abs(err_mid);
  const double r2 = std::abs(err_mid) / std::abs(err_fine);
  return 0.5 * (std::log2(r1) + std::log2(r2));
}

}  // namespace scalarspec
