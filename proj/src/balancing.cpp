// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/balancing.hpp"

#include <cmath>
#include <vector>

namespace scalarspec {

namespace {

/// sum_j w_j u_j F_g(x_j), accumulated with compensated sums so the result
/// is stable under sample reordering.
VecX weighted_image_sum(const SampledHypersurface& sample, const VecX& u, const BallPoint& g) {
  const Index D = sample.positions.rows();
  std::vector<KahanSum> acc(static_cast<std::size_t>(D));
  const double lam = g.lambda();
  const double mu = g.mu();
  const VecX& gv = g.g();
  for (Index j = 0; j < sample.count(); ++j) {
    const auto x = sample.positions.col(j);
    const double f = x.dot(gv);
    const double scale = sample.weights[j] * u[j] / (lam * (f + 1.0));
    const double gcoef = (mu * f + lam) * scale;
    for (Index i = 0; i < D; ++i) acc[static_cast<std::size_t>(i)].add(scale * x[i] + gcoef * gv[i]);
  }
  VecX out(D);
  for (Index i = 0; i < D; ++i) out[i] = acc[static_cast<std::size_t>(i)].value();
  return out;
}

}  // namespace

RhoField RhoField::build(const SampledHypersurface& sample, const BallPoint& g) {
  const int n = sample.dim();
  const Index M = sample.count();
  RhoField field;
  field.f.resize(M);
  field.gtilde.resize(M);
  field.rho.resize(M);
  field.grad_rho.resize(n, M);
  const double log_lambda = std::log(g.lambda());
  for (Index j = 0; j < M; ++j) {
    const double f = sample.positions.col(j).dot(g.g());
    field.f[j] = f;
    field.gtilde[j] = sample.normals.col(j).dot(g.g());
    field.rho[j] = -log_lambda - std::log1p(f);
    for (int i = 0; i < n; ++i)
      field.grad_rho(i, j) = -sample.frame(j).col(i).dot(g.g()) / (1.0 + f);
  }
  return field;
}

MatX test_functions(const SampledHypersurface& sample, const BallPoint& g) {
  const Index M = sample.count();
  MatX out(sample.positions.rows(), M);
  for (Index j = 0; j < M; ++j) out.col(j) = moebius_map(g, sample.positions.col(j));
  return out;
}

CenteringResult centering_solve(const SampledHypersurface& sample, const VecX& u, double tol) {
  const Index M = sample.count();
  const Index D = sample.positions.rows();
  if (u.size() != M) throw ParameterError("centering_solve: weight length mismatch");
  if ((u.array() <= 0.0).any()) throw WeightError("centering_solve: weights must be positive");
  if (tol < 1e-12) throw ParameterError("centering_solve: tol below 1e-12");

  KahanSum mass_acc;
  for (Index j = 0; j < M; ++j) mass_acc.add(sample.weights[j] * u[j]);
  const double mass = mass_acc.value();

  // Initial guess: the reflected weighted barycenter, kept safely inside.
  VecX g = -weighted_image_sum(sample, u, BallPoint::zero(D)) / mass;
  if (g.norm() > 0.9) g *= 0.9 / g.norm();

  constexpr double kBallEdge = 1.0 - 1e-6;
  constexpr double kJacStep = 1e-6;
  constexpr int kMaxIter = 200;

  auto residual_at = [&](const VecX& point) { return weighted_image_sum(sample, u, BallPoint(point)); };

  VecX G = residual_at(g);
  double best = G.norm();
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (best <= tol * mass)
      return CenteringResult{BallPoint(g), iter, best, mass};

    MatX J(D, D);
    for (Index cidx = 0; cidx < D; ++cidx) {
      VecX shifted = g;
      shifted[cidx] += kJacStep;
      if (shifted.norm() >= kBallEdge) shifted *= kBallEdge / shifted.norm();
      J.col(cidx) = (residual_at(shifted) - G) / (shifted[cidx] - g[cidx]);
    }
    const VecX step = J.colPivHouseholderQr().solve(-G);

    double factor = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, factor *= 0.5) {
      VecX candidate = g + factor * step;
      if (candidate.norm() >= kBallEdge) candidate *= kBallEdge / candidate.norm();
      const VecX Gc = residual_at(candidate);
      if (Gc.norm() < best) {
        g = candidate;
        G = Gc;
        best = Gc.norm();
        improved = true;
        break;
      }
    }
    if (!improved)
      throw ConvergenceError("centering_solve: line search stalled at residual " +
                             std::to_string(best / mass));
  }
  if (best <= tol * mass) return CenteringResult{BallPoint(g), kMaxIter, best, mass};
  throw ConvergenceError("centering_solve: no convergence in 200 iterations (residual " +
                         std::to_string(best / mass) + ")");
}

double jacobi_rayleigh_sum(const SampledHypersurface& sample, const BallPoint& g) {
  const CurvatureInvariants inv = model_geometry(sample.model);
  const double nn = inv.n;
  const double order_term =
      0.5 * nn * (nn - 1) * (2.0 * inv.H - (nn - 2) * inv.H3 + nn * inv.H * inv.H2);
  KahanSum acc;
  for (Index j = 0; j < sample.count(); ++j) {
    const double e2rho = conformal_factor(g, sample.positions.col(j));
    acc.add(sample.weights[j] * (nn * (nn - 1) * inv.H * e2rho - order_term));
  }
  return acc.value();
}

ConformalMeanBound conformal_mean_bound(const SampledHypersurface& sample, const BallPoint& g,
                                        double quad_tol) {
  const CurvatureInvariants inv = model_geometry(sample.model);
  if (!(inv.H > 0.0)) throw OrientationError("conformal_mean_bound: need H > 0");
  const RhoField field = RhoField::build(sample, g);

  KahanSum lhs_acc, mean_acc, gap_acc, defect_acc;
  for (Index j = 0; j < sample.count(); ++j) {
    const double w = sample.weights[j];
    lhs_acc.add(w * inv.H * conformal_factor(g, sample.positions.col(j)));
    mean_acc.add(w * (inv.H + inv.H2 * inv.H2 / inv.H));
    const PrincipalCurvatures pc{VecX(sample.shapes.col(j))};
    gap_acc.add(w * cheng_yau_gradient_gap(pc, field.grad_rho.col(j)));
    const double d = inv.H2 + field.gtilde[j] * inv.H / (1.0 + field.f[j]);
    defect_acc.add(w * d * d / inv.H);
  }

  ConformalMeanBound out;
  out.lhs = lhs_acc.value();
  out.bound = mean_acc.value() - gap_acc.value();
  out.equality_defect = defect_acc.value();

  const double scale = std::max({1.0, std::abs(out.lhs), std::abs(out.bound)});
  if (std::abs(out.lhs - (out.bound - out.equality_defect)) > quad_tol * scale)
    throw ConsistencyError("conformal_mean_bound: three-term identity violated");
  if (out.lhs > out.bound + 1e-9 * std::max(1.0, sample.total_weight))
    throw ConsistencyError("conformal_mean_bound: inequality violated");
  return out;
}

double gradient_gap_integral(const SampledHypersurface& sample, const BallPoint& g) {
  const int n = sample.dim();
  if (n < 5) throw HypothesisError("gradient_gap_integral: needs n >= 5");
  const RhoField field = RhoField::build(sample, g);
  KahanSum acc;
  for (Index j = 0; j < sample.count(); ++j) {
    const PrincipalCurvatures pc{VecX(sample.shapes.col(j))};
    acc.add(sample.weights[j] * cheng_yau_gradient_gap(pc, field.grad_rho.col(j)));
  }
  return acc.value();
}

MinmaxReport minmax_chain_check(const SampledHypersurface& sample, const VecX& u, double tol) {
  const CurvatureInvariants inv = model_geometry(sample.model);
  const double nn = inv.n;

  MinmaxReport report{
      .centering = centering_solve(sample, u, std::max(1e-12, std::min(tol, 1e-9)))};
  const BallPoint& g = report.centering.g;

  report.volume = sample.total_weight;
  report.lambda2 = js_spectrum(sample.model, 3).lambda2();
  report.rayleigh_sum = jacobi_rayleigh_sum(sample, g);

  KahanSum bound_acc;
  const double integrand = nn * (nn - 1) *
                           (inv.H2 * inv.H2 / inv.H + 0.5 * (nn - 2) * inv.H3 -
                            0.5 * nn * inv.H * inv.H2);
  for (Index j = 0; j < sample.count(); ++j) bound_acc.add(sample.weights[j] * integrand);
  report.bound_symmetric = bound_acc.value();

  report.slack_minmax = report.rayleigh_sum - report.lambda2 * report.volume;
  report.slack_symmetric = report.bound_symmetric - report.rayleigh_sum;

  const double allowance = tol * std::max(1.0, report.volume);
  bool ok = report.slack_minmax >= -allowance && report.slack_symmetric >= -allowance;

  if (std::abs(inv.r - 1.0) <= 1e-10) {
    const double bound_h3 = 0.5 * nn * (nn - 1) * (nn - 2) * inv.H3 * report.volume;
    report.bound_h3 = bound_h3;
    report.slack_h3 = bound_h3 - report.rayleigh_sum;
    ok = ok && *report.slack_h3 >= -allowance;
  }
  report.pass = ok;
  return report;
}

std::optional<double> position_eigenfunction_check(const CliffordProduct& model) {
  const CurvatureInvariants inv = model_geometry(HypersurfaceModel{model});
  if (std::abs(inv.r - 1.0) > 1e-10 || std::abs(inv.H2) > 1e-10) return std::nullopt;

  const double nn = inv.n;
  const double order0 = jacobi_order0(inv.n, inv);
  // Applying the operator to an ambient coordinate:
  //   J_s x_A = -n(n-1) H2 gtilde_A + (n(n-1) H - order0) x_A,
  // so the coordinates are eigenfunctions exactly when H2 vanishes.
  const double applied_eigenvalue = nn * (nn - 1) * inv.H - order0;
  const double normal_coefficient = nn * (nn - 1) * inv.H2;

  const double lambda2 = js_spectrum(HypersurfaceModel{model}, 1).lambda2();
  const double h3_value = 0.5 * nn * (nn - 1) * (nn - 2) * inv.H3;

  return std::max({std::abs(applied_eigenvalue - lambda2), std::abs(lambda2 - h3_value),
                   std::abs(normal_coefficient)});
}

}  // namespace scalarspec
