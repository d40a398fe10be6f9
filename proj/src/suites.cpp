// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/suites.hpp"

#include "scalarspec/balancing.hpp"
#include "scalarspec/models.hpp"
#include "scalarspec/zonal.hpp"

#include <atomic>
#include <cstdlib>
#include <chrono>
#include <functional>
#include <thread>

namespace scalarspec {

namespace {

using RowList = std::vector<ReportRow>;

ReportRow residual_row(std::string suite, std::string case_name, int n, std::optional<int> m,
                       std::optional<double> c_or_r, std::string quantity, double residual,
                       double tol) {
  ReportRow row;
  row.suite = std::move(suite);
  row.case_name = std::move(case_name);
  row.n = n;
  row.m = m;
  row.c_or_r = c_or_r;
  row.quantity = std::move(quantity);
  row.value = residual;
  row.bound_or_target = 0.0;
  row.slack = tol - residual;
  row.tolerance = tol;
  row.pass = residual <= tol;
  return row;
}

ReportRow bound_row(std::string suite, std::string case_name, int n, std::optional<int> m,
                    std::optional<double> c_or_r, std::string quantity, double value, double bound,
                    double tol, bool require_equality) {
  ReportRow row;
  row.suite = std::move(suite);
  row.case_name = std::move(case_name);
  row.n = n;
  row.m = m;
  row.c_or_r = c_or_r;
  row.quantity = std::move(quantity);
  row.value = value;
  row.bound_or_target = bound;
  row.slack = bound - value;
  row.tolerance = tol;
  row.pass = require_equality ? std::abs(row.slack) <= tol : row.slack >= -tol;
  return row;
}

/// value must stay at or above target (up to tol).
ReportRow floor_row(std::string suite, std::string case_name, int n, std::optional<int> m,
                    std::optional<double> c_or_r, std::string quantity, double value,
                    double target, double tol) {
  ReportRow row;
  row.suite = std::move(suite);
  row.case_name = std::move(case_name);
  row.n = n;
  row.m = m;
  row.c_or_r = c_or_r;
  row.quantity = std::move(quantity);
  row.value = value;
  row.bound_or_target = target;
  row.slack = value - target;
  row.tolerance = tol;
  row.pass = row.slack >= -tol;
  return row;
}

std::vector<int> valid_m(const SweepConfig& config, int n) {
  std::vector<int> out;
  if (config.m_list.empty()) {
    for (int m = 1; m <= n - 2; ++m) out.push_back(m);
  } else {
    for (int m : config.m_list)
      if (m >= 1 && m <= n - 2) out.push_back(m);
  }
  return out;
}

/// Run cells concurrently (cap from SCALARSPEC_THREADS); a throwing cell
/// becomes a single failing row instead of poisoning the whole run.
RowList run_cells(int count, const std::function<RowList(int)>& cell) {
  std::vector<RowList> slots(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        slots[static_cast<std::size_t>(i)] = cell(i);
      } catch (const std::exception& err) {
        ReportRow row;
        row.suite = "error";
        row.case_name = std::string("cell_") + std::to_string(i);
        row.quantity = err.what();
        row.pass = false;
        slots[static_cast<std::size_t>(i)] = {row};
      }
    }
  };
  const int threads = std::min(std::max(1, thread_cap()), std::max(1, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads - 1));
  for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  RowList all;
  for (auto& slot : slots)
    for (auto& row : slot) all.push_back(std::move(row));
  return all;
}

VecX seeded_ball_point(int dim, double norm, std::uint64_t seed) {
  SplitMix64 rng(seed);
  VecX g = rng.normal_vector(dim);
  return norm * g / g.norm();
}

SampledHypersurface reverse_sample(const SampledHypersurface& sample) {
  SampledHypersurface out;
  out.model = sample.model;
  const Index M = sample.count();
  const int n = sample.dim();
  out.positions = sample.positions.rowwise().reverse();
  out.normals = sample.normals.rowwise().reverse();
  out.weights = sample.weights.reverse();
  out.shapes = sample.shapes.rowwise().reverse();
  out.frames.resize(sample.frames.rows(), sample.frames.cols());
  for (Index j = 0; j < M; ++j)
    for (int i = 0; i < n; ++i) out.frames.col(j * n + i) = sample.frames.col((M - 1 - j) * n + i);
  out.total_weight = sample.total_weight;
  return out;
}

// -------------------------------------------------------------------------
// Suite bodies
// -------------------------------------------------------------------------

RowList identities_rows(const SweepConfig& config) {
  const double tol = config.tol("identities");
  struct Cell {
    int n, m;
  };
  std::vector<Cell> cells;
  for (int n = std::max(5, config.n_min); n <= config.n_max; ++n)
    for (int m : valid_m(config, n)) cells.push_back({n, m});

  static const char* names[4] = {"box_branch_gap", "order0_vs_2n(n-1)H", "lambda2_vs_-n(n-1)H",
                                 "lambda2_vs_h3_form"};
  return run_cells(static_cast<int>(cells.size()), [&](int i) {
    const auto [n, m] = cells[static_cast<std::size_t>(i)];
    const double c = critical_radius(n, m);
    const auto res = verify_critical_identities(n, m);
    RowList rows;
    for (int q = 0; q < 4; ++q)
      rows.push_back(residual_row("identities", "clifford_critical", n, m, c, names[q], res[q],
                                  tol));
    return rows;
  });
}

RowList bounds_rows(const SweepConfig& config) {
  const double tol = config.tol("bounds");
  struct Cell {
    HypersurfaceModel model;
    std::string case_name;
    bool equality_family;  // model attains the bound
    std::optional<int> m;
    double c_or_r;
  };
  std::vector<Cell> cells;
  for (int n = std::max(5, config.n_min); n <= config.n_max; ++n) {
    for (double r : config.r_list)
      cells.push_back({make_umbilical(n, r), "umbilical", true, std::nullopt, r});
    for (int m : valid_m(config, n)) {
      const double c = critical_radius(n, m);
      cells.push_back({make_clifford(n, m, c), "clifford_critical", true, m, c});
      // A product away from the balanced radius: r > 1, bounds strict.
      const double c_above = std::sqrt(0.5 * (c * c + 1.0));
      if (n * c_above * c_above - m > 1e-6)
        cells.push_back({make_clifford(n, m, c_above), "clifford_r_above", false, m, c_above});
    }
  }

  return run_cells(static_cast<int>(cells.size()), [&](int i) {
    const auto& cell = cells[static_cast<std::size_t>(i)];
    const int n = model_dimension(cell.model);
    RowList rows;
    for (const auto& rep : evaluate_bounds(cell.model)) {
      const std::string tag = to_string(rep.tag);
      if (rep.skipped) {
        ReportRow row;
        row.suite = "bounds";
        row.case_name = cell.case_name;
        row.n = n;
        row.m = cell.m;
        row.c_or_r = cell.c_or_r;
        row.quantity = tag + ":skipped";
        row.tolerance = tol;
        row.pass = true;
        rows.push_back(std::move(row));
        continue;
      }
      const bool equality = cell.equality_family;
      rows.push_back(bound_row("bounds", cell.case_name, n, cell.m, cell.c_or_r,
                               tag + (equality ? ":equality" : ":bound"), rep.computed_value,
                               rep.bound_value, tol, equality));
    }
    return rows;
  });
}

RowList lemmas_rows(const SweepConfig& config) {
  RowList rows;
  const auto seed = config.seed;

  // Newton/Gauss identity fuzzing, 1000 draws per dimension.
  for (int n = 3; n <= 12; ++n)
    rows.push_back(residual_row("lemmas", "newton_fuzz", n, std::nullopt, std::nullopt,
                                "max_rel_residual", newton_identity_fuzz(n, 1000, seed + n),
                                config.tol("newton")));

  // Pointwise gradient-gap positivity, 12500 draws per dimension (1e5 total).
  for (int n = 5; n <= 12; ++n)
    rows.push_back(floor_row("lemmas", "gradient_gap_fuzz", n, std::nullopt, std::nullopt,
                             "min_pointwise_value", gradient_gap_fuzz_min(n, 12500, seed + 31 * n),
                             0.0, config.tol("pointwise")));

  // Moebius map properties in the n = 5 ambient dimension.
  {
    const auto fuzz = moebius_fuzz(7, 10000, seed + 101);
    rows.push_back(residual_row("lemmas", "moebius", 5, std::nullopt, std::nullopt,
                                "norm_defect", fuzz.max_norm_defect, config.tol("moebius_norm")));
    rows.push_back(residual_row("lemmas", "moebius", 5, std::nullopt, std::nullopt,
                                "conformal_defect", fuzz.max_conformal_defect,
                                config.tol("conformal")));
    rows.push_back(residual_row("lemmas", "moebius", 5, std::nullopt, std::nullopt,
                                "differential_fd_defect", fuzz.max_differential_defect,
                                config.tol("differential")));
  }

  // Sampled product model at the balanced radius.
  const double c51 = critical_radius(5, 1);
  const auto clifford = make_clifford(5, 1, c51);
  const auto sample = sample_model(clifford, config.resolution);
  const double vol = sample.total_weight;
  const double vol_exact =
      (2.0 * M_PI * c51) * sphere_volume(4, std::sqrt(1.0 - c51 * c51));
  rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "volume_rel_error",
                              rel_diff(vol, vol_exact), 1e-8));
  {
    VecX mean = VecX::Zero(7);
    double second = 0.0;
    for (Index j = 0; j < sample.count(); ++j) {
      mean += sample.weights[j] * sample.positions.col(j);
      second += sample.weights[j] * sample.positions(0, j) * sample.positions(0, j);
    }
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "first_moment_norm",
                                mean.norm() / vol, 1e-12));
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "second_moment_error",
                                std::abs(second - vol * c51 * c51 / 2.0) / vol, 1e-10));
  }

  const BallPoint g_rand(seeded_ball_point(7, 0.3, seed + 202));
  {
    const RhoField field = RhoField::build(sample, g_rand);
    double worst_rho = 0.0;
    for (Index j = 0; j < sample.count(); ++j) {
      const double cf = conformal_factor(g_rand, sample.positions.col(j));
      worst_rho = std::max(worst_rho, std::abs(std::exp(2.0 * field.rho[j]) - cf));
    }
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "rho_identity",
                                worst_rho, 1e-12));

    // Gradient of rho against finite differences along geodesics.
    double worst_grad = 0.0;
    const double eps = 1e-5;
    VecX xp, xm, np_, nm;
    const Index stride = std::max<Index>(1, sample.count() / 16);
    for (Index j = 0; j < sample.count(); j += stride) {
      for (int i = 0; i < 5; ++i) {
        VecX v = VecX::Zero(5);
        v[i] = 1.0;
        geodesic_point(sample, j, v, eps, xp, np_);
        geodesic_point(sample, j, v, -eps, xm, nm);
        const double rp = -std::log(g_rand.lambda()) - std::log1p(xp.dot(g_rand.g()));
        const double rm = -std::log(g_rand.lambda()) - std::log1p(xm.dot(g_rand.g()));
        worst_grad = std::max(worst_grad,
                              std::abs((rp - rm) / (2.0 * eps) - field.grad_rho(i, j)));
      }
    }
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "rho_gradient_fd",
                                worst_grad, config.tol("differential")));

    const MatX tf = test_functions(sample, g_rand);
    double worst_unit = 0.0;
    for (Index j = 0; j < tf.cols(); ++j)
      worst_unit = std::max(worst_unit, std::abs(tf.col(j).squaredNorm() - 1.0));
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51, "test_function_unit_sum",
                                worst_unit, 1e-12));
  }

  {
    const double tol_int = config.tol("integral");
    const auto bound = conformal_mean_bound(sample, g_rand, tol_int);
    rows.push_back(residual_row("lemmas", "clifford_sample", 5, 1, c51,
                                "conformal_mean_identity",
                                std::abs(bound.lhs - (bound.bound - bound.equality_defect)) /
                                    std::max({1.0, std::abs(bound.lhs), std::abs(bound.bound)}),
                                tol_int));
    rows.push_back(floor_row("lemmas", "clifford_sample", 5, 1, c51, "conformal_mean_slack",
                             bound.bound - bound.lhs, 0.0, 1e-9 * std::max(1.0, vol)));
    rows.push_back(floor_row("lemmas", "clifford_sample", 5, 1, c51, "gradient_gap_integral",
                             gradient_gap_integral(sample, g_rand), 0.0,
                             1e-9 * std::max(1.0, vol)));
  }

  // Min-max chain with the exact (constant) first eigenfunction.
  {
    const double tol_mm = config.tol("minmax");
    const VecX ones = VecX::Ones(sample.count());
    const auto report = minmax_chain_check(sample, ones, tol_mm);
    rows.push_back(residual_row("lemmas", "minmax_clifford", 5, 1, c51, "equality_defect",
                                std::abs(report.slack_minmax) / std::max(1.0, report.volume),
                                tol_mm));
    rows.push_back(residual_row("lemmas", "minmax_clifford", 5, 1, c51, "h3_bound_defect",
                                report.slack_h3 ? std::abs(*report.slack_h3) /
                                                      std::max(1.0, report.volume)
                                                : 1.0,
                                tol_mm));
  }
  {
    const auto umbilical = make_umbilical(5, 2.0);
    const auto usample = sample_model(umbilical, config.resolution);
    const double tol_u = config.tol("minmax_umbilical");
    const VecX ones = VecX::Ones(usample.count());
    const auto report = minmax_chain_check(usample, ones, tol_u);
    rows.push_back(residual_row("lemmas", "minmax_umbilical", 5, std::nullopt, 2.0,
                                "chain_closure",
                                std::abs(report.rayleigh_sum) / std::max(1.0, report.volume),
                                tol_u));
    rows.push_back(residual_row("lemmas", "hessian_umbilical", 5, std::nullopt, 2.0,
                                "support_fd_residual",
                                support_hessian_check(usample, VecX::Unit(7, 6)),
                                config.tol("hessian")));
  }
  rows.push_back(residual_row("lemmas", "hessian_clifford", 5, 1, c51, "support_fd_residual",
                              support_hessian_check(sample, VecX::Unit(7, 0)),
                              config.tol("hessian")));

  for (auto [n, m] : {std::pair{5, 1}, std::pair{6, 2}, std::pair{8, 3}}) {
    const CliffordProduct model{n, m, critical_radius(n, m)};
    const auto res = position_eigenfunction_check(model);
    rows.push_back(residual_row("lemmas", "position_eigenfunction", n, m, model.c,
                                "eigenvalue_residual", res ? *res : 1.0, 1e-10));
  }
  return rows;
}

RowList discrete_rows(const SweepConfig& config) {
  if (config.grid_sizes.size() < 3)
    throw ParameterError("discrete suite needs at least three grid sizes");
  RowList rows;
  std::vector<int> grids = config.grid_sizes;
  std::sort(grids.begin(), grids.end());
  const int n_fine = grids.back();

  // Zero modes survive discretization for every factor dimension in play.
  for (int k : {2, 3, 4}) {
    const auto op = zonal_laplacian(ZonalGrid(k, 1.0, n_fine));
    rows.push_back(residual_row("discrete", "zero_mode", k, std::nullopt, 1.0, "lambda1_abs",
                                std::abs(smallest_eigenvalues(op, 1)[0]), 1e-10));
  }

  // S^4(sqrt 0.6): the factor sphere of the balanced (5,1) product.
  {
    const double exact = 4.0 / 0.6;
    std::vector<double> errors;
    for (int N : grids) {
      const auto op = zonal_laplacian(ZonalGrid(4, std::sqrt(0.6), N));
      errors.push_back(smallest_eigenvalues(op, 2)[1] - exact);
    }
    rows.push_back(residual_row("discrete", "s4_sqrt06", 4, std::nullopt, std::sqrt(0.6),
                                "lambda2_error", std::abs(errors.back()),
                                config.tol("discrete_sphere")));
    const double order = observed_order(errors[errors.size() - 3], errors[errors.size() - 2],
                                        errors[errors.size() - 1]);
    ReportRow row;
    row.suite = "discrete";
    row.case_name = "s4_sqrt06";
    row.n = 4;
    row.c_or_r = std::sqrt(0.6);
    row.quantity = "convergence_order";
    row.value = order;
    row.bound_or_target = 2.0;
    row.slack = config.tol("order_band") - std::abs(order - 2.0);
    row.tolerance = config.tol("order_band");
    row.pass = std::abs(order - 2.0) <= config.tol("order_band");
    rows.push_back(std::move(row));
  }

  // Exact 1/c^2 scaling of the discrete operator.
  {
    const int N = grids.front();
    const auto op1 = zonal_laplacian(ZonalGrid(3, 1.0, N));
    const auto op2 = zonal_laplacian(ZonalGrid(3, 2.0, N));
    const double l1 = smallest_eigenvalues(op1, 2)[1];
    const double l2 = smallest_eigenvalues(op2, 2)[1];
    rows.push_back(residual_row("discrete", "radius_scaling", 3, std::nullopt, 2.0,
                                "lambda2_scaling_rel", rel_diff(4.0 * l2, l1), 1e-12));
  }

  // Discrete product lambda2 against the closed form at the balanced radius.
  struct Cell {
    int n, m;
  };
  std::vector<Cell> cells;
  for (int n = std::max(5, config.n_min); n <= std::min(8, config.n_max); ++n)
    for (int m : valid_m(config, n)) cells.push_back({n, m});
  auto discrete_cells = run_cells(static_cast<int>(cells.size()), [&](int i) -> RowList {
    const auto [n, m] = cells[static_cast<std::size_t>(i)];
    const double c = critical_radius(n, m);
    const double closed = js_spectrum(make_clifford(n, m, c), 1).lambda2();
    const double discrete = discrete_clifford_lambda2(n, m, c, n_fine);
    return {residual_row("discrete", "clifford_lambda2", n, m, c, "abs_error",
                         std::abs(discrete - closed), config.tol("discrete_lambda2"))};
  });
  for (auto& row : discrete_cells) rows.push_back(std::move(row));
  return rows;
}

RowList center_rows(const SweepConfig& config) {
  RowList rows;
  const double tol = config.tol("centering");
  const double c51 = critical_radius(5, 1);
  const auto sample = sample_model(make_clifford(5, 1, c51), config.resolution);

  {
    const VecX ones = VecX::Ones(sample.count());
    const auto res = centering_solve(sample, ones, tol);
    rows.push_back(residual_row("center", "symmetric", 5, 1, c51, "g_norm", res.g.g().norm(),
                                1e-10));
    rows.push_back(residual_row("center", "symmetric", 5, 1, c51, "residual_over_mass",
                                res.residual / res.mass, tol));
  }
  {
    VecX u(sample.count());
    for (Index j = 0; j < sample.count(); ++j) u[j] = 1.0 + 0.5 * sample.positions(0, j);
    const auto res = centering_solve(sample, u, tol);
    rows.push_back(residual_row("center", "tilted", 5, 1, c51, "residual_over_mass",
                                res.residual / res.mass, tol));
    rows.push_back(floor_row("center", "tilted", 5, 1, c51, "iterations_margin",
                             25.0 - res.iterations, 0.0, 0.0));

    // Permutation invariance at a light resolution.
    const auto small = sample_model(make_clifford(5, 1, c51), 32);
    VecX us(small.count());
    for (Index j = 0; j < small.count(); ++j) us[j] = 1.0 + 0.5 * small.positions(0, j);
    const auto direct = centering_solve(small, us, tol);
    const auto reversed_sample = reverse_sample(small);
    const auto reversed = centering_solve(reversed_sample, VecX(us.reverse()), tol);
    rows.push_back(residual_row("center", "permutation", 5, 1, c51, "g_difference",
                                (direct.g.g() - reversed.g.g()).norm(), 1e-10));
  }
  {
    // The latitude sphere centers onto the equator: g = -cos(phi) e_{n+2}.
    const auto usample = sample_model(make_umbilical(5, 2.0), config.resolution);
    const VecX ones = VecX::Ones(usample.count());
    const auto res = centering_solve(usample, ones, tol);
    VecX expected = VecX::Zero(7);
    expected[6] = -std::sqrt(0.5);
    rows.push_back(residual_row("center", "umbilical_latitude", 5, std::nullopt, 2.0,
                                "g_vs_equator_map", (res.g.g() - expected).norm(), 1e-8));
    rows.push_back(residual_row("center", "umbilical_latitude", 5, std::nullopt, 2.0,
                                "residual_over_mass", res.residual / res.mass, tol));
  }
  return rows;
}

}  // namespace

Suite suite_from_string(const std::string& name) {
  if (name == "identities") return Suite::Identities;
  if (name == "bounds") return Suite::Bounds;
  if (name == "lemmas") return Suite::Lemmas;
  if (name == "discrete") return Suite::Discrete;
  if (name == "center") return Suite::Center;
  if (name == "all") return Suite::All;
  throw ParameterError("unknown suite: " + name);
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Identities: return "identities";
    case Suite::Bounds: return "bounds";
    case Suite::Lemmas: return "lemmas";
    case Suite::Discrete: return "discrete";
    case Suite::Center: return "center";
    case Suite::All: return "all";
  }
  return "?";
}

int thread_cap() {
  if (const char* env = std::getenv("SCALARSPEC_THREADS")) {
    const int value = std::atoi(env);
    if (value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

RunReport run_suite(const SweepConfig& config, Suite suite) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.suite = to_string(suite);
  report.tool_version = kToolVersion;

  auto append = [&](RowList rows) {
    for (auto& row : rows) report.add(std::move(row));
  };
  switch (suite) {
    case Suite::Identities: append(identities_rows(config)); break;
    case Suite::Bounds: append(bounds_rows(config)); break;
    case Suite::Lemmas: append(lemmas_rows(config)); break;
    case Suite::Discrete: append(discrete_rows(config)); break;
    case Suite::Center: append(center_rows(config)); break;
    case Suite::All:
      append(identities_rows(config));
      append(bounds_rows(config));
      append(lemmas_rows(config));
      append(discrete_rows(config));
      append(center_rows(config));
      break;
  }
  report.sort_rows();
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

double newton_identity_fuzz(int n, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(seed * 0x9e3779b9ULL + static_cast<std::uint64_t>(t));
    VecX k(n);
    for (int i = 0; i < n; ++i) k[i] = rng.uniform(-3.0, 3.0);
    const auto inv = invariants_from_curvatures(k);
    worst = std::max(worst, rel_diff(newton_f3(n, inv.H, inv.H2, inv.H3), inv.f3));
    worst = std::max(worst, rel_diff(newton_S(n, inv.H, inv.H2), inv.S));
    worst = std::max(worst, std::abs(gauss_residual(inv)));
  }
  return worst;
}

double gradient_gap_fuzz_min(int n, int trials, std::uint64_t seed) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    SplitMix64 seeds(seed + 0x51ed2701ULL * static_cast<std::uint64_t>(t));
    const double r = 1.0 + 2.0 * seeds.next_double();
    const auto pc = sample_constrained_curvatures(n, r, seeds.next_u64());
    const VecX grad = SplitMix64(seeds.next_u64()).normal_vector(n);
    lowest = std::min(lowest, cheng_yau_gradient_gap(pc, grad));
  }
  return lowest;
}

MoebiusFuzz moebius_fuzz(int ambient_dim, int trials, std::uint64_t seed) {
  MoebiusFuzz out;
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    VecX gv = rng.normal_vector(ambient_dim);
    gv *= rng.uniform(0.0, 0.95) / gv.norm();
    const BallPoint g(gv);
    VecX p = rng.normal_vector(ambient_dim);
    p /= p.norm();

    const VecX image = moebius_map(g, p);
    out.max_norm_defect = std::max(out.max_norm_defect, std::abs(image.norm() - 1.0));

    VecX v = rng.normal_vector(ambient_dim);
    v -= v.dot(p) * p;
    v /= v.norm();
    VecX w = rng.normal_vector(ambient_dim);
    w -= w.dot(p) * p;
    w /= w.norm();
    const VecX dv = moebius_differential(g, p, v);
    const VecX dw = moebius_differential(g, p, w);
    const double expected = conformal_factor(g, p) * v.dot(w);
    out.max_conformal_defect =
        std::max(out.max_conformal_defect,
                 std::abs(dv.dot(dw) - expected) /
                     std::max({1.0, std::abs(expected), std::abs(dv.dot(dw))}));
    // Tangency of the image vector.
    out.max_conformal_defect =
        std::max(out.max_conformal_defect, std::abs(dv.dot(image)) / std::max(1.0, dv.norm()));

    if (gv.norm() <= 0.9) {
      // Central differences along the normalized chord curve; the curve has
      // velocity v at t = 0, so this approximates dF_g(v) to O(h^2).
      const double h = 1e-5;
      const VecX ahead = (p + h * v).normalized();
      const VecX behind = (p - h * v).normalized();
      const VecX fd = (moebius_map(g, ahead) - moebius_map(g, behind)) / (2.0 * h);
      out.max_differential_defect =
          std::max(out.max_differential_defect, (fd - dv).norm() / std::max(1.0, dv.norm()));
    }
  }
  return out;
}

}  // namespace scalarspec
