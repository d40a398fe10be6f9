// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances and runtime limits are pinned in code.

#include "scalarspec/balancing.hpp"
#include "scalarspec/models.hpp"
#include "scalarspec/suites.hpp"
#include "scalarspec/zonal.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

using namespace scalarspec;

namespace {

int failures = 0;

void criterion(int index, const std::string& label, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& err) {
    detail = std::string("exception: ") + err.what();
  }
  std::printf("criterion %2d: %s  %s%s%s\n", index, ok ? "PASS" : "FAIL", label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

}  // namespace

int main() {
  // 1. Four balanced-radius identities across 5 <= n <= 12, 1 <= m <= n-2.
  criterion(1, "balanced-radius identities < 1e-9 across the sweep, under 1 s",
            [](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              double worst = 0.0;
              for (int n = 5; n <= 12; ++n)
                for (int m = 1; m <= n - 2; ++m)
                  for (double r : verify_critical_identities(n, m)) worst = std::max(worst, r);
              const double elapsed = seconds_since(t0);
              detail = fmt("worst residual %.3e, %.3f s", worst, elapsed);
              return worst < 1e-9 && elapsed < 1.0;
            });

  // 2. Eigenvalue equality chain on the balanced products.
  criterion(2, "lambda1 = -2n(n-1)H < lambda2 = -n(n-1)H = (n(n-1)(n-2)/2)H3 < 0, within 1e-9",
            [](std::string& detail) {
              double worst = 0.0;
              bool ordered = true;
              for (int n = 5; n <= 12; ++n)
                for (int m = 1; m <= n - 2; ++m) {
                  const auto model = make_clifford(n, m, critical_radius(n, m));
                  const auto inv = model_geometry(model);
                  const auto spec = js_spectrum(model, 2);
                  const double nn = n;
                  worst = std::max(worst, std::abs(spec.lambda1() + 2.0 * nn * (nn - 1) * inv.H));
                  worst = std::max(worst, std::abs(spec.lambda2() + nn * (nn - 1) * inv.H));
                  worst = std::max(worst, std::abs(spec.lambda2() -
                                                   0.5 * nn * (nn - 1) * (nn - 2) * inv.H3));
                  ordered = ordered && spec.lambda1() < spec.lambda2() && spec.lambda2() < 0.0;
                }
              const double spot = js_spectrum(make_clifford(5, 1, critical_radius(5, 1)), 1).lambda2();
              const double spot_err = std::abs(spot - (-8.1649658));
              detail = fmt("worst residual %.3e, spot |lambda2 + 8.1649658| = %.3e", worst, spot_err);
              return worst < 1e-9 && ordered && spot_err < 1e-7;
            });

  // 3. Umbilical spectra across the r sweep.
  criterion(3, "umbilical lambda1 = -n(n-1)r sqrt(r-1) (1e-10 rel), lambda2 = 0 (1e-10 abs)",
            [](std::string& detail) {
              double worst1 = 0.0, worst2 = 0.0;
              for (int n = 5; n <= 12; ++n)
                for (double r : {1.1, 1.5, 2.0, 3.0}) {
                  const auto spec = js_spectrum(make_umbilical(n, r), 2);
                  worst1 = std::max(worst1,
                                    rel_diff(spec.lambda1(), -n * (n - 1.0) * r * std::sqrt(r - 1.0)));
                  worst2 = std::max(worst2, std::abs(spec.lambda2()));
                }
              const double spot = js_spectrum(make_umbilical(5, 2.0), 1).lambda1();
              detail = fmt("worst rel %.3e, worst |lambda2| %.3e", worst1, worst2) +
                       fmt(", spot lambda1 = %.12g", spot);
              return worst1 < 1e-10 && worst2 < 1e-10 && std::abs(spot + 40.0) < 1e-10;
            });

  // 4. Bound suites with equality on the attaining models.
  criterion(4, "T1.1/T1.2 and T1.3/T1.4/R4.1 bounds hold, equality on their models (1e-9)",
            [](std::string& detail) {
              double worst_eq = 0.0;
              bool all_hold = true;
              for (int n = 5; n <= 12; ++n) {
                for (double r : {1.5, 2.0, 3.0}) {
                  for (const auto& rep : evaluate_bounds(make_umbilical(n, r))) {
                    if (rep.skipped) continue;
                    all_hold = all_hold && rep.computed_value <= rep.bound_value + 1e-9;
                    worst_eq = std::max(worst_eq, std::abs(rep.slack));  // all umbilical rows attain
                  }
                }
                for (int m = 1; m <= n - 2; ++m) {
                  const auto model = make_clifford(n, m, critical_radius(n, m));
                  for (const auto& rep : evaluate_bounds(model)) {
                    if (rep.skipped) continue;
                    all_hold = all_hold && rep.computed_value <= rep.bound_value + 1e-9;
                    worst_eq = std::max(worst_eq, std::abs(rep.slack));
                  }
                }
              }
              detail = fmt("worst |slack| on equality models %.3e", worst_eq);
              return all_hold && worst_eq < 1e-9;
            });

  // 5. Newton and Gauss identity fuzzing.
  criterion(5, "Newton/Gauss identities < 1e-10 rel over 1000 draws per n in 3..12, under 1 s",
            [](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              double worst = 0.0;
              for (int n = 3; n <= 12; ++n)
                worst = std::max(worst, newton_identity_fuzz(n, 1000, 42 + n));
              const double elapsed = seconds_since(t0);
              detail = fmt("worst rel residual %.3e, %.3f s", worst, elapsed);
              return worst < 1e-10 && elapsed < 1.0;
            });

  // 6. Pointwise gradient-gap positivity.
  criterion(6, "gradient gap >= -1e-12 over 1e5 constrained draws (n >= 5), under 5 s",
            [](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              double lowest = std::numeric_limits<double>::infinity();
              for (int n = 5; n <= 12; ++n)
                lowest = std::min(lowest, gradient_gap_fuzz_min(n, 12500, 7 + 31 * n));
              const double elapsed = seconds_since(t0);
              detail = fmt("min value %.3e, %.3f s", lowest, elapsed);
              return lowest >= -1e-12 && elapsed < 5.0;
            });

  // 7. Discrete confirmation of the closed-form spectra.
  criterion(7, "zonal FD: S^4(sqrt 0.6) lambda2 within 2e-3, order 2 +/- 0.3, product within 5e-3, under 10 s",
            [](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              const double exact = 4.0 / 0.6;
              std::vector<double> errors;
              for (int N : {200, 400, 800}) {
                const auto op = zonal_laplacian(ZonalGrid(4, std::sqrt(0.6), N));
                errors.push_back(smallest_eigenvalues(op, 2)[1] - exact);
              }
              const double order = observed_order(errors[0], errors[1], errors[2]);
              const double c = critical_radius(5, 1);
              const double discrete = discrete_clifford_lambda2(5, 1, c, 800);
              const double product_err = std::abs(discrete - (-8.1649658));
              const double elapsed = seconds_since(t0);
              detail = fmt("lambda2 err %.3e, order %.3f", std::abs(errors.back()), order) +
                       fmt(", product err %.3e, %.3f s", product_err, elapsed);
              return std::abs(errors.back()) < 2e-3 && std::abs(order - 2.0) <= 0.3 &&
                     product_err < 5e-3 && elapsed < 10.0;
            });

  // 8. Conformal machinery fuzz.
  criterion(8, "|F_g(p)| = 1 (1e-12), conformal factor (1e-10), differential vs FD (1e-6), 1e4 trials",
            [](std::string& detail) {
              const auto fuzz = moebius_fuzz(7, 10000, 20250808);
              detail = fmt("norm %.3e, factor %.3e", fuzz.max_norm_defect,
                           fuzz.max_conformal_defect) +
                       fmt(", fd %.3e", fuzz.max_differential_defect);
              return fuzz.max_norm_defect < 1e-12 && fuzz.max_conformal_defect < 1e-10 &&
                     fuzz.max_differential_defect < 1e-6;
            });

  // Shared samples for the centering / min-max / Hessian criteria.
  const auto clifford_sample = sample_model(make_clifford(5, 1, critical_radius(5, 1)), 64);
  const auto umbilical_sample = sample_model(make_umbilical(5, 2.0), 64);

  // 9. Centering behavior at resolution 64.
  criterion(9, "centering: symmetric |g| <= 1e-10, residuals <= 1e-8 mass, Newton <= 25 iterations",
            [&](std::string& detail) {
              const VecX ones = VecX::Ones(clifford_sample.count());
              const auto sym = centering_solve(clifford_sample, ones, 1e-8);
              VecX u(clifford_sample.count());
              for (Index j = 0; j < clifford_sample.count(); ++j)
                u[j] = 1.0 + 0.5 * clifford_sample.positions(0, j);
              const auto tilt = centering_solve(clifford_sample, u, 1e-8);
              detail = fmt("|g| %.3e, tilted residual/mass %.3e", sym.g.g().norm(),
                           tilt.residual / tilt.mass) +
                       fmt(", iterations %g", double(tilt.iterations));
              return sym.g.g().norm() <= 1e-10 && sym.residual <= 1e-8 * sym.mass &&
                     tilt.residual <= 1e-8 * tilt.mass && tilt.iterations <= 25;
            });

  // 10. Min-max chain equalities.
  criterion(10, "min-max chain: product equality within 1e-6 rel, umbilical closes at 0 within 1e-8",
            [&](std::string& detail) {
              const auto prod =
                  minmax_chain_check(clifford_sample, VecX::Ones(clifford_sample.count()), 1e-6);
              const double prod_defect =
                  std::abs(prod.rayleigh_sum - prod.lambda2 * prod.volume) /
                  std::max(1.0, std::abs(prod.lambda2 * prod.volume));
              const auto umb =
                  minmax_chain_check(umbilical_sample, VecX::Ones(umbilical_sample.count()), 1e-8);
              const double umb_defect = std::abs(umb.rayleigh_sum) / std::max(1.0, umb.volume);
              detail = fmt("product rel defect %.3e, umbilical closure %.3e", prod_defect, umb_defect);
              return prod.pass && prod_defect < 1e-6 && umb.pass && umb_defect < 1e-8;
            });

  // 11. Support-function Hessian identities by finite differences.
  criterion(11, "support-function derivatives: FD residual < 1e-5 at step 1e-4, both families",
            [&](std::string& detail) {
              double worst = 0.0;
              for (int axis : {0, 3, 6}) {
                worst = std::max(worst, support_hessian_check(clifford_sample, VecX::Unit(7, axis)));
                worst = std::max(worst, support_hessian_check(umbilical_sample, VecX::Unit(7, axis)));
              }
              detail = fmt("worst residual %.3e", worst);
              return worst < 1e-5;
            });

  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
