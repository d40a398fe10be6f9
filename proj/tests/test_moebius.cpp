// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scalarspec/moebius.hpp"
#include "scalarspec/suites.hpp"

using namespace scalarspec;

TEST_CASE("map at the ball center is the identity") {
  const BallPoint g = BallPoint::zero(7);
  SplitMix64 rng(5);
  for (int t = 0; t < 20; ++t) {
    VecX p = rng.normal_vector(7);
    p /= p.norm();
    CHECK((moebius_map(g, p) - p).norm() < 1e-15);
    VecX v = rng.normal_vector(7);
    v -= v.dot(p) * p;
    CHECK((moebius_differential(g, p, v) - v).norm() < 1e-15);
  }
}

TEST_CASE("axis points are fixed") {
  VecX gv = VecX::Zero(7);
  gv[0] = 0.5;
  const BallPoint g(gv);
  VecX p = VecX::Zero(7);
  p[0] = 1.0;
  CHECK((moebius_map(g, p) - p).norm() < 1e-14);
}

TEST_CASE("frozen image of an equatorial point") {
  VecX gv = VecX::Zero(7);
  gv[0] = 0.5;
  const BallPoint g(gv);
  VecX p = VecX::Zero(7);
  p[1] = 1.0;
  const VecX image = moebius_map(g, p);
  CHECK(image[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(image[1] == doctest::Approx(0.8660254).epsilon(1e-7));
  CHECK(image.tail(5).norm() < 1e-15);
  CHECK(g.lambda() == doctest::Approx(1.1547005).epsilon(1e-7));
}

TEST_CASE("conformal factor at a frozen configuration") {
  VecX gv = VecX::Zero(7);
  gv[0] = 0.5;
  const BallPoint g(gv);
  VecX p = VecX::Zero(7);
  p[1] = 1.0;
  VecX v = VecX::Zero(7);
  v[0] = 1.0;  // tangent at p
  const VecX dv = moebius_differential(g, p, v);
  CHECK(dv.squaredNorm() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("ball guard and tangency guard") {
  CHECK_THROWS_AS(BallPoint(VecX::Ones(7)), BallError);
  VecX gv = VecX::Zero(7);
  gv[0] = 0.5;
  const BallPoint g(gv);
  VecX p = VecX::Zero(7);
  p[1] = 1.0;
  CHECK_THROWS_AS(moebius_differential(g, p, p), ParameterError);
}

TEST_CASE("mu is accurate from the center out to the rim") {
  for (double norm : {1e-12, 1e-8, 9e-7, 1.1e-6, 1e-4, 0.1, 0.5, 0.9, 0.999}) {
    VecX gv = VecX::Zero(7);
    gv[0] = norm;
    const BallPoint g(gv);
    // Long-double evaluation of the defining quotient (lambda - 1)/|g|^2,
    // with its series where the quotient itself would cancel.
    const long double s = static_cast<long double>(norm) * norm;
    const long double lambda = 1.0L / std::sqrt(1.0L - s);
    const long double reference =
        (norm > 1e-4) ? (lambda - 1.0L) / s : 0.5L + 0.375L * s + 0.3125L * s * s;
    CHECK(g.mu() == doctest::Approx(static_cast<double>(reference)).epsilon(1e-12));
  }
}

TEST_CASE("fuzz: norm preservation, conformal factor, differential") {
  const auto fuzz = moebius_fuzz(7, 10000, 20250808);
  CHECK(fuzz.max_norm_defect < 1e-12);
  CHECK(fuzz.max_conformal_defect < 1e-10);
  CHECK(fuzz.max_differential_defect < 1e-6);
}

TEST_CASE("composition with the reflected parameter inverts the map") {
  // Observed behavior of the family; exercised as a sanity property.
  SplitMix64 rng(77);
  double worst = 0.0;
  for (int t = 0; t < 2000; ++t) {
    VecX gv = rng.normal_vector(7);
    gv *= rng.uniform(0.0, 0.9) / gv.norm();
    const BallPoint g(gv);
    const BallPoint g_neg(VecX(-gv));
    VecX p = rng.normal_vector(7);
    p /= p.norm();
    worst = std::max(worst, (moebius_map(g_neg, moebius_map(g, p)) - p).norm());
  }
  CHECK(worst < 1e-9);
}
