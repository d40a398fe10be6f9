// SPDX-License-Identifier: Apache-2.0
//
// Closed-form model geometry and spectra.  Derived expectations are
// recomputed here through independent routes (scalar-curvature evaluation
// from raw principal curvatures, two-branch eigenvalue assembly) before
// being compared with the production formulas.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scalarspec/models.hpp"

#include <cmath>

using namespace scalarspec;

TEST_CASE("critical radius reproduces unit normalized scalar curvature") {
  SUBCASE("(5,1)") {
    const double c = critical_radius(5, 1);
    CHECK(c == doctest::Approx(0.6324555).epsilon(1e-7));
    CHECK(c * c == doctest::Approx(0.4).epsilon(1e-14));
    const auto inv = model_geometry(make_clifford(5, 1, c));
    CHECK(inv.r == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("(6,2)") {
    const double c = critical_radius(6, 2);
    CHECK(c == doctest::Approx(0.7376664).epsilon(1e-7));
    CHECK(c * c == doctest::Approx(0.5441518).epsilon(1e-7));
    CHECK(model_geometry(make_clifford(6, 2, c)).r == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("(4,2)") {
    const double c = critical_radius(4, 2);
    CHECK(c * c == doctest::Approx((6.0 + std::sqrt(12.0)) / 12.0).epsilon(1e-15));
    CHECK(c == doctest::Approx(0.8880738).epsilon(1e-7));
    const auto inv = model_geometry(make_clifford(4, 2, c));
    CHECK(inv.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(inv.H2) < 1e-12);
  }
  SUBCASE("parameter guards") {
    CHECK_THROWS_AS(critical_radius(5, 0), ParameterError);
    CHECK_THROWS_AS(critical_radius(5, 4), ParameterError);
  }
}

TEST_CASE("model geometry") {
  SUBCASE("umbilical(5, 2)") {
    const auto inv = model_geometry(make_umbilical(5, 2.0));
    CHECK(inv.H == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inv.S == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(inv.f3 == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(inv.H2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(inv.H3 == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("clifford(5, 1, critical)") {
    const auto inv = model_geometry(make_clifford(5, 1, 0.6324555));
    CHECK(inv.H == doctest::Approx(0.4082483).epsilon(1e-6));
    CHECK(inv.S == doctest::Approx(4.1666667).epsilon(1e-6));
    CHECK(inv.f3 == doctest::Approx(0.3402069).epsilon(1e-6));
    CHECK(inv.H3 == doctest::Approx(-0.2721655).epsilon(1e-6));
  }
  SUBCASE("explicit product formulas agree with the curvature route") {
    for (double c : {0.45, 0.55, 0.7, 0.85}) {
      for (int m : {1, 2, 3}) {
        const int n = 6;
        if (std::abs(n * c * c - m) < 1e-6) continue;
        const auto inv = model_geometry(make_clifford(n, m, c));
        const double s = std::sqrt(1.0 - c * c);
        const double H_formula = (n * c * c - m) / (c * n * s);
        const double S_formula = m * s * s / (c * c) + (n - m) * c * c / (s * s);
        const double f3_formula =
            -m * s * s * s / (c * c * c) + (n - m) * c * c * c / (s * s * s);
        const double sign = (H_formula >= 0.0) ? 1.0 : -1.0;  // H > 0 orientation
        CHECK(inv.H == doctest::Approx(sign * H_formula).epsilon(1e-12));
        CHECK(inv.S == doctest::Approx(S_formula).epsilon(1e-12));
        CHECK(inv.f3 == doctest::Approx(sign * f3_formula).epsilon(1e-12));
      }
    }
  }
  SUBCASE("balanced radius extras") {
    const double c = critical_radius(5, 1);
    const auto inv = model_geometry(make_clifford(5, 1, c));
    CHECK(inv.H3 == doctest::Approx(-2.0 * inv.H / 3.0).epsilon(1e-12));
    CHECK(inv.S == doctest::Approx(25.0 * inv.H * inv.H).epsilon(1e-12));
  }
  SUBCASE("degenerate and near-degenerate products rejected") {
    CHECK_THROWS_AS(make_clifford(5, 1, std::sqrt(0.2)), EllipticityError);
    CHECK_THROWS_AS(make_clifford(5, 1, std::sqrt((1.0 + 5e-9) / 5.0)), EllipticityError);
    CHECK_NOTHROW(make_clifford(5, 1, std::sqrt((1.0 + 5e-8) / 5.0)));
    CHECK_THROWS_AS(make_umbilical(5, 1.0), ParameterError);
  }
}

TEST_CASE("sphere Laplace spectra") {
  SUBCASE("circle factor") {
    const auto spec = sphere_laplace_spectrum(1, 0.6324555, 1);
    CHECK(spec.lambda2() == doctest::Approx(2.5).epsilon(1e-6));
    CHECK(spec.entries[1].multiplicity == 2);
  }
  SUBCASE("S^4 of radius sqrt(0.6)") {
    const auto spec = sphere_laplace_spectrum(4, std::sqrt(0.6), 1);
    CHECK(spec.lambda2() == doctest::Approx(4.0 / 0.6).epsilon(1e-14));
  }
  SUBCASE("unit 2-sphere harmonics") {
    const auto spec = sphere_laplace_spectrum(2, 1.0, 3);
    REQUIRE(spec.entries.size() == 4);
    const double expect_eig[] = {0, 2, 6, 12};
    const long long expect_mult[] = {1, 3, 5, 7};
    for (int l = 0; l <= 3; ++l) {
      CHECK(spec.entries[l].eigenvalue == doctest::Approx(expect_eig[l]).epsilon(1e-14));
      CHECK(spec.entries[l].multiplicity == expect_mult[l]);
    }
  }
  SUBCASE("harmonic multiplicities") {
    CHECK(sphere_harmonic_multiplicity(4, 1) == 5);
    CHECK(sphere_harmonic_multiplicity(5, 2) == 20);
    CHECK(sphere_harmonic_multiplicity(1, 3) == 2);
  }
}

TEST_CASE("Cheng-Yau operator spectrum of the product") {
  const double c = critical_radius(5, 1);
  SUBCASE("lambda2 equals both branches at the balanced radius") {
    const auto spec = box_spectrum(CliffordProduct{5, 1, c}, 1);
    const auto inv = model_geometry(make_clifford(5, 1, c));
    const double nH = 5.0 * inv.H;
    const double k1 = -std::sqrt(1.0 - c * c) / c;
    const double kn = c / std::sqrt(1.0 - c * c);
    const double branch1 = (nH - k1) * 2.5;
    const double branch2 = (nH - kn) * (4.0 / 0.6);
    CHECK(spec.lambda2() == doctest::Approx(8.1649658).epsilon(1e-7));
    CHECK(branch1 == doctest::Approx(branch2).epsilon(1e-12));
    CHECK(spec.lambda1() == 0.0);
    CHECK(spec.entries.front().multiplicity == 1);
  }
  SUBCASE("cutoff zero leaves only the constant mode") {
    const auto spec = box_spectrum(CliffordProduct{5, 1, c}, 0);
    REQUIRE(spec.entries.size() == 1);
    CHECK(spec.entries[0].eigenvalue == 0.0);
    CHECK(spec.entries[0].multiplicity == 1);
  }
  SUBCASE("branches agree at (6,2)") {
    const double c62 = critical_radius(6, 2);
    const auto spec = box_spectrum(CliffordProduct{6, 2, c62}, 1);
    const auto inv = model_geometry(make_clifford(6, 2, c62));
    CHECK(spec.lambda2() == doctest::Approx(6.0 * 5.0 * inv.H).epsilon(1e-9));
  }
  SUBCASE("non-elliptic product rejected") {
    CHECK_THROWS_AS(box_spectrum(CliffordProduct{5, 1, 0.3}, 1), EllipticityError);
  }
}

TEST_CASE("stability spectra of the models") {
  SUBCASE("umbilical(5,2)") {
    const auto spec = js_spectrum(make_umbilical(5, 2.0), 3);
    CHECK(spec.lambda1() == doctest::Approx(-40.0).epsilon(1e-13));
    CHECK(spec.lambda2() == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("umbilical(6,1.25)") {
    const auto spec = js_spectrum(make_umbilical(6, 1.25), 2);
    CHECK(spec.lambda1() == doctest::Approx(-18.75).epsilon(1e-13));
    CHECK(std::abs(spec.lambda2()) < 1e-12);
  }
  SUBCASE("clifford(5,1,critical)") {
    const auto spec = js_spectrum(make_clifford(5, 1, critical_radius(5, 1)), 3);
    CHECK(spec.lambda1() == doctest::Approx(-16.3299316).epsilon(1e-7));
    CHECK(spec.lambda2() == doctest::Approx(-8.1649658).epsilon(1e-7));
  }
}

TEST_CASE("spectra are strictly increasing with positive multiplicities") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 6);
    const int m = 1 + static_cast<int>(rng.next_u64() % (n - 2));
    // Ellipticity needs (n-1) c^2 > m, stronger than the H > 0 condition.
    const double c_lo = std::sqrt(m / (n - 1.0) + 1e-6);
    const double c = c_lo + (0.98 - c_lo) * rng.next_double();
    const auto model = make_clifford(n, m, c);
    for (const auto& spec :
         {box_spectrum(std::get<CliffordProduct>(model), 3), js_spectrum(model, 3)}) {
      for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        REQUIRE(spec.entries[i].multiplicity >= 1);
        if (i > 0) REQUIRE(spec.entries[i].eigenvalue > spec.entries[i - 1].eigenvalue);
      }
    }
  }
}

TEST_CASE("balanced-radius identities across the sweep") {
  for (int n = 5; n <= 12; ++n) {
    for (int m = 1; m <= n - 2; ++m) {
      const auto res = verify_critical_identities(n, m);
      for (double v : res) REQUIRE(v < 1e-9);
    }
  }
  SUBCASE("spot checks named in the build") {
    for (auto [n, m] : {std::pair{5, 1}, std::pair{6, 2}, std::pair{12, 10}}) {
      const auto res = verify_critical_identities(n, m);
      for (double v : res) CHECK(v < 1e-9);
    }
  }
  SUBCASE("the identities are algebraic and hold below n = 5 too") {
    for (auto [n, m] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
      const auto res = verify_critical_identities(n, m);
      for (double v : res) CHECK(v < 1e-9);
    }
  }
}

TEST_CASE("eigenvalue ordering chain on balanced products") {
  for (int n = 5; n <= 12; ++n)
    for (int m = 1; m <= n - 2; ++m) {
      const auto model = make_clifford(n, m, critical_radius(n, m));
      const auto inv = model_geometry(model);
      const auto spec = js_spectrum(model, 2);
      const double nn = n;
      const auto box = box_spectrum(std::get<CliffordProduct>(model), 1);
      REQUIRE(box.lambda1() == 0.0);
      REQUIRE(box.entries.front().multiplicity == 1);
      // The lambda2 eigenspace at the balanced radius is spanned by the
      // n+2 ambient coordinates: the two degree-1 branches coincide and
      // their multiplicities (m+1) + (n-m+1) merge.
      REQUIRE(spec.entries[1].multiplicity == n + 2);
      REQUIRE(spec.lambda1() < spec.lambda2());
      REQUIRE(spec.lambda2() < 0.0);
      REQUIRE(std::abs(spec.lambda1() + 2.0 * nn * (nn - 1) * inv.H) < 1e-9);
      REQUIRE(std::abs(spec.lambda2() + nn * (nn - 1) * inv.H) < 1e-9);
      REQUIRE(std::abs(spec.lambda2() - 0.5 * nn * (nn - 1) * (nn - 2) * inv.H3) < 1e-9);
    }
}

TEST_CASE("umbilical spectra across the r sweep") {
  for (int n = 5; n <= 12; ++n)
    for (double r : {1.1, 1.5, 2.0, 3.0}) {
      const auto spec = js_spectrum(make_umbilical(n, r), 2);
      const double expected = -n * (n - 1.0) * r * std::sqrt(r - 1.0);
      REQUIRE(rel_diff(spec.lambda1(), expected) < 1e-10);
      REQUIRE(std::abs(spec.lambda2()) < 1e-10);
    }
}

TEST_CASE("bound reports") {
  SUBCASE("umbilical(5,2): equalities for the r > 1 bounds") {
    const auto reports = evaluate_bounds(make_umbilical(5, 2.0));
    REQUIRE(reports.size() == 5);
    for (const auto& rep : reports) {
      if (rep.tag == BoundTag::T11) {
        CHECK(!rep.skipped);
        CHECK(rep.bound_value == doctest::Approx(-40.0));
        CHECK(rep.equality);
      } else if (rep.tag == BoundTag::T13) {
        CHECK(!rep.skipped);
        CHECK(rep.bound_value == 0.0);
        CHECK(rep.equality);
      } else if (rep.tag == BoundTag::R41) {
        CHECK(!rep.skipped);
        CHECK(rep.bound_value == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(rep.equality);
      } else {
        CHECK(rep.skipped);  // r = 1 family does not apply
        CHECK(rep.pass);
      }
    }
  }
  SUBCASE("clifford(5,1,critical): equalities for the r = 1 bounds") {
    const auto reports = evaluate_bounds(make_clifford(5, 1, critical_radius(5, 1)));
    for (const auto& rep : reports) {
      if (rep.tag == BoundTag::T12) {
        CHECK(!rep.skipped);
        CHECK(rep.bound_value == doctest::Approx(-16.3299316).epsilon(1e-7));
        CHECK(rep.equality);
      } else if (rep.tag == BoundTag::T14) {
        CHECK(!rep.skipped);
        CHECK(rep.bound_value == doctest::Approx(-8.1649658).epsilon(1e-7));
        CHECK(rep.equality);
      } else {
        CHECK(rep.skipped);
      }
    }
  }
  SUBCASE("non-balanced product with r > 1: strict inequalities") {
    const auto model = make_clifford(5, 1, 0.8);
    const auto inv = model_geometry(model);
    REQUIRE(inv.r > 1.0);
    for (const auto& rep : evaluate_bounds(model)) {
      REQUIRE(rep.pass);
      if (!rep.skipped && (rep.tag == BoundTag::T11 || rep.tag == BoundTag::T13))
        CHECK(rep.slack > 1e-6);  // genuinely strict away from the equality case
    }
  }
  SUBCASE("small-radius product is elliptic with the flipped orientation") {
    // c^2 < (m-1)/(n-1) puts both Cheng-Yau coefficients on the other sign;
    // the stored H > 0 orientation makes the whole pipeline elliptic again.
    const auto model = make_clifford(6, 3, 0.4);
    const auto inv = model_geometry(model);
    REQUIRE(inv.H > 0.0);
    REQUIRE(inv.r > 1.0);
    const auto spec = js_spectrum(model, 2);
    CHECK(spec.lambda1() < spec.lambda2());
    for (const auto& rep : evaluate_bounds(model)) REQUIRE(rep.pass);
  }
}
