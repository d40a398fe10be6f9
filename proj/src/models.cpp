// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/models.hpp"

#include <algorithm>
#include <cmath>

namespace scalarspec {

namespace {

constexpr double kDegenerateTol = 1e-8;  // |n c^2 - m| below this is rejected
constexpr double kMergeTol = 1e-9;       // eigenvalues closer than this merge
constexpr double kEqualityTol = 1e-10;

/// Merge a list of (eigenvalue, multiplicity) pairs into a strictly
/// increasing spectrum, summing multiplicities of coincident values.
std::vector<Spectrum::Entry> merge_entries(std::vector<Spectrum::Entry> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.eigenvalue < b.eigenvalue; });
  std::vector<Spectrum::Entry> merged;
  for (const auto& e : raw) {
    if (!merged.empty() &&
        std::abs(e.eigenvalue - merged.back().eigenvalue) <=
            kMergeTol * std::max(1.0, std::abs(e.eigenvalue))) {
      merged.back().multiplicity += e.multiplicity;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

}  // namespace

HypersurfaceModel make_umbilical(int n, double r) {
  if (n < 3) throw DimensionError("make_umbilical: need n >= 3");
  if (!(r > 1.0)) throw ParameterError("make_umbilical: need r > 1");
  return UmbilicalSphere{n, r};
}

HypersurfaceModel make_clifford(int n, int m, double c) {
  if (n < 3) throw DimensionError("make_clifford: need n >= 3");
  if (m < 1 || m > n - 2) throw ParameterError("make_clifford: need 1 <= m <= n-2");
  if (!(c > 0.0 && c < 1.0)) throw ParameterError("make_clifford: need c in (0,1)");
  if (std::abs(n * c * c - m) < kDegenerateTol)
    throw EllipticityError("make_clifford: H = 0 at n c^2 = m");
  return CliffordProduct{n, m, c};
}

int model_dimension(const HypersurfaceModel& model) {
  return std::visit([](const auto& m) { return m.n; }, model);
}

std::string model_name(const HypersurfaceModel& model) {
  if (const auto* u = std::get_if<UmbilicalSphere>(&model))
    return "umbilical(n=" + std::to_string(u->n) + ",r=" + std::to_string(u->r) + ")";
  const auto& c = std::get<CliffordProduct>(model);
  return "clifford(n=" + std::to_string(c.n) + ",m=" + std::to_string(c.m) +
         ",c=" + std::to_string(c.c) + ")";
}

PrincipalCurvatures model_curvatures(const HypersurfaceModel& model) {
  if (const auto* u = std::get_if<UmbilicalSphere>(&model)) {
    const double H = std::sqrt(u->r - 1.0);
    return PrincipalCurvatures(VecX::Constant(u->n, H));
  }
  const auto& cp = std::get<CliffordProduct>(model);
  const double s = std::sqrt(1.0 - cp.c * cp.c);
  VecX k(cp.n);
  k.head(cp.m).setConstant(-s / cp.c);
  k.tail(cp.n - cp.m).setConstant(cp.c / s);
  if (k.mean() < 0.0) k = -k;  // flip the normal so H > 0
  return PrincipalCurvatures(std::move(k));
}

double critical_radius(int n, int m) {
  if (n < 3) throw DimensionError("critical_radius: need n >= 3");
  if (m < 1 || m > n - 2) throw ParameterError("critical_radius: need 1 <= m <= n-2");
  const double nn = n, mm = m;
  const double c2 = ((nn - 1) * mm + std::sqrt((nn - 1) * mm * (nn - mm))) / (nn * (nn - 1));
  return std::sqrt(c2);
}

CurvatureInvariants model_geometry(const HypersurfaceModel& model) {
  return invariants_from_curvatures(model_curvatures(model));
}

std::string to_string(OperatorTag tag) {
  switch (tag) {
    case OperatorTag::Laplacian: return "Delta";
    case OperatorTag::Box: return "Box";
    case OperatorTag::Jacobi: return "Js";
  }
  return "?";
}

double Spectrum::lambda1() const {
  if (entries.empty()) throw ParameterError("Spectrum: empty");
  return entries.front().eigenvalue;
}

double Spectrum::lambda2() const {
  if (entries.empty()) throw ParameterError("Spectrum: empty");
  if (entries.front().multiplicity > 1) return entries.front().eigenvalue;
  if (entries.size() < 2) throw ParameterError("Spectrum: lambda2 beyond cutoff");
  return entries[1].eigenvalue;
}

long long sphere_harmonic_multiplicity(int k_dim, int l) {
  if (k_dim < 1 || l < 0) throw ParameterError("sphere_harmonic_multiplicity: bad arguments");
  if (l == 0) return 1;
  if (k_dim == 1) return 2;
  // (2l + k - 1)/(k - 1) * C(l + k - 2, l), exact in 64-bit for the cutoffs
  // used here.
  long long binom = 1;
  for (int i = 1; i <= k_dim - 2; ++i) {
    binom = binom * (l + i) / i;
  }
  return binom * (2LL * l + k_dim - 1) / (k_dim - 1);
}

Spectrum sphere_laplace_spectrum(int k_dim, double c, int l_max) {
  if (k_dim < 1) throw ParameterError("sphere_laplace_spectrum: need k_dim >= 1");
  if (!(c > 0.0)) throw ParameterError("sphere_laplace_spectrum: need c > 0");
  if (l_max < 0) throw ParameterError("sphere_laplace_spectrum: need l_max >= 0");
  Spectrum spec;
  spec.operator_tag = OperatorTag::Laplacian;
  spec.cutoff = "l<=" + std::to_string(l_max);
  for (int l = 0; l <= l_max; ++l) {
    const double lam = static_cast<double>(l) * (l + k_dim - 1) / (c * c);
    spec.entries.push_back({lam, sphere_harmonic_multiplicity(k_dim, l)});
  }
  return spec;
}

Spectrum box_spectrum(const CliffordProduct& model, int l_max) {
  const PrincipalCurvatures pc = model_curvatures(model);
  const double nH = model.n * pc.k.mean();
  const double k_first = pc.k[0];
  const double k_last = pc.k[model.n - 1];
  const double a = nH - k_first;  // coefficient of the S^m factor Laplacian
  const double b = nH - k_last;   // coefficient of the S^{n-m} factor Laplacian
  if (!(a > 0.0) || !(b > 0.0))
    throw EllipticityError("box_spectrum: Cheng-Yau coefficients not positive");

  const double cm = model.c;
  const double cs = std::sqrt(1.0 - cm * cm);
  const Spectrum d1 = sphere_laplace_spectrum(model.m, cm, l_max);
  const Spectrum d2 = sphere_laplace_spectrum(model.n - model.m, cs, l_max);

  std::vector<Spectrum::Entry> raw;
  raw.reserve(d1.entries.size() * d2.entries.size());
  for (const auto& e1 : d1.entries)
    for (const auto& e2 : d2.entries)
      raw.push_back({a * e1.eigenvalue + b * e2.eigenvalue, e1.multiplicity * e2.multiplicity});

  Spectrum spec;
  spec.operator_tag = OperatorTag::Box;
  spec.cutoff = "l<=" + std::to_string(l_max) + " per factor";
  spec.entries = merge_entries(std::move(raw));

  if (l_max >= 1) {
    // The second entry must be the smaller of the two single-degree branches.
    const double branch_min = std::min(a * d1.entries[1].eigenvalue, b * d2.entries[1].eigenvalue);
    if (std::abs(spec.lambda2() - branch_min) > 1e-12 * std::max(1.0, std::abs(branch_min)))
      throw ConsistencyError("box_spectrum: lambda2 disagrees with branch minimum");
  }
  return spec;
}

Spectrum js_spectrum(const HypersurfaceModel& model, int l_max) {
  Spectrum spec;
  spec.operator_tag = OperatorTag::Jacobi;
  if (const auto* u = std::get_if<UmbilicalSphere>(&model)) {
    const double H = std::sqrt(u->r - 1.0);
    const double shift = u->n * (u->n - 1.0) * H * (1.0 + H * H);
    // Intrinsic round sphere of scalar curvature n(n-1)r: lambda^Delta = l(l+n-1) r.
    const Spectrum lap = sphere_laplace_spectrum(u->n, 1.0 / std::sqrt(u->r), l_max);
    spec.cutoff = lap.cutoff;
    for (const auto& e : lap.entries)
      spec.entries.push_back({(u->n - 1.0) * H * e.eigenvalue - shift, e.multiplicity});
    return spec;
  }
  const auto& cp = std::get<CliffordProduct>(model);
  const Spectrum box = box_spectrum(cp, l_max);
  const double order0 = jacobi_order0(cp.n, model_geometry(model));
  spec.cutoff = box.cutoff;
  spec.entries.reserve(box.entries.size());
  for (const auto& e : box.entries)
    spec.entries.push_back({e.eigenvalue - order0, e.multiplicity});
  return spec;
}

std::array<double, 4> verify_critical_identities(int n, int m) {
  const double c = critical_radius(n, m);
  const CliffordProduct model{n, m, c};
  const PrincipalCurvatures pc = model_curvatures(model);
  const CurvatureInvariants inv = invariants_from_curvatures(pc);

  const double nH = n * inv.H;
  const double a = nH - pc.k[0];
  const double b = nH - pc.k[n - 1];
  const double cs = std::sqrt(1.0 - c * c);
  const double branch1 = a * (static_cast<double>(m) / (c * c));
  const double branch2 = b * (static_cast<double>(n - m) / (cs * cs));

  const double order0 = jacobi_order0(n, inv);
  const double lambda2 = std::min(branch1, branch2) - order0;
  const double nn = n;

  return {std::abs(branch1 - branch2), std::abs(order0 - 2.0 * nn * (nn - 1) * inv.H),
          std::abs(lambda2 + nn * (nn - 1) * inv.H),
          std::abs(lambda2 - 0.5 * nn * (nn - 1) * (nn - 2) * inv.H3)};
}

std::string to_string(BoundTag tag) {
  switch (tag) {
    case BoundTag::T11: return "T1.1";
    case BoundTag::T12: return "T1.2";
    case BoundTag::T13: return "T1.3";
    case BoundTag::T14: return "T1.4";
    case BoundTag::R41: return "R4.1";
  }
  return "?";
}

std::vector<BoundReport> evaluate_bounds(const HypersurfaceModel& model, int l_max) {
  const CurvatureInvariants inv = model_geometry(model);
  const int n = inv.n;
  const double nn = n;
  const Spectrum js = js_spectrum(model, l_max);
  const double lam1 = js.lambda1();
  const double lam2 = js.lambda2();

  const bool r_above_one = inv.r > 1.0 + kEqualityTol;
  const bool r_is_one = std::abs(inv.r - 1.0) <= kEqualityTol;
  const bool h3_nonzero = std::abs(inv.H3) > kEqualityTol;

  auto make = [&](BoundTag tag, double bound, double computed) {
    BoundReport rep;
    rep.model = model;
    rep.tag = tag;
    rep.bound_value = bound;
    rep.computed_value = computed;
    rep.slack = bound - computed;
    rep.pass = computed <= bound + kEqualityTol;
    rep.equality = std::abs(rep.slack) < kEqualityTol;
    return rep;
  };
  auto skip = [&](BoundTag tag, const std::string& why) {
    BoundReport rep;
    rep.model = model;
    rep.tag = tag;
    rep.skipped = true;
    rep.pass = true;
    rep.reason = why;
    return rep;
  };

  std::vector<BoundReport> out;

  // First-eigenvalue bounds.
  if (r_above_one)
    out.push_back(make(BoundTag::T11, -nn * (nn - 1) * inv.r * std::sqrt(inv.r - 1.0), lam1));
  else
    out.push_back(skip(BoundTag::T11, "requires r > 1"));

  if (r_is_one && h3_nonzero)
    out.push_back(make(BoundTag::T12, -2.0 * nn * (nn - 1) * std::abs(inv.H), lam1));
  else
    out.push_back(skip(BoundTag::T12, "requires r = 1 and H3 != 0"));

  // Second-eigenvalue bounds.
  if (r_above_one && n >= 5)
    out.push_back(make(BoundTag::T13, 0.0, lam2));
  else
    out.push_back(skip(BoundTag::T13, "requires r > 1 and n >= 5"));

  if (r_is_one && h3_nonzero && n >= 5)
    out.push_back(
        make(BoundTag::T14, -0.5 * nn * (nn - 1) * (nn - 2) * std::abs(inv.H3), lam2));
  else
    out.push_back(skip(BoundTag::T14, "requires r = 1, H3 != 0, n >= 5"));

  if (r_above_one && n >= 5) {
    const double rm1 = inv.r - 1.0;
    const double bound =
        nn * (nn - 1) *
        (rm1 * rm1 / inv.H + 0.5 * (nn - 2) * inv.H3 - 0.5 * nn * rm1 * inv.H);
    out.push_back(make(BoundTag::R41, bound, lam2));
  } else {
    out.push_back(skip(BoundTag::R41, "requires r > 1 and n >= 5"));
  }

  return out;
}

}  // namespace scalarspec
