// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/sampling.hpp"

#include <json.hpp>

#include <cmath>

namespace scalarspec {

namespace {

/// Orthonormal tangent basis at a unit vector u in R^D: the D-1 columns
/// (j != axis) of the Householder reflection built from v = u + sign(u_a) e_a.
/// Deterministic in u.
MatX tangent_basis(const VecX& u) {
  const Index D = u.size();
  Index axis = 0;
  u.cwiseAbs().maxCoeff(&axis);
  const double sigma = (u[axis] >= 0.0) ? 1.0 : -1.0;
  VecX v = u;
  v[axis] += sigma;
  const double beta = 2.0 / v.squaredNorm();

  MatX basis(D, D - 1);
  Index col = 0;
  for (Index j = 0; j < D; ++j) {
    if (j == axis) continue;
    basis.col(col) = -beta * v[j] * v;
    basis(j, col) += 1.0;
    ++col;
  }
  return basis;
}

}  // namespace

Rule1D gauss_legendre(int q) {
  if (q < 1) throw ParameterError("gauss_legendre: need q >= 1");
  Rule1D rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_q(x) and P_{q-1}(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // ascending order
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

Rule1D gauss_chebyshev_u(int q) {
  if (q < 1) throw ParameterError("gauss_chebyshev_u: need q >= 1");
  Rule1D rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 1; i <= q; ++i) {
    const double angle = M_PI * i / (q + 1.0);
    rule.nodes[q - i] = std::cos(angle);
    const double s = std::sin(angle);
    rule.weights[q - i] = M_PI / (q + 1.0) * s * s;
  }
  return rule;
}

SphereRule sphere_rule(int dim, int polar_nodes, int azimuth_nodes) {
  if (dim < 1) throw ParameterError("sphere_rule: need dim >= 1");
  if (polar_nodes < 2) throw ParameterError("sphere_rule: need polar_nodes >= 2");
  if (azimuth_nodes < 4 || azimuth_nodes % 2 != 0)
    throw ParameterError("sphere_rule: azimuth_nodes must be even and >= 4");

  if (dim == 1) {
    SphereRule rule;
    rule.points.resize(2, azimuth_nodes);
    rule.weights = VecX::Constant(azimuth_nodes, 2.0 * M_PI / azimuth_nodes);
    for (int j = 0; j < azimuth_nodes; ++j) {
      const double chi = 2.0 * M_PI * j / azimuth_nodes;
      rule.points(0, j) = std::cos(chi);
      rule.points(1, j) = std::sin(chi);
    }
    return rule;
  }

  // Polar rule with the weight (1 - t^2)^{(dim-2)/2}: for even dim-2 fold the
  // polynomial into Gauss-Legendre weights, otherwise peel off sqrt(1 - t^2)
  // with a Chebyshev rule of the second kind and fold the remainder.
  Rule1D polar;
  int fold;
  if ((dim - 2) % 2 == 0) {
    polar = gauss_legendre(polar_nodes);
    fold = (dim - 2) / 2;
  } else {
    polar = gauss_chebyshev_u(polar_nodes);
    fold = (dim - 3) / 2;
  }

  const SphereRule sub = sphere_rule(dim - 1, polar_nodes, azimuth_nodes);
  const Index sub_count = sub.weights.size();

  SphereRule rule;
  rule.points.resize(dim + 1, polar_nodes * sub_count);
  rule.weights.resize(polar_nodes * sub_count);
  Index col = 0;
  for (int a = 0; a < polar_nodes; ++a) {
    const double t = polar.nodes[a];
    const double one_mt2 = 1.0 - t * t;
    const double sine = std::sqrt(one_mt2);
    const double wt = polar.weights[a] * std::pow(one_mt2, fold);
    for (Index b = 0; b < sub_count; ++b, ++col) {
      rule.points(0, col) = t;
      rule.points.col(col).tail(dim) = sine * sub.points.col(b);
      rule.weights[col] = wt * sub.weights[b];
    }
  }
  return rule;
}

SamplingOptions SamplingOptions::from_resolution(int resolution) {
  if (resolution < 8 || resolution % 2 != 0)
    throw ParameterError("sample_model: resolution must be even and >= 8");
  const int q = std::max(4, resolution / 8);
  return SamplingOptions{resolution, q, std::max(8, 2 * q)};
}

SampledHypersurface sample_model(const HypersurfaceModel& model, int resolution) {
  return sample_model(model, SamplingOptions::from_resolution(resolution));
}

SampledHypersurface sample_model(const HypersurfaceModel& model, const SamplingOptions& opts) {
  if (opts.circle_nodes < 8 || opts.circle_nodes % 2 != 0)
    throw ParameterError("sample_model: circle_nodes must be even and >= 8");
  if (opts.polar_nodes < 4) throw ParameterError("sample_model: need polar_nodes >= 4");

  SampledHypersurface out;
  out.model = model;

  if (const auto* u = std::get_if<UmbilicalSphere>(&model)) {
    const int n = u->n;
    const double sin_phi = 1.0 / std::sqrt(u->r);
    const double cos_phi = std::sqrt((u->r - 1.0) / u->r);
    const double curvature = std::sqrt(u->r - 1.0);

    const SphereRule rule = sphere_rule(n, opts.polar_nodes, opts.azimuth_nodes);
    const Index M = rule.weights.size();
    const double measure = std::pow(sin_phi, n);

    out.positions.resize(n + 2, M);
    out.normals.resize(n + 2, M);
    out.weights.resize(M);
    out.frames.resize(n + 2, M * n);
    out.shapes = MatX::Constant(n, M, curvature);

    for (Index j = 0; j < M; ++j) {
      const VecX omega = rule.points.col(j);
      out.positions.col(j).head(n + 1) = sin_phi * omega;
      out.positions(n + 1, j) = cos_phi;
      out.normals.col(j).head(n + 1) = -cos_phi * omega;
      out.normals(n + 1, j) = sin_phi;
      out.weights[j] = measure * rule.weights[j];

      const MatX tau = tangent_basis(omega);  // (n+1) x n
      for (int i = 0; i < n; ++i) {
        out.frames.col(j * n + i).head(n + 1) = tau.col(i);
        out.frames(n + 1, j * n + i) = 0.0;
      }
    }
  } else {
    const auto& cp = std::get<CliffordProduct>(model);
    if (cp.m != 1)
      throw ParameterError("sample_model: only Clifford products with m = 1 are sampled");
    const int n = cp.n;
    const double c = cp.c;
    const double s = std::sqrt(1.0 - c * c);
    const double sign = (n * c * c - cp.m >= 0.0) ? 1.0 : -1.0;  // H > 0 orientation

    const SphereRule rule = sphere_rule(n - 1, opts.polar_nodes, opts.azimuth_nodes);
    const Index M_omega = rule.weights.size();
    const Index M = static_cast<Index>(opts.circle_nodes) * M_omega;
    const double theta_w = 2.0 * M_PI * c / opts.circle_nodes;
    const double measure = std::pow(s, n - 1);

    out.positions.resize(n + 2, M);
    out.normals.resize(n + 2, M);
    out.weights.resize(M);
    out.frames.resize(n + 2, M * n);
    out.shapes.resize(n, M);

    VecX shape(n);
    shape[0] = -s / c;
    shape.tail(n - 1).setConstant(c / s);
    shape *= sign;

    Index j = 0;
    for (int jt = 0; jt < opts.circle_nodes; ++jt) {
      const double theta = 2.0 * M_PI * jt / opts.circle_nodes;
      const double ct = std::cos(theta), st = std::sin(theta);
      for (Index b = 0; b < M_omega; ++b, ++j) {
        const VecX omega = rule.points.col(b);  // in R^n
        out.positions(0, j) = c * ct;
        out.positions(1, j) = c * st;
        out.positions.col(j).tail(n) = s * omega;
        out.normals(0, j) = sign * s * ct;
        out.normals(1, j) = sign * s * st;
        out.normals.col(j).tail(n) = -sign * c * omega;
        out.weights[j] = theta_w * measure * rule.weights[b];
        out.shapes.col(j) = shape;

        out.frames.col(j * n).setZero();
        out.frames(0, j * n) = -st;
        out.frames(1, j * n) = ct;
        const MatX tau = tangent_basis(omega);  // n x (n-1)
        for (int i = 1; i < n; ++i) {
          out.frames.col(j * n + i).setZero();
          out.frames.col(j * n + i).tail(n) = tau.col(i - 1);
        }
      }
    }
  }

  KahanSum total;
  for (Index j = 0; j < out.weights.size(); ++j) total.add(out.weights[j]);
  out.total_weight = total.value();
  return out;
}

void geodesic_point(const SampledHypersurface& sample, Index j, const VecX& v, double t, VecX& x,
                    VecX& normal) {
  const int n = sample.dim();
  if (const auto* u = std::get_if<UmbilicalSphere>(&sample.model)) {
    const double sin_phi = 1.0 / std::sqrt(u->r);
    const double cos_phi = std::sqrt((u->r - 1.0) / u->r);
    VecX omega = sample.positions.col(j).head(n + 1) / sin_phi;
    const double b = v.norm();
    if (b > 1e-14) {
      VecX tau_hat = VecX::Zero(n + 1);
      for (int i = 0; i < n; ++i)
        tau_hat += (v[i] / b) * sample.frame(j).col(i).head(n + 1);
      const double ang = b * t / sin_phi;
      omega = std::cos(ang) * omega + std::sin(ang) * tau_hat;
    }
    x.resize(n + 2);
    normal.resize(n + 2);
    x.head(n + 1) = sin_phi * omega;
    x[n + 1] = cos_phi;
    normal.head(n + 1) = -cos_phi * omega;
    normal[n + 1] = sin_phi;
    return;
  }

  const auto& cp = std::get<CliffordProduct>(sample.model);
  const double c = cp.c;
  const double s = std::sqrt(1.0 - c * c);
  const double sign = (cp.n * c * c - cp.m >= 0.0) ? 1.0 : -1.0;
  const double theta0 = std::atan2(sample.positions(1, j), sample.positions(0, j));
  VecX omega = sample.positions.col(j).tail(n) / s;

  const double alpha = v[0];
  const double b = v.tail(n - 1).norm();
  const double theta = theta0 + alpha * t / c;
  if (b > 1e-14) {
    VecX tau_hat = VecX::Zero(n);
    for (int i = 1; i < n; ++i) tau_hat += (v[i] / b) * sample.frame(j).col(i).tail(n);
    const double ang = b * t / s;
    omega = std::cos(ang) * omega + std::sin(ang) * tau_hat;
  }
  x.resize(n + 2);
  normal.resize(n + 2);
  x[0] = c * std::cos(theta);
  x[1] = c * std::sin(theta);
  x.tail(n) = s * omega;
  normal[0] = sign * s * std::cos(theta);
  normal[1] = sign * s * std::sin(theta);
  normal.tail(n) = -sign * c * omega;
}

double support_hessian_check(const SampledHypersurface& sample, const VecX& a, double step,
                             Index max_probes) {
  const int n = sample.dim();
  if (a.size() != n + 2) throw ParameterError("support_hessian_check: bad direction size");

  // Probe directions in frame coordinates: every principal direction plus
  // mixed pairs, enough to exercise the off-diagonal Hessian.
  std::vector<VecX> dirs;
  for (int i = 0; i < n; ++i) {
    VecX v = VecX::Zero(n);
    v[i] = 1.0;
    dirs.push_back(v);
  }
  for (int i = 0; i + 1 < n; ++i) {
    VecX v = VecX::Zero(n);
    v[i] = v[i + 1] = M_SQRT1_2;
    dirs.push_back(v);
  }
  {
    VecX v = VecX::Zero(n);
    v[0] = M_SQRT1_2;
    v[n - 1] = M_SQRT1_2;
    dirs.push_back(v);
  }

  const Index M = sample.count();
  const Index stride = std::max<Index>(1, M / std::max<Index>(1, max_probes));

  double worst = 0.0;
  VecX xp, xm, np_, nm;
  for (Index j = 0; j < M; j += stride) {
    const double f0 = a.dot(sample.positions.col(j));
    const double g0 = a.dot(sample.normals.col(j));
    const VecX k = sample.shapes.col(j);

    for (const VecX& v : dirs) {
      geodesic_point(sample, j, v, step, xp, np_);
      geodesic_point(sample, j, v, -step, xm, nm);
      const double fp = a.dot(xp), fm = a.dot(xm);
      const double gp = a.dot(np_), gm = a.dot(nm);

      double fv = 0.0, gv = 0.0, hvv = 0.0, h2vv = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ai = a.dot(sample.frame(j).col(i));
        fv += v[i] * ai;
        gv += -v[i] * ai * k[i];
        hvv += k[i] * v[i] * v[i];
        h2vv += k[i] * k[i] * v[i] * v[i];
      }

      const double fd1_f = (fp - fm) / (2.0 * step);
      const double fd2_f = (fp - 2.0 * f0 + fm) / (step * step);
      const double fd1_g = (gp - gm) / (2.0 * step);
      const double fd2_g = (gp - 2.0 * g0 + gm) / (step * step);

      worst = std::max(worst, std::abs(fd1_f - fv));
      worst = std::max(worst, std::abs(fd2_f - (g0 * hvv - f0)));
      worst = std::max(worst, std::abs(fd1_g - gv));
      worst = std::max(worst, std::abs(fd2_g - (-g0 * h2vv + f0 * hvv)));
    }
  }
  return worst;
}

std::string samples_to_json(const SampledHypersurface& sample) {
  nlohmann::json doc;
  if (const auto* u = std::get_if<UmbilicalSphere>(&sample.model)) {
    doc["model"] = {{"family", "umbilical"}, {"n", u->n}, {"r", u->r}};
  } else {
    const auto& cp = std::get<CliffordProduct>(sample.model);
    doc["model"] = {{"family", "clifford"}, {"n", cp.n}, {"m", cp.m}, {"c", cp.c}};
  }
  auto& arr = doc["samples"] = nlohmann::json::array();
  for (Index j = 0; j < sample.count(); ++j) {
    nlohmann::json row;
    row["x"] = std::vector<double>(sample.positions.col(j).begin(), sample.positions.col(j).end());
    row["normal"] = std::vector<double>(sample.normals.col(j).begin(), sample.normals.col(j).end());
    row["w"] = sample.weights[j];
    row["k"] = std::vector<double>(sample.shapes.col(j).begin(), sample.shapes.col(j).end());
    arr.push_back(std::move(row));
  }
  return doc.dump();
}

SampledHypersurface samples_from_json(const std::string& text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    const auto& jm = doc.at("model");
    const HypersurfaceModel model =
        (jm.at("family").get<std::string>() == "umbilical")
            ? make_umbilical(jm.at("n").get<int>(), jm.at("r").get<double>())
            : make_clifford(jm.at("n").get<int>(), jm.at("m").get<int>(),
                            jm.at("c").get<double>());

    const int n = model_dimension(model);
    const auto& rows = doc.at("samples");
    const Index M = static_cast<Index>(rows.size());
    if (M == 0) throw ParameterError("samples_from_json: empty sample list");

    SampledHypersurface out;
    out.model = model;
    out.positions.resize(n + 2, M);
    out.normals.resize(n + 2, M);
    out.weights.resize(M);
    out.frames.resize(n + 2, M * n);
    out.shapes.resize(n, M);
    const VecX expected_shape = model_curvatures(model).k;

    for (Index j = 0; j < M; ++j) {
      const auto& row = rows[static_cast<std::size_t>(j)];
      const auto x = row.at("x").get<std::vector<double>>();
      const auto nor = row.at("normal").get<std::vector<double>>();
      const auto k = row.at("k").get<std::vector<double>>();
      if (static_cast<int>(x.size()) != n + 2 || static_cast<int>(nor.size()) != n + 2 ||
          static_cast<int>(k.size()) != n)
        throw ParameterError("samples_from_json: row has wrong dimensions");
      for (int i = 0; i < n + 2; ++i) {
        out.positions(i, j) = x[static_cast<std::size_t>(i)];
        out.normals(i, j) = nor[static_cast<std::size_t>(i)];
      }
      for (int i = 0; i < n; ++i) out.shapes(i, j) = k[static_cast<std::size_t>(i)];
      out.weights[j] = row.at("w").get<double>();
      if (!(out.weights[j] > 0.0)) throw WeightError("samples_from_json: nonpositive weight");
      if (std::abs(out.positions.col(j).norm() - 1.0) > 1e-10)
        throw ParameterError("samples_from_json: position not on the unit sphere");
      if ((out.shapes.col(j) - expected_shape).cwiseAbs().maxCoeff() > 1e-8)
        throw ParameterError("samples_from_json: shape data disagrees with the model");

      // Frames are not serialized; rebuild a deterministic principal frame.
      if (const auto* u = std::get_if<UmbilicalSphere>(&model)) {
        const double sin_phi = 1.0 / std::sqrt(u->r);
        const VecX omega = out.positions.col(j).head(n + 1) / sin_phi;
        const MatX tau = tangent_basis(omega);
        for (int i = 0; i < n; ++i) {
          out.frames.col(j * n + i).setZero();
          out.frames.col(j * n + i).head(n + 1) = tau.col(i);
        }
      } else {
        const auto& cp = std::get<CliffordProduct>(model);
        const double s = std::sqrt(1.0 - cp.c * cp.c);
        const double theta = std::atan2(out.positions(1, j), out.positions(0, j));
        const VecX omega = out.positions.col(j).tail(n) / s;
        out.frames.col(j * n).setZero();
        out.frames(0, j * n) = -std::sin(theta);
        out.frames(1, j * n) = std::cos(theta);
        const MatX tau = tangent_basis(omega);
        for (int i = 1; i < n; ++i) {
          out.frames.col(j * n + i).setZero();
          out.frames.col(j * n + i).tail(n) = tau.col(i - 1);
        }
      }
    }

    KahanSum total;
    for (Index j = 0; j < M; ++j) total.add(out.weights[j]);
    out.total_weight = total.value();
    return out;
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("samples: bad JSON: ") + err.what());
  }
}

}  // namespace scalarspec
