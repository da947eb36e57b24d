#include "transgress/killing_transgression.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>

namespace transgress {

namespace {

Mat4 raise_both(const Mat4& h, const Mat4& g_inv) { return h * g_inv; }  // h^a_m g^mb

}  // namespace

double killing_residual(const MetricChart<4>& chart, const KillingField<4>& field, const Point4& p,
                        const Tolerances& tol) {
  const MetricJet<4> jet = chart.derivatives(p, tol);
  const Mat4 g_inv = checked_inverse<4>(jet.g);
  const Christoffel<4> gamma = christoffel_from_jet<4>(jet, g_inv);
  const Vec4 X = field.value(p);
  const Mat4 J = field.jacobian(p);
  Mat4 H = J;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) H(a, b) += gamma.gamma[a](b, c) * X[c];
  const Mat4 lowered = (jet.g * H).transpose();
  const Mat4 sym = 0.5 * (lowered + lowered.transpose());
  return std::sqrt(std::max(0.0, (g_inv * sym * g_inv * sym.transpose()).trace()));
}

KillingData killing_data(const LocalGeometry<4>& local, const KillingField<4>& field,
                         const TransgressionConfig& cfg, double chart_scale) {
  KillingData out;
  out.X = field.value(local.p);
  out.X_flat = local.g * out.X;
  out.norm_X = std::sqrt(std::max(0.0, out.X.dot(out.X_flat)));
  if (!(out.norm_X >= cfg.null_epsilon * chart_scale)) {
    throw DegenerateError("Killing field vanishes (|X| = " + std::to_string(out.norm_X) + ") at " +
                          format_point(local.p.data(), 4));
  }
  Mat4 H = field.jacobian(local.p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) H(a, b) += local.gamma.gamma[a](b, c) * out.X[c];
  out.endomorphism = H;
  out.nabla_X = (local.g * H).transpose();
  out.dX_flat = out.nabla_X - out.nabla_X.transpose();
  const Mat4 sym = 0.5 * (out.nabla_X + out.nabla_X.transpose());
  out.killing_residual = std::sqrt(std::max(0.0, (local.g_inv * sym * local.g_inv * sym.transpose()).trace()));
  return out;
}

std::array<std::array<Mat4, 4>, 4> ConnectionDeformation::F_t(double t) const {
  std::array<std::array<Mat4, 4>, 4> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = F[i][j] - t * DK[i][j];
  return out;
}

ConnectionDeformation deformation(const KillingData& killing, const CurvatureData& curv) {
  const LocalGeometry<4>& local = curv.local;
  ConnectionDeformation d;
  d.g = local.g;
  d.g_inv = local.g_inv;
  d.sqrt_det = local.sqrt_det;
  d.orientation = local.orientation;

  const double n2 = killing.norm_X * killing.norm_X;
  if (!(n2 > 0.0)) throw DegenerateError("deformation needs |X| > 0");
  const Vec4 phi = killing.X_flat / n2;
  const Mat4& H = killing.endomorphism;
  for (int i = 0; i < 4; ++i) d.K[i] = phi[i] * H;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.F[i][j] = local.curvature_endomorphism(i, j);
  for (int i = 0; i < 4; ++i) {
    d.nabla_H[i] = Mat4::Zero();
    for (int m = 0; m < 4; ++m) d.nabla_H[i] += killing.X[m] * d.F[i][m];
  }
  // ∇_i φ_j
  const Vec4 grad_norm = killing.nabla_X * killing.X;  // ∇_i X_m X^m = ½ ∂_i |X|²
  Mat4 dphi;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dphi(i, j) = -2.0 / (n2 * n2) * grad_norm[i] * killing.X_flat[j] + killing.nabla_X(i, j) / n2;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      d.DK[i][j] = (dphi(i, j) - dphi(j, i)) * H + phi[j] * d.nabla_H[i] - phi[i] * d.nabla_H[j];
  return d;
}

std::array<std::array<Mat4, 4>, 4> dk_closed_form(const KillingData& killing, const ConnectionDeformation& d) {
  const double n2 = killing.norm_X * killing.norm_X;
  const Vec4 ix_dx = killing.dX_flat.transpose() * killing.X;  // (i_X dX♭)_b = X^a dX♭_ab
  const Mat4 scalar_part = wedge(ix_dx, killing.X_flat) / (n2 * n2) + killing.dX_flat / n2;
  std::array<std::array<Mat4, 4>, 4> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[i][j] = scalar_part(i, j) * killing.endomorphism -
                  (killing.X_flat[i] * d.nabla_H[j] - killing.X_flat[j] * d.nabla_H[i]) / n2;
  return out;
}

double covariant_constancy_residual(const KillingData& killing, const ConnectionDeformation& d) {
  Mat4 k_of_x = Mat4::Zero();
  for (int i = 0; i < 4; ++i) k_of_x += killing.X[i] * d.K[i];
  const Mat4 diff = k_of_x - killing.endomorphism;
  const Vec4 along = killing.endomorphism * killing.X - k_of_x * killing.X;  // ∇_X X − K(X) X
  return std::max(diff.cwiseAbs().maxCoeff(), along.cwiseAbs().maxCoeff());
}

double null_vector_residual(const KillingData& killing, const ConnectionDeformation& d) {
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    Mat4 s = Mat4::Zero();
    for (int j = 0; j < 4; ++j) s += killing.X[j] * (d.F[j][k] - d.DK[j][k]);
    worst = std::max(worst, s.cwiseAbs().maxCoeff());
  }
  return worst;
}

ThreeForm trace_k_wedge_dk(const ConnectionDeformation& d) {
  return ThreeForm::wedge_pairing(d.K, d.DK, [](const Mat4& a, const Mat4& b) { return (a * b).trace(); });
}

ThreeForm trace_k_wedge_dk_closed_form(const KillingData& killing, const Mat4& g_inv) {
  const double n2 = killing.norm_X * killing.norm_X;
  return (-killing.norm_nabla_X_sq(g_inv) / (n2 * n2)) * ThreeForm::wedge(killing.X_flat, killing.dX_flat);
}

const char* to_string(FormKind kind) { return kind == FormKind::euler ? "euler" : "pontryagin"; }

double invariant_pairing(FormKind kind, const Mat4& h1, const Mat4& h2, const Mat4& g_inv, double sqrt_det,
                         int orientation) {
  if (kind == FormKind::pontryagin) return -(h1 * h2).trace() / (24.0 * kPi * kPi);
  const Mat4 a = raise_both(h1, g_inv);
  const Mat4 b = raise_both(h2, g_inv);
  const double eps_sum = 4.0 * (a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) + a(1, 2) * b(0, 3) -
                                a(1, 3) * b(0, 2) + a(2, 3) * b(0, 1));
  return orientation * sqrt_det * eps_sum / (32.0 * kPi * kPi);
}

namespace {

auto pairing_for(FormKind kind, const ConnectionDeformation& d) {
  return [kind, &d](const Mat4& a, const Mat4& b) {
    return invariant_pairing(kind, a, b, d.g_inv, d.sqrt_det, d.orientation);
  };
}

}  // namespace

double characteristic_density_from_curvature(FormKind kind, const ConnectionDeformation& d) {
  return wedge_top(d.F, d.F, pairing_for(kind, d)) / (d.orientation * d.sqrt_det);
}

Transgression3Form transgression_form(FormKind kind, const KillingData& killing, const CurvatureData& curv) {
  const LocalGeometry<4>& local = curv.local;
  auto pair = [&](const Mat4& a, const Mat4& b) {
    return invariant_pairing(kind, a, b, local.g_inv, local.sqrt_det, local.orientation);
  };
  const Mat4& H = killing.endomorphism;
  Mat4 B = Mat4::Zero();
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k) {
      B(j, k) = pair(H, local.curvature_endomorphism(j, k));
      B(k, j) = -B(j, k);
    }
  const double n2 = killing.norm_X * killing.norm_X;
  Transgression3Form out;
  out.kind = kind;
  out.components = (2.0 / n2) * ThreeForm::wedge(killing.X_flat, B) -
                   (pair(H, H) / (n2 * n2)) * ThreeForm::wedge(killing.X_flat, killing.dX_flat);
  return out;
}

Transgression3Form transgression_from_polynomial(FormKind kind, const ConnectionDeformation& d) {
  const auto pair = pairing_for(kind, d);
  Transgression3Form out;
  out.kind = kind;
  out.components = 2.0 * ThreeForm::wedge_pairing(d.K, d.F, pair) - ThreeForm::wedge_pairing(d.K, d.DK, pair);
  return out;
}

Transgression3Form transgression_via_t_integral(FormKind kind, const ConnectionDeformation& d, int n_quad) {
  const auto pair = pairing_for(kind, d);
  const GaussRule rule = gauss_legendre_unit(n_quad);
  Transgression3Form out;
  out.kind = kind;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    out.components += (2.0 * rule.weights[q]) * ThreeForm::wedge_pairing(d.K, d.F_t(rule.nodes[q]), pair);
  }
  return out;
}

PointEvaluation evaluate_point(const MetricChart<4>& chart, const KillingField<4>& field, const Point4& p,
                               const TransgressionConfig& cfg, const Tolerances& tol) {
  PointEvaluation out;
  out.curvature = riemann(chart, p, tol);
  out.killing = killing_data(out.curvature.local, field, cfg, chart.scale());
  const double gate = (chart.has_exact_derivatives() ? cfg.killing_tolerance : tol.numeric) *
                      std::max(1.0, std::sqrt(out.killing.norm_nabla_X_sq(out.curvature.local.g_inv)));
  if (!(out.killing.killing_residual < gate)) {
    throw VerificationError("vector field is not Killing at " + format_point(p.data(), 4) + " (residual " +
                            std::to_string(out.killing.killing_residual) + ")");
  }
  out.deformation = deformation(out.killing, out.curvature);
  return out;
}

ThreeFormField transgression_field(FormKind kind, const MetricChart<4>& chart, const KillingField<4>& field,
                                   const TransgressionConfig& cfg, const Tolerances& tol) {
  return [kind, chart, field, cfg, tol](const Point4& p) {
    const CurvatureData curv = riemann(chart, p, tol);
    const KillingData k = killing_data(curv.local, field, cfg, chart.scale());
    return transgression_form(kind, k, curv).components;
  };
}

GaussRule gauss_legendre_unit(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<std::pair<double, double>> nodes;
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes.emplace_back(x, w);
    if (x != 0.0) nodes.emplace_back(-x, w);
  }
  std::sort(nodes.begin(), nodes.end());
  GaussRule rule;
  for (const auto& [x, w] : nodes) {
    rule.nodes.push_back(0.5 * (1.0 + x));
    rule.weights.push_back(0.5 * w);
  }
  return rule;
}

}  // namespace transgress
