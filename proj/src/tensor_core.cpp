#include "transgress/tensor_core.hpp"

#include <sstream>

namespace transgress {

std::string format_point(const double* x, int n) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << x[i];
  os << ')';
  return os.str();
}

TwoFormAlgebra::TwoFormAlgebra(const Mat4& g, const Mat4& frame, int chart_orientation, double tol)
    : frame_(frame) {
  const double gram = (frame.transpose() * g * frame - Mat4::Identity()).cwiseAbs().maxCoeff();
  if (!(gram < tol)) {
    throw DegenerateError("frame is not orthonormal (Gram residual " + std::to_string(gram) + ")");
  }
  coframe_ = frame.inverse();
  orientation_ = frame.determinant() > 0.0 ? chart_orientation : -chart_orientation;
}

TwoFormAlgebra TwoFormAlgebra::gram_schmidt(const Mat4& g, int chart_orientation) {
  Mat4 e = Mat4::Identity();
  for (int a = 0; a < 4; ++a) {
    Vec4 v = e.col(a);
    for (int b = 0; b < a; ++b) v -= (e.col(b).dot(g * v)) * e.col(b);
    const double n2 = v.dot(g * v);
    if (!(n2 > 0.0)) throw DegenerateError("Gram-Schmidt hit a null direction");
    e.col(a) = v / std::sqrt(n2);
  }
  return TwoFormAlgebra(g, e, chart_orientation);
}

Vec6 TwoFormAlgebra::to_basis(const Mat4& omega) const {
  const Mat4 framed = frame_.transpose() * omega * frame_;
  Vec6 out;
  for (int k = 0; k < 6; ++k) out[k] = framed(kPairs[k][0], kPairs[k][1]);
  return out;
}

Mat4 TwoFormAlgebra::from_basis(const Vec6& coeffs) const {
  Mat4 out = Mat4::Zero();
  for (int k = 0; k < 6; ++k) {
    const auto ta = coframe_.row(kPairs[k][0]);
    const auto tb = coframe_.row(kPairs[k][1]);
    out += coeffs[k] * (ta.transpose() * tb - tb.transpose() * ta);
  }
  return out;
}

Mat6 TwoFormAlgebra::star_matrix() const {
  // *(e0∧e1) = e2∧e3, *(e0∧e2) = −e1∧e3, *(e0∧e3) = e1∧e2 and the inverses.
  Mat6 s = Mat6::Zero();
  s(5, 0) = 1.0;
  s(4, 1) = -1.0;
  s(3, 2) = 1.0;
  s(2, 3) = 1.0;
  s(1, 4) = -1.0;
  s(0, 5) = 1.0;
  return static_cast<double>(orientation_) * s;
}

Mat4 hodge_star_2form(const TwoFormAlgebra& algebra, const Mat4& omega) {
  return algebra.from_basis(algebra.star_matrix() * algebra.to_basis(omega));
}

namespace {

using Tensor4 = RiemannTensor<4>;

Tensor4 to_frame(const Tensor4& R, const Mat4& F) {
  // Contract one slot at a time.
  Tensor4 a, b;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int x = 0; x < 4; ++x) s += R(p, q, r, x) * F(x, d);
          a(p, q, r, d) = s;
        }
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int x = 0; x < 4; ++x) s += a(p, q, x, d) * F(x, c);
          b(p, q, c, d) = s;
        }
  for (int p = 0; p < 4; ++p)
    for (int bb = 0; bb < 4; ++bb)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int x = 0; x < 4; ++x) s += b(p, x, c, d) * F(x, bb);
          a(p, bb, c, d) = s;
        }
  for (int aa = 0; aa < 4; ++aa)
    for (int bb = 0; bb < 4; ++bb)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int x = 0; x < 4; ++x) s += a(x, bb, c, d) * F(x, aa);
          b(aa, bb, c, d) = s;
        }
  return b;
}

Mat6 on_two_forms(const Tensor4& T) {
  Mat6 m;
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l)
      m(k, l) = T(TwoFormAlgebra::kPairs[k][0], TwoFormAlgebra::kPairs[k][1], TwoFormAlgebra::kPairs[l][0],
                  TwoFormAlgebra::kPairs[l][1]);
  return m;
}

// Kulkarni–Nomizu product of symmetric h with the identity metric, frame indices.
double kn_with_identity(const Mat4& h, int a, int b, int c, int d) {
  auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  return h(a, c) * delta(b, d) + h(b, d) * delta(a, c) - h(a, d) * delta(b, c) - h(b, c) * delta(a, d);
}

}  // namespace

CurvatureData decompose(const LocalGeometry<4>& local, const Mat4& frame) {
  const TwoFormAlgebra algebra(local.g, frame, local.orientation, 1e-8);
  CurvatureData out;
  out.local = local;
  out.frame = frame;

  const Tensor4 Rf = to_frame(local.riemann, frame);
  Mat4 ric_f = Mat4::Zero();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d)
      for (int a = 0; a < 4; ++a) ric_f(b, d) += Rf(a, b, a, d);
  out.scalar = ric_f.trace();
  const Mat4 ric0_f = ric_f - 0.25 * out.scalar * Mat4::Identity();
  const Mat4& theta = algebra.coframe();
  out.ricci = theta.transpose() * ric_f * theta;
  out.ricci_tracefree = theta.transpose() * ric0_f * theta;

  Tensor4 W;
  double rm2 = 0.0, w2 = 0.0;
  const Mat4 id = Mat4::Identity();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double r = Rf(a, b, c, d);
          const double w = r - 0.5 * kn_with_identity(ric0_f, a, b, c, d) -
                           out.scalar / 24.0 * kn_with_identity(id, a, b, c, d);
          W(a, b, c, d) = w;
          rm2 += r * r;
          w2 += w * w;
        }
  out.norm_rm_sq = rm2;
  out.norm_weyl_sq = w2;
  out.norm_ricci_sq = ric_f.squaredNorm();
  out.norm_ricci_tracefree_sq = ric0_f.squaredNorm();

  out.curvature_operator = on_two_forms(Rf);
  const Mat6 weyl = on_two_forms(W);
  const Mat6 star = algebra.star_matrix();
  const Mat6 plus = 0.5 * (Mat6::Identity() + star);
  const Mat6 minus = 0.5 * (Mat6::Identity() - star);
  out.weyl_plus = plus * weyl * plus;
  out.weyl_minus = minus * weyl * minus;
  out.norm_weyl_plus_sq = 4.0 * out.weyl_plus.squaredNorm();
  out.norm_weyl_minus_sq = 4.0 * out.weyl_minus.squaredNorm();
  return out;
}

CurvatureData riemann(const MetricChart<4>& chart, const Point4& p, const Tolerances& tol) {
  const LocalGeometry<4> local = local_geometry<4>(chart, p, tol);
  // Rounding in coordinate components grows with the conditioning of g (polar axes).
  const Eigen::SelfAdjointEigenSolver<Mat4> eig(local.g, Eigen::EigenvaluesOnly);
  const double condition = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
  const double gate =
      (local.exact ? tol.exact : tol.numeric) * std::max(1.0, local.riemann.max_abs()) * std::max(1.0, condition);
  const double residual = riemann_symmetry_residual<4>(local.riemann);
  if (!(residual < gate)) {
    throw VerificationError("Riemann symmetry residual " + std::to_string(residual) + " at " +
                            format_point(p.data(), 4) + " exceeds " + std::to_string(gate));
  }
  const TwoFormAlgebra frame = TwoFormAlgebra::gram_schmidt(local.g, local.orientation);
  return decompose(local, frame.frame());
}

CharacteristicDensities characteristic_densities(const CurvatureData& c) {
  CharacteristicDensities d;
  d.euler = (c.scalar * c.scalar / 24.0 - 0.5 * c.norm_ricci_tracefree_sq + 0.25 * c.norm_weyl_sq) /
            (8.0 * kPi * kPi);
  d.pontryagin = 0.25 * (c.norm_weyl_plus_sq - c.norm_weyl_minus_sq) / (12.0 * kPi * kPi);
  return d;
}

}  // namespace transgress
