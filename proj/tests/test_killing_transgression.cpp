#include "transgress/theorems.hpp"

#include <doctest.h>

#include <random>

using namespace transgress;

namespace {

struct Dilation {
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>& x) const {
    return {x[0], T(0.0), T(0.0), T(0.0)};
  }
};

Mat4 antisymmetric(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = n(rng);
  return a - Mat4(a.transpose());
}

// Random deformation data with the index symmetries of K, F and DK.
ConnectionDeformation synthetic(std::mt19937_64& rng) {
  ConnectionDeformation d;
  for (int i = 0; i < 4; ++i) d.K[i] = antisymmetric(rng);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      d.F[i][j] = antisymmetric(rng);
      d.F[j][i] = -d.F[i][j];
      d.DK[i][j] = antisymmetric(rng);
      d.DK[j][i] = -d.DK[i][j];
    }
  return d;
}

ThreeFormField constant_form(double c) {
  return [c](const Point4&) {
    ThreeForm w;
    w.set(0, 1, 2, c);
    w.set(1, 2, 3, -2.0 * c);
    return w;
  };
}

}  // namespace

TEST_CASE("exterior derivative of simple 3-forms") {
  CHECK(exterior_derivative_3form(constant_form(3.0), {0.1, 0.2, 0.3, 0.4}, 1e-3) == 0.0);
  // d(x^0 dx^1∧dx^2∧dx^3) = dx^0∧dx^1∧dx^2∧dx^3
  const ThreeFormField a = [](const Point4& p) {
    ThreeForm w;
    w.set(1, 2, 3, p[0]);
    return w;
  };
  CHECK(exterior_derivative_3form(a, {0.5, 0.0, 0.0, 0.0}, 1e-3) == doctest::Approx(1.0).epsilon(1e-12));
  // d(x^1 dx^0∧dx^2∧dx^3) = dx^1∧dx^0∧dx^2∧dx^3 = −dx^0∧dx^1∧dx^2∧dx^3
  const ThreeFormField b = [](const Point4& p) {
    ThreeForm w;
    w.set(0, 2, 3, p[1]);
    return w;
  };
  CHECK(exterior_derivative_3form(b, {0.0, 0.5, 0.0, 0.0}, 1e-3) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("three-form storage is antisymmetric") {
  ThreeForm w;
  w.set(0, 2, 3, 1.5);
  CHECK(w(2, 3, 0) == 1.5);
  CHECK(w(3, 2, 0) == -1.5);
  CHECK(w.antisymmetry_residual() == 0.0);
  const Vec4 e0 = Vec4::Unit(0), e2 = Vec4::Unit(2), e3 = Vec4::Unit(3);
  CHECK(w.evaluate(e0, e2, e3) == 1.5);
  CHECK(w.evaluate(e2, e0, e3) == -1.5);
}

TEST_CASE("Killing residual") {
  const CatalogEntry e = catalog_metric("flat-r4-rot2");
  CHECK(killing_residual(e.geom().chart, e.geom().killing, {0.3, 0.1, -0.4, 0.9}) < 1e-15);
  // X = x ∂_x: sym ∇X = dx ⊗ dx, full norm 1.
  const auto dil = make_autodiff_field<4>("x d/dx", Dilation{});
  CHECK(killing_residual(e.geom().chart, dil, {0.3, 0.1, -0.4, 0.9}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(evaluate_point(e.geom().chart, dil, {0.3, 0.1, -0.4, 0.9}), VerificationError);
  for (const char* name : {"eguchi-hanson", "taub-nut"}) {
    const CatalogEntry m = catalog_metric(name);
    for (const Point4& p : sample_points(m, 20, 2)) CHECK(killing_residual(m.geom().chart, m.geom().killing, p) < 1e-12);
  }
}

TEST_CASE("null guard on the zero set of X") {
  const CatalogEntry e = catalog_metric("flat-r4-rot2");
  CHECK_THROWS_AS(evaluate_point(e.geom().chart, e.geom().killing, {0.0, 0.0, 0.0, 0.0}), DegenerateError);
  const CatalogEntry plane = catalog_metric("flat-r4-rot1");
  CHECK_THROWS_AS(evaluate_point(plane.geom().chart, plane.geom().killing, {0.0, 0.0, 0.5, 0.5}), DegenerateError);
}

TEST_CASE("Killing identity: covariant derivative of nabla X by finite differences") {
  for (const char* name : {"eguchi-hanson", "taub-nut"}) {
    const CatalogEntry e = catalog_metric(name);
    const Geometry<4>& G = e.geom();
    for (const Point4& p : sample_points(e, 5, 4)) {
      const PointEvaluation ev = evaluate_point(G.chart, G.killing, p);
      const double h = 1e-5;
      double worst = 0.0, scale = 0.0;
      for (int i = 0; i < 4; ++i) {
        Point4 a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const Mat4 Ha = killing_data(local_geometry<4>(G.chart, a), G.killing).endomorphism;
        const Mat4 Hb = killing_data(local_geometry<4>(G.chart, b), G.killing).endomorphism;
        Mat4 cov = (Ha - Hb) / (2.0 * h);
        const Mat4& H = ev.killing.endomorphism;
        const auto& gam = ev.curvature.local.gamma;
        for (int A = 0; A < 4; ++A)
          for (int B = 0; B < 4; ++B)
            for (int C = 0; C < 4; ++C) cov(A, B) += gam(A, i, C) * H(C, B) - H(A, C) * gam(C, i, B);
        worst = std::max(worst, (cov - ev.deformation.nabla_H[i]).cwiseAbs().maxCoeff());
        scale = std::max(scale, ev.deformation.nabla_H[i].cwiseAbs().maxCoeff());
      }
      CHECK(worst < 1e-7 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("invariant pairings on so(4)") {
  Mat4 a = Mat4::Zero(), b = Mat4::Zero();
  a(0, 1) = -1;
  a(1, 0) = 1;
  b(2, 3) = -1;
  b(3, 2) = 1;
  const Mat4 I = Mat4::Identity();
  // ε_abcd a^ab b^cd = 4
  CHECK(invariant_pairing(FormKind::euler, a, b, I, 1.0, 1) == doctest::Approx(4.0 / (32.0 * kPi * kPi)));
  CHECK(invariant_pairing(FormKind::euler, a, b, I, 1.0, -1) == doctest::Approx(-4.0 / (32.0 * kPi * kPi)));
  CHECK(invariant_pairing(FormKind::euler, a, a, I, 1.0, 1) == 0.0);
  // −tr(a a) = 2
  CHECK(invariant_pairing(FormKind::pontryagin, a, a, I, 1.0, 1) == doctest::Approx(2.0 / (24.0 * kPi * kPi)));
  std::mt19937_64 rng(9);
  const Mat4 x = antisymmetric(rng), y = antisymmetric(rng);
  for (FormKind k : {FormKind::euler, FormKind::pontryagin}) {
    CHECK(invariant_pairing(k, x, y, I, 1.0, 1) == doctest::Approx(invariant_pairing(k, y, x, I, 1.0, 1)));
  }
}

TEST_CASE("synthetic deformation: polynomial and t-integral transgression agree") {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 20; ++n) {
    const ConnectionDeformation d = synthetic(rng);
    for (FormKind k : {FormKind::euler, FormKind::pontryagin}) {
      const ThreeForm poly = transgression_from_polynomial(k, d).components;
      // The integrand is linear in t, so one Gauss node is already exact.
      for (int q : {1, 2, 8}) {
        CHECK((poly - transgression_via_t_integral(k, d, q).components).max_abs() < 1e-14 * (1.0 + poly.max_abs()));
      }
      CHECK(poly.antisymmetry_residual() < 1e-15);
    }
  }
}

TEST_CASE("pointwise identities on every four-dimensional catalog metric") {
  for (const char* name : {"flat-r4-rot1", "flat-r4-rot2", "eguchi-hanson", "taub-nut"}) {
    const IdentityReport r = verify_identities(catalog_metric(name), 200, 1);
    INFO(name);
    CHECK(r.covariant_constancy < 1e-12);
    CHECK(r.null_vector < 1e-12);
    CHECK(r.dk_closed_form < 1e-12);
    CHECK(r.trace_k_wedge_dk < 1e-12);
    CHECK(r.decomposition < 1e-12);
    CHECK(r.t_integral < 1e-12);
    CHECK(r.polynomial < 1e-12);
  }
}

TEST_CASE("single-plane rotation: transgression form vanishes") {
  const CatalogEntry e = catalog_metric("flat-r4-rot1");
  CHECK(verify_identities(e, 200, 3).max_tp < 1e-10);
}

TEST_CASE("two-plane rotation: explicit transgression form") {
  // On flat R^4 with X = J x (|X| = r) only the second term survives:
  // TP = −P(∇X, ∇X) r^-4 X♭ ∧ dX♭ with P_χ(J, J) = 8/(32π²).
  const CatalogEntry e = catalog_metric("flat-r4-rot2");
  const Point4 p{0.3, -0.5, 0.8, 0.2};
  const PointEvaluation ev = evaluate_point(e.geom().chart, e.geom().killing, p);
  const ThreeForm tp = transgression_form(FormKind::euler, ev.killing, ev.curvature).components;
  Vec4 x(p[0], p[1], p[2], p[3]);
  Vec4 Xf(-p[1], p[0], -p[3], p[2]);
  Mat4 dX = Mat4::Zero();
  dX(0, 1) = 2;
  dX(1, 0) = -2;
  dX(2, 3) = 2;
  dX(3, 2) = -2;
  const double r2 = x.squaredNorm();
  const double c = -(8.0 / (32.0 * kPi * kPi)) / (r2 * r2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const double oracle = c * (Xf[i] * dX(j, k) + Xf[j] * dX(k, i) + Xf[k] * dX(i, j));
        CHECK(tp(i, j, k) == doctest::Approx(oracle).epsilon(1e-12).scale(1.0));
      }
}

TEST_CASE("Gauss-Legendre rule on [0, 1]") {
  for (int n : {1, 3, 8, 24}) {
    const GaussRule r = gauss_legendre_unit(n);
    for (int deg = 0; deg < 2 * n; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
    }
  }
}
