#pragma once

// Killing-field data, the connection deformation K = |X|^-2 X♭ ⊗ ∇X and the
// transgression 3-forms of the Euler and Pontryagin forms.
//
// Endomorphism-valued forms act on vector components: a matrix M with
// M(a, b) = M^a_b. K_i = |X|^-2 X_i H with H^a_b = ∇_b X^a, so
// K(v) w = |X|^-2 <X, v> ∇_w X. F_ij = R(∂_i, ∂_j), DK_ij = (∇_i K)_j − (∇_j K)_i.

#include "transgress/forms.hpp"
#include "transgress/tensor_core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace transgress {

template <int N>
struct KillingField {
  std::string description;
  std::function<Vec<N>(const Point<N>&)> value;
  std::function<Mat<N>(const Point<N>&)> jacobian;  // (a, b) = ∂_b X^a
};

// From a functor templated on the scalar type returning std::array<T, N>.
template <int N, class F>
KillingField<N> make_autodiff_field(std::string description, F functor) {
  KillingField<N> out;
  out.description = std::move(description);
  out.value = [functor](const Point<N>& p) {
    const auto x = functor(p);
    Vec<N> v;
    for (int a = 0; a < N; ++a) v[a] = x[a];
    return v;
  };
  out.jacobian = [functor](const Point<N>& p) {
    const auto x = functor(seed_jets<N>(p));
    Mat<N> m;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) m(a, b) = x[a].d[b];
    return m;
  };
  return out;
}

struct KillingData {
  Vec4 X = Vec4::Zero();
  Vec4 X_flat = Vec4::Zero();
  double norm_X = 0.0;
  Mat4 nabla_X = Mat4::Zero();  // (a, b) = <∇_a X, ∂_b> = ∇_a X_b
  Mat4 dX_flat = Mat4::Zero();  // = 2 nabla_X after antisymmetrisation
  Mat4 endomorphism = Mat4::Zero();  // H^a_b = ∇_b X^a
  double killing_residual = 0.0;     // |sym ∇X|

  double norm_nabla_X_sq(const Mat4& g_inv) const {
    return (g_inv * nabla_X * g_inv * nabla_X.transpose()).trace();
  }
};

struct TransgressionConfig {
  double null_epsilon = 1e-6;  // refuse |X| below this times the chart scale
  double killing_tolerance = 1e-8;
};

// |sym ∇X| = ½|L_X g| in the full-contraction norm.
double killing_residual(const MetricChart<4>& chart, const KillingField<4>& field, const Point4& p,
                        const Tolerances& tol = {});

// X, X♭, ∇X at p. Throws DegenerateError when |X| is below the null guard.
KillingData killing_data(const LocalGeometry<4>& local, const KillingField<4>& field,
                         const TransgressionConfig& cfg = {}, double chart_scale = 1.0);

struct ConnectionDeformation {
  std::array<Mat4, 4> K{};
  std::array<std::array<Mat4, 4>, 4> F{};
  std::array<std::array<Mat4, 4>, 4> DK{};
  std::array<Mat4, 4> nabla_H{};  // (∇_i H)^a_b = ∇²_{i,b} X^a = R^a_{b i m} X^m
  Mat4 g = Mat4::Identity();
  Mat4 g_inv = Mat4::Identity();
  double sqrt_det = 1.0;
  int orientation = 1;

  // F_t = F − t DK; K∧K = 0 so no t² term.
  std::array<std::array<Mat4, 4>, 4> F_t(double t) const;
};

ConnectionDeformation deformation(const KillingData& killing, const CurvatureData& curv);

// DK from the closed expression
//   (|X|^-4 i_X dX♭ ∧ X♭ + |X|^-2 dX♭) ⊗ ∇X − |X|^-2 X♭ ∧ ∇²X.
std::array<std::array<Mat4, 4>, 4> dk_closed_form(const KillingData& killing, const ConnectionDeformation& d);

// max_w |K(X) w − ∇_w X|: ∇̃_X = L_X, which contains ∇̃_X X = 0.
double covariant_constancy_residual(const KillingData& killing, const ConnectionDeformation& d);

// max_k |(i_X F_1)_k| with F_1 = F − DK.
double null_vector_residual(const KillingData& killing, const ConnectionDeformation& d);

// tr(K∧DK) built from matrix products.
ThreeForm trace_k_wedge_dk(const ConnectionDeformation& d);
// −|∇X|² |X|^-4 X♭∧dX♭
ThreeForm trace_k_wedge_dk_closed_form(const KillingData& killing, const Mat4& g_inv);

enum class FormKind { euler, pontryagin };

const char* to_string(FormKind kind);

// Invariant symmetric bilinear forms on so(4), acting on endomorphisms:
//   euler:      (1/32π²) ε_abcd h1^ab h2^cd
//   pontryagin: −(1/24π²) tr(h1 h2)
double invariant_pairing(FormKind kind, const Mat4& h1, const Mat4& h2, const Mat4& g_inv, double sqrt_det,
                         int orientation);

// Coefficient of dVol in P(F, F).
double characteristic_density_from_curvature(FormKind kind, const ConnectionDeformation& d);

struct Transgression3Form {
  FormKind kind = FormKind::euler;
  ThreeForm components;
};

// Closed form in X, ∇X and Rm:
//   2|X|^-2 X♭ ∧ P(∇X, Rm(·,·)) − P(∇X, ∇X) |X|^-4 X♭ ∧ dX♭.
Transgression3Form transgression_form(FormKind kind, const KillingData& killing, const CurvatureData& curv);

// 2 P(K, F) − P(K, DK) from an arbitrary deformation (used with synthetic inputs too).
Transgression3Form transgression_from_polynomial(FormKind kind, const ConnectionDeformation& d);

// 2 ∫_0^1 P(K, F_t) dt by n_quad-point Gauss–Legendre in t.
Transgression3Form transgression_via_t_integral(FormKind kind, const ConnectionDeformation& d, int n_quad);

// Everything needed at a point: curvature, Killing data, deformation.
struct PointEvaluation {
  CurvatureData curvature;
  KillingData killing;
  ConnectionDeformation deformation;
};

PointEvaluation evaluate_point(const MetricChart<4>& chart, const KillingField<4>& field, const Point4& p,
                               const TransgressionConfig& cfg = {}, const Tolerances& tol = {});

// The transgression form as a field over the chart.
ThreeFormField transgression_field(FormKind kind, const MetricChart<4>& chart, const KillingField<4>& field,
                                   const TransgressionConfig& cfg = {}, const Tolerances& tol = {});

// Gauss–Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_unit(int n);

}  // namespace transgress
