#pragma once

// Chart-based metric evaluation and curvature.
//
// Index conventions used throughout the library:
//   gamma[k](i, j)        = Γ^k_ij
//   RiemannTensor(a,b,i,j) = <R(∂_i, ∂_j) ∂_b, ∂_a>,  R(u,v) = ∇_u∇_v − ∇_v∇_u − ∇_[u,v]
// so the round sphere has R(a,b,a,b) > 0. Ric_bj = R^a_{b a j}.
// Norms |T|^2 are full metric contractions unless stated otherwise.

#include "transgress/jet.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace transgress {

template <int N> using Point = std::array<double, N>;
template <int N> using Vec = Eigen::Matrix<double, N, 1>;
template <int N> using Mat = Eigen::Matrix<double, N, N>;
using Point4 = Point<4>;
using Vec4 = Vec<4>;
using Mat4 = Mat<4>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kPi = std::numbers::pi;

// Point outside the chart box, or too close to its edge for a stencil.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Singular metric, degenerate frame, or vanishing Killing field.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed identity residual exceeded its gate.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double exact = 1e-8;     // identities on charts with exact derivatives
  double numeric = 1e-5;   // identities on finite-difference charts
  double fd_step = 1e-4;   // relative to the chart's coordinate scale
};

template <int N>
struct Box {
  Point<N> lo{};
  Point<N> hi{};

  bool contains(const Point<N>& p, double margin = 0.0) const {
    for (int i = 0; i < N; ++i) {
      if (!(p[i] - margin > lo[i] && p[i] + margin < hi[i])) return false;
    }
    return true;
  }
};

template <int N>
struct MetricJet {
  Mat<N> g = Mat<N>::Zero();
  std::array<Mat<N>, N> dg{};                  // dg[k] = ∂_k g
  std::array<std::array<Mat<N>, N>, N> d2g{};  // d2g[k][l] = ∂_k ∂_l g
};

std::string format_point(const double* x, int n);

template <int N>
class MetricChart {
 public:
  using MetricFn = std::function<Mat<N>(const Point<N>&)>;
  using JetFn = std::function<MetricJet<N>(const Point<N>&)>;

  MetricChart() = default;
  MetricChart(std::string id, Box<N> domain, MetricFn metric, JetFn exact = {},
              int orientation = 1, double scale = 1.0)
      : id_(std::move(id)), domain_(domain), metric_(std::move(metric)),
        exact_(std::move(exact)), orientation_(orientation), scale_(scale) {}

  const std::string& id() const { return id_; }
  const Box<N>& domain() const { return domain_; }
  int orientation() const { return orientation_; }
  double scale() const { return scale_; }
  bool has_exact_derivatives() const { return static_cast<bool>(exact_); }

  void require_inside(const Point<N>& p, double margin = 0.0) const {
    if (!domain_.contains(p, margin)) {
      throw DomainError("point " + format_point(p.data(), N) + " outside chart '" + id_ +
                        "' (margin " + std::to_string(margin) + ")");
    }
  }

  Mat<N> metric(const Point<N>& p) const {
    require_inside(p);
    return metric_(p);
  }

  // g, ∂g, ∂²g at p. Exact when the chart carries a jet functor, otherwise
  // Richardson-extrapolated central differences with step fd_step * scale.
  MetricJet<N> derivatives(const Point<N>& p, const Tolerances& tol = {}) const {
    if (exact_) {
      require_inside(p);
      return exact_(p);
    }
    const double h = tol.fd_step * scale_;
    require_inside(p, 2.0 * h);
    MetricJet<N> coarse = finite_difference(p, h);
    MetricJet<N> fine = finite_difference(p, 0.5 * h);
    MetricJet<N> out;
    out.g = metric_(p);
    for (int k = 0; k < N; ++k) {
      out.dg[k] = (4.0 * fine.dg[k] - coarse.dg[k]) / 3.0;
      for (int l = 0; l < N; ++l) out.d2g[k][l] = (4.0 * fine.d2g[k][l] - coarse.d2g[k][l]) / 3.0;
    }
    return out;
  }

  // Same chart with metric λ² g.
  MetricChart scaled(double lambda) const {
    const double f = lambda * lambda;
    MetricChart out = *this;
    out.id_ = id_ + "*" + std::to_string(lambda);
    auto base = metric_;
    out.metric_ = [base, f](const Point<N>& p) { Mat<N> g = base(p); return Mat<N>(f * g); };
    if (exact_) {
      auto jet = exact_;
      out.exact_ = [jet, f](const Point<N>& p) {
        MetricJet<N> j = jet(p);
        j.g *= f;
        for (int k = 0; k < N; ++k) {
          j.dg[k] *= f;
          for (int l = 0; l < N; ++l) j.d2g[k][l] *= f;
        }
        return j;
      };
    }
    return out;
  }

  MetricChart with_orientation(int orientation) const {
    MetricChart out = *this;
    out.orientation_ = orientation;
    return out;
  }

  // Drops the exact derivatives, forcing the finite-difference path.
  MetricChart numeric_only() const {
    MetricChart out = *this;
    out.exact_ = {};
    return out;
  }

 private:
  MetricJet<N> finite_difference(const Point<N>& p, double h) const {
    MetricJet<N> out;
    const Mat<N> g0 = metric_(p);
    auto shifted = [&](int k, double dk, int l, double dl) {
      Point<N> q = p;
      q[k] += dk;
      q[l] += dl;
      return metric_(q);
    };
    for (int k = 0; k < N; ++k) {
      const Mat<N> gp = shifted(k, h, k, 0.0);
      const Mat<N> gm = shifted(k, -h, k, 0.0);
      out.dg[k] = (gp - gm) / (2.0 * h);
      out.d2g[k][k] = (gp - 2.0 * g0 + gm) / (h * h);
    }
    for (int k = 0; k < N; ++k) {
      for (int l = k + 1; l < N; ++l) {
        const Mat<N> d = (shifted(k, h, l, h) - shifted(k, h, l, -h) - shifted(k, -h, l, h) +
                          shifted(k, -h, l, -h)) / (4.0 * h * h);
        out.d2g[k][l] = d;
        out.d2g[l][k] = d;
      }
    }
    return out;
  }

  std::string id_;
  Box<N> domain_{};
  MetricFn metric_;
  JetFn exact_;
  int orientation_ = 1;
  double scale_ = 1.0;
};

// Builds a chart from a functor templated on the scalar type:
//   template <class T> std::array<std::array<T, N>, N> operator()(const std::array<T, N>&) const;
// Exact derivatives come from evaluating it on jets.
template <int N, class F>
MetricChart<N> make_autodiff_chart(std::string id, Box<N> domain, F functor, int orientation = 1,
                                   double scale = 1.0) {
  auto metric = [functor](const Point<N>& p) {
    const auto g = functor(p);
    Mat<N> m;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(i, j) = g[i][j];
    return m;
  };
  auto exact = [functor](const Point<N>& p) {
    const auto g = functor(seed_jets<N>(p));
    MetricJet<N> out;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        out.g(i, j) = g[i][j].v;
        for (int k = 0; k < N; ++k) {
          out.dg[k](i, j) = g[i][j].d[k];
          for (int l = 0; l < N; ++l) out.d2g[k][l](i, j) = g[i][j].h(k, l);
        }
      }
    }
    return out;
  };
  return MetricChart<N>(std::move(id), domain, metric, exact, orientation, scale);
}

template <int N>
struct Christoffel {
  std::array<Mat<N>, N> gamma{};  // gamma[k](i, j) = Γ^k_ij

  double operator()(int k, int i, int j) const { return gamma[k](i, j); }
};

template <int N>
class RiemannTensor {
 public:
  double& operator()(int a, int b, int i, int j) { return c_[((a * N + b) * N + i) * N + j]; }
  double operator()(int a, int b, int i, int j) const { return c_[((a * N + b) * N + i) * N + j]; }
  double max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::array<double, N * N * N * N> c_{};
};

// Pointwise metric data shared by the curvature and transgression code.
template <int N>
struct LocalGeometry {
  Point<N> p{};
  Mat<N> g = Mat<N>::Zero();
  Mat<N> g_inv = Mat<N>::Zero();
  double sqrt_det = 0.0;
  int orientation = 1;
  bool exact = false;
  Christoffel<N> gamma;
  RiemannTensor<N> riemann;  // fully lowered

  // R(∂_i, ∂_j) as a matrix acting on vector components: (a, b) -> R^a_{b i j}.
  Mat<N> curvature_endomorphism(int i, int j) const {
    Mat<N> low;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) low(a, b) = riemann(a, b, i, j);
    return g_inv * low;
  }
};

template <int N>
Christoffel<N> christoffel_from_jet(const MetricJet<N>& jet, const Mat<N>& g_inv) {
  Christoffel<N> out;
  for (int k = 0; k < N; ++k) {
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int d = 0; d < N; ++d)
          s += g_inv(k, d) * 0.5 * (jet.dg[i](d, j) + jet.dg[j](d, i) - jet.dg[d](i, j));
        out.gamma[k](i, j) = s;
      }
    }
  }
  return out;
}

template <int N>
Mat<N> checked_inverse(const Mat<N>& g, double* det_out = nullptr) {
  const double det = g.determinant();
  if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) {
    throw DegenerateError("metric matrix is not invertible");
  }
  if (det_out) *det_out = det;
  return g.inverse();
}

template <int N>
LocalGeometry<N> local_geometry(const MetricChart<N>& chart, const Point<N>& p,
                                const Tolerances& tol = {}) {
  const MetricJet<N> jet = chart.derivatives(p, tol);
  LocalGeometry<N> out;
  out.p = p;
  out.g = jet.g;
  double det = 0.0;
  out.g_inv = checked_inverse<N>(jet.g, &det);
  if (det <= 0.0) throw DegenerateError("metric is not positive definite at " + format_point(p.data(), N));
  out.sqrt_det = std::sqrt(det);
  out.orientation = chart.orientation();
  out.exact = chart.has_exact_derivatives();
  out.gamma = christoffel_from_jet<N>(jet, out.g_inv);

  // Γ_{d j b} and its derivatives, then ∂_i Γ^a_{jb}.
  auto gamma_low = [&](int d, int j, int b) {
    return 0.5 * (jet.dg[j](d, b) + jet.dg[b](d, j) - jet.dg[d](j, b));
  };
  auto dgamma_low = [&](int i, int d, int j, int b) {
    return 0.5 * (jet.d2g[i][j](d, b) + jet.d2g[i][b](d, j) - jet.d2g[i][d](j, b));
  };
  std::array<Mat<N>, N> dginv;
  for (int i = 0; i < N; ++i) dginv[i] = -out.g_inv * jet.dg[i] * out.g_inv;

  // dgamma[i][a](j, b) = ∂_i Γ^a_{jb}
  std::array<std::array<Mat<N>, N>, N> dgamma;
  for (int i = 0; i < N; ++i) {
    for (int a = 0; a < N; ++a) {
      for (int j = 0; j < N; ++j) {
        for (int b = 0; b < N; ++b) {
          double s = 0.0;
          for (int d = 0; d < N; ++d)
            s += dginv[i](a, d) * gamma_low(d, j, b) + out.g_inv(a, d) * dgamma_low(i, d, j, b);
          dgamma[i][a](j, b) = s;
        }
      }
    }
  }
  const auto& G = out.gamma.gamma;
  RiemannTensor<N> mixed;  // R^a_{b i j}
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          double s = dgamma[i][a](j, b) - dgamma[j][a](i, b);
          for (int c = 0; c < N; ++c) s += G[a](i, c) * G[c](j, b) - G[a](j, c) * G[c](i, b);
          mixed(a, b, i, j) = s;
        }
      }
    }
  }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double s = 0.0;
          for (int e = 0; e < N; ++e) s += out.g(a, e) * mixed(e, b, i, j);
          out.riemann(a, b, i, j) = s;
        }
  return out;
}

// Γ^k_ij at p. Throws DomainError / DegenerateError.
template <int N>
Christoffel<N> christoffel(const MetricChart<N>& chart, const Point<N>& p, const Tolerances& tol = {}) {
  const MetricJet<N> jet = chart.derivatives(p, tol);
  return christoffel_from_jet<N>(jet, checked_inverse<N>(jet.g));
}

// max_k,i,j |∇_k g_ij|; zero for a Levi-Civita connection.
template <int N>
double metric_compatibility_residual(const MetricJet<N>& jet, const Christoffel<N>& c) {
  double worst = 0.0;
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double s = jet.dg[k](i, j);
        for (int m = 0; m < N; ++m) s -= c.gamma[m](k, i) * jet.g(m, j) + c.gamma[m](k, j) * jet.g(i, m);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

// Largest violation of antisymmetry, pair symmetry and the first Bianchi identity.
template <int N>
double riemann_symmetry_residual(const RiemannTensor<N>& R) {
  double worst = 0.0;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          worst = std::max(worst, std::abs(R(a, b, i, j) + R(b, a, i, j)));
          worst = std::max(worst, std::abs(R(a, b, i, j) + R(a, b, j, i)));
          worst = std::max(worst, std::abs(R(a, b, i, j) - R(i, j, a, b)));
          worst = std::max(worst, std::abs(R(a, b, i, j) + R(a, i, j, b) + R(a, j, b, i)));
        }
  return worst;
}

// ---------------------------------------------------------------------------
// Four-dimensional curvature decomposition.

// Orthonormal frame plus the Λ² machinery. Basis of Λ² in frame indices:
// (01, 02, 03, 12, 13, 23).
class TwoFormAlgebra {
 public:
  // frame columns are the coordinate components of e_0..e_3.
  TwoFormAlgebra(const Mat4& g, const Mat4& frame, int chart_orientation, double tol = 1e-10);

  // Gram–Schmidt on ∂_0..∂_3 in index order.
  static TwoFormAlgebra gram_schmidt(const Mat4& g, int chart_orientation);

  const Mat4& frame() const { return frame_; }
  const Mat4& coframe() const { return coframe_; }
  int orientation() const { return orientation_; }

  // Coordinate antisymmetric matrix ω_ij -> coefficients on e^a∧e^b (a<b).
  Vec6 to_basis(const Mat4& omega) const;
  Mat4 from_basis(const Vec6& coeffs) const;
  // Star on Λ² in the basis above, including the frame orientation.
  Mat6 star_matrix() const;

  static constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

 private:
  Mat4 frame_;
  Mat4 coframe_;
  int orientation_;
};

Mat4 hodge_star_2form(const TwoFormAlgebra& algebra, const Mat4& omega);

struct CurvatureData {
  LocalGeometry<4> local;
  Mat4 ricci = Mat4::Zero();            // coordinate components
  double scalar = 0.0;
  Mat4 ricci_tracefree = Mat4::Zero();
  Mat4 frame = Mat4::Zero();            // frame used for the split
  Mat6 curvature_operator = Mat6::Zero();  // R_abcd on Λ², frame basis
  Mat6 weyl_plus = Mat6::Zero();
  Mat6 weyl_minus = Mat6::Zero();
  double norm_rm_sq = 0.0;
  double norm_ricci_sq = 0.0;
  double norm_ricci_tracefree_sq = 0.0;
  double norm_weyl_sq = 0.0;
  double norm_weyl_plus_sq = 0.0;
  double norm_weyl_minus_sq = 0.0;

  const Christoffel<4>& gamma() const { return local.gamma; }
  const RiemannTensor<4>& riemann() const { return local.riemann; }
  double norm_rm() const { return std::sqrt(norm_rm_sq); }
  // |Rm|² in the Λ²-norm (Σ_{a<b, c<d} R_abcd²); the energy in the limit identity.
  double energy_density() const { return 0.25 * norm_rm_sq; }
  // |Rm|² − (R²/6 + 2|Ric°|² + |W|²)
  double decomposition_residual() const {
    return norm_rm_sq - (scalar * scalar / 6.0 + 2.0 * norm_ricci_tracefree_sq + norm_weyl_sq);
  }
  double ricci_norm() const { return std::sqrt(norm_ricci_sq); }
};

// Ricci, scalar and Weyl split of the curvature in `frame` (orthonormal for local.g).
CurvatureData decompose(const LocalGeometry<4>& local, const Mat4& frame);

// Full curvature at p with the Gram–Schmidt frame. Throws VerificationError if
// the Riemann symmetries fail the chart's tolerance.
CurvatureData riemann(const MetricChart<4>& chart, const Point4& p, const Tolerances& tol = {});

struct CharacteristicDensities {
  double euler = 0.0;       // coefficient of dVol in P_χ
  double pontryagin = 0.0;  // coefficient of dVol in P_τ
};

CharacteristicDensities characteristic_densities(const CurvatureData& c);

}  // namespace transgress
