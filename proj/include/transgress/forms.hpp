#pragma once

// Differential forms on a 4-dimensional chart, determinant (Spivak) convention:
// a k-form is stored by its fully antisymmetric components and
//   ω = Σ_{i<j<k} ω_ijk dx^i∧dx^j∧dx^k,   (α∧β)_ijk = α_i β_jk + α_j β_ki + α_k β_ij.

#include "transgress/tensor_core.hpp"

#include <array>
#include <functional>

namespace transgress {

class ThreeForm {
 public:
  double operator()(int i, int j, int k) const { return c_[(i * 4 + j) * 4 + k]; }

  // Coefficient on dx^a∧dx^b∧dx^c for the complement of `missing` (a<b<c).
  double component_without(int missing) const {
    int idx[3], n = 0;
    for (int i = 0; i < 4; ++i)
      if (i != missing) idx[n++] = i;
    return (*this)(idx[0], idx[1], idx[2]);
  }

  // Sets ω_ijk for i<j<k and all its permutations.
  void set(int i, int j, int k, double v) {
    at(i, j, k) = v;
    at(j, k, i) = v;
    at(k, i, j) = v;
    at(j, i, k) = -v;
    at(i, k, j) = -v;
    at(k, j, i) = -v;
  }

  // ω(u, v, w)
  double evaluate(const Vec4& u, const Vec4& v, const Vec4& w) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) s += (*this)(i, j, k) * u[i] * v[j] * w[k];
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  // Largest |ω_ijk − sgn(σ) ω_σ(ijk)|; zero by construction unless corrupted.
  double antisymmetry_residual() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          m = std::max(m, std::abs((*this)(i, j, k) + (*this)(j, i, k)));
          m = std::max(m, std::abs((*this)(i, j, k) + (*this)(i, k, j)));
        }
    return m;
  }

  ThreeForm& operator+=(const ThreeForm& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
    return *this;
  }
  ThreeForm& operator-=(const ThreeForm& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
    return *this;
  }
  ThreeForm& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  friend ThreeForm operator+(ThreeForm a, const ThreeForm& b) { return a += b; }
  friend ThreeForm operator-(ThreeForm a, const ThreeForm& b) { return a -= b; }
  friend ThreeForm operator*(double s, ThreeForm a) { return a *= s; }

  // α∧β for a 1-form α and a 2-form β (antisymmetric matrix).
  static ThreeForm wedge(const Vec4& alpha, const Mat4& beta) {
    ThreeForm out;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
          out.set(i, j, k, alpha[i] * beta(j, k) + alpha[j] * beta(k, i) + alpha[k] * beta(i, j));
    return out;
  }

  // Builds α∧β where the wedge of factors is a bilinear pairing of
  // matrix-valued forms: (i, jk) -> pair(α_i, β_jk).
  template <class Pair>
  static ThreeForm wedge_pairing(const std::array<Mat4, 4>& alpha,
                                 const std::array<std::array<Mat4, 4>, 4>& beta, Pair pair) {
    ThreeForm out;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
          out.set(i, j, k, pair(alpha[i], beta[j][k]) + pair(alpha[j], beta[k][i]) + pair(alpha[k], beta[i][j]));
    return out;
  }

 private:
  double& at(int i, int j, int k) { return c_[(i * 4 + j) * 4 + k]; }
  std::array<double, 64> c_{};
};

// (β∧γ)_0123 for 2-forms whose entries are combined by a bilinear pairing.
template <class T, class Pair>
double wedge_top(const std::array<std::array<T, 4>, 4>& beta, const std::array<std::array<T, 4>, 4>& gamma,
                 Pair pair) {
  return pair(beta[0][1], gamma[2][3]) - pair(beta[0][2], gamma[1][3]) + pair(beta[0][3], gamma[1][2]) +
         pair(beta[1][2], gamma[0][3]) - pair(beta[1][3], gamma[0][2]) + pair(beta[2][3], gamma[0][1]);
}

// α∧β for two 1-forms.
inline Mat4 wedge(const Vec4& a, const Vec4& b) { return a * b.transpose() - b * a.transpose(); }

using ThreeFormField = std::function<ThreeForm(const Point4&)>;

// Coefficient of dx^0∧dx^1∧dx^2∧dx^3 in dω at p, by second-order central
// differences of step h along each coordinate. Exceptions from the field
// (domain, null set of X) propagate.
inline double exterior_derivative_3form(const ThreeFormField& field, const Point4& p, double h) {
  double out = 0.0;
  for (int m = 0; m < 4; ++m) {
    Point4 plus = p, minus = p;
    plus[m] += h;
    minus[m] -= h;
    const double derivative =
        (field(plus).component_without(m) - field(minus).component_without(m)) / (2.0 * h);
    out += (m % 2 == 0 ? 1.0 : -1.0) * derivative;
  }
  return out;
}

}  // namespace transgress
