#pragma once

// Second-order forward-mode jets. A Jet<N> carries a value together with its
// gradient and Hessian with respect to N independent variables, so metric
// functors written once as templates yield g, dg and d2g exactly (up to
// rounding).

#include <Eigen/Dense>

#include <array>
#include <cmath>

namespace transgress {

template <int N>
struct Jet {
  using Grad = Eigen::Matrix<double, N, 1>;
  using Hess = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Grad d = Grad::Zero();
  Hess h = Hess::Zero();

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly
  Jet(double value, const Grad& grad, const Hess& hess) : v(value), d(grad), h(hess) {}

  static Jet variable(double value, int index) {
    Jet j(value);
    j.d[index] = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) { v += o.v; d += o.d; h += o.h; return *this; }
  Jet& operator-=(const Jet& o) { v -= o.v; d -= o.d; h -= o.h; return *this; }
  Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }
  Jet& operator/=(const Jet& o) { *this = *this / o; return *this; }

  friend Jet operator-(const Jet& a) { return Jet(-a.v, -a.d, -a.h); }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    r.d = a.v * b.d + b.v * a.d;
    r.h = a.v * b.h + b.v * a.h + a.d * b.d.transpose() + b.d * a.d.transpose();
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  // Chain rule for a scalar function with derivatives f1 = f'(v), f2 = f''(v).
  static Jet chain(const Jet& a, double f0, double f1, double f2) {
    return Jet(f0, f1 * a.d, f1 * a.h + f2 * a.d * a.d.transpose());
  }

  friend Jet reciprocal(const Jet& a) {
    const double inv = 1.0 / a.v;
    return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
  }
};

template <int N> Jet<N> sin(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return Jet<N>::chain(a, s, c, -s);
}
template <int N> Jet<N> cos(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return Jet<N>::chain(a, c, -s, -c);
}
template <int N> Jet<N> sqrt(const Jet<N>& a) {
  const double r = std::sqrt(a.v);
  return Jet<N>::chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}
template <int N> Jet<N> exp(const Jet<N>& a) {
  const double e = std::exp(a.v);
  return Jet<N>::chain(a, e, e, e);
}
template <int N> Jet<N> log(const Jet<N>& a) {
  return Jet<N>::chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}
template <int N> Jet<N> pow(const Jet<N>& a, double p) {
  const double f0 = std::pow(a.v, p);
  const double f1 = p * std::pow(a.v, p - 1.0);
  const double f2 = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return Jet<N>::chain(a, f0, f1, f2);
}

// Lifts a coordinate point to jets seeded with the identity gradient.
template <int N>
std::array<Jet<N>, N> seed_jets(const std::array<double, N>& x) {
  std::array<Jet<N>, N> out;
  for (int i = 0; i < N; ++i) out[i] = Jet<N>::variable(x[i], i);
  return out;
}

inline double value_of(double x) { return x; }
template <int N> double value_of(const Jet<N>& x) { return x.v; }

}  // namespace transgress
