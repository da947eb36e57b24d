#include "transgress/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <ostream>

namespace transgress {

RadialModel::RadialModel(CatalogEntry entry, QuadratureConfig cfg)
    : entry_(std::move(entry)), cfg_(cfg) {
  if (!entry_.radial || !entry_.geometry4) {
    throw std::invalid_argument("'" + entry_.name + "' has no 4-dimensional radial structure");
  }
  if (cfg_.panels < 2 || cfg_.nodes_per_panel < 1 || cfg_.polar_nodes < 1 || cfg_.periodic_nodes < 1) {
    throw std::invalid_argument("quadrature resolutions must be positive (panels >= 2)");
  }
  panel_rule_ = gauss_legendre_unit(cfg_.nodes_per_panel);
  polar_rule_ = gauss_legendre_unit(cfg_.polar_nodes);
}

Mat4 RadialModel::adapted_metric(double R, double u, double v, double w, Mat4* jacobian) const {
  const Point4 a{R, u, v, w};
  const Mat4 J = rs().embed.jacobian(a);
  if (jacobian) *jacobian = J;
  return J.transpose() * entry_.geom().chart.metric(rs().embed.value(a)) * J;
}

double RadialModel::radial_speed(double R) const {
  return std::sqrt(adapted_metric(R, rs().reference_u, rs().reference_v, rs().reference_w)(0, 0));
}

double RadialModel::volume_density(double R) const {
  const RadialStructure& s = rs();
  double total = 0.0;
  const int nv = s.angular_invariant ? 1 : cfg_.periodic_nodes;
  for (std::size_t i = 0; i < polar_rule_.nodes.size(); ++i) {
    const double u = s.polar_max * polar_rule_.nodes[i];
    double ring = 0.0;
    for (int jv = 0; jv < nv; ++jv)
      for (int jw = 0; jw < nv; ++jw) {
        const double v = s.angular_invariant ? s.reference_v : s.period_v * jv / nv;
        const double w = s.angular_invariant ? s.reference_w : s.period_w * jw / nv;
        ring += std::sqrt(std::max(0.0, adapted_metric(R, u, v, w).determinant()));
      }
    total += s.polar_max * polar_rule_.weights[i] * ring / (nv * nv);
  }
  return total * s.period_v * s.period_w;
}

double RadialModel::energy_density(double R) const {
  const RadialStructure& s = rs();
  const MetricChart<4>& chart = entry_.geom().chart;
  if (s.homogeneous_orbits) {
    return riemann(chart, entry_.reference_point(R), cfg_.tol).energy_density() * volume_density(R);
  }
  double total = 0.0;
  const int nv = cfg_.periodic_nodes;
  for (std::size_t i = 0; i < polar_rule_.nodes.size(); ++i) {
    const double u = s.polar_max * polar_rule_.nodes[i];
    double ring = 0.0;
    for (int jv = 0; jv < nv; ++jv)
      for (int jw = 0; jw < nv; ++jw) {
        const double v = s.period_v * jv / nv, w = s.period_w * jw / nv;
        const double vol = std::sqrt(std::max(0.0, adapted_metric(R, u, v, w).determinant()));
        ring += riemann(chart, entry_.adapted_point(R, u, v, w), cfg_.tol).energy_density() * vol;
      }
    total += s.polar_max * polar_rule_.weights[i] * ring / (nv * nv);
  }
  return total * s.period_v * s.period_w;
}

double RadialModel::norm_rm(double R) const {
  return riemann(entry_.geom().chart, entry_.reference_point(R), cfg_.tol).norm_rm();
}

double RadialModel::norm_X(double R) const {
  const Point4 p = entry_.reference_point(R);
  const Vec4 X = entry_.geom().killing.value(p);
  return std::sqrt(std::max(0.0, X.dot(entry_.geom().chart.metric(p) * X)));
}

template <class F>
double RadialModel::radial_integral(F f, double R, int panels) const {
  const double U = std::sqrt(std::max(0.0, R - center()));
  const double width = U / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    double panel = 0.0;
    for (std::size_t q = 0; q < panel_rule_.nodes.size(); ++q) {
      const double u = width * (k + panel_rule_.nodes[q]);
      panel += panel_rule_.weights[q] * f(center() + u * u) * 2.0 * u;
    }
    sum += panel * width;
  }
  return sum;
}

template <class F>
Estimate RadialModel::radial_estimate(F f, double R) const {
  const double fine = radial_integral(f, R, cfg_.panels);
  const double coarse = radial_integral(f, R, cfg_.panels / 2);
  return {fine, std::abs(fine - coarse)};
}

Estimate RadialModel::geodesic_radius(double R) const {
  if (!(R >= center())) throw DomainError("radial coordinate below the center orbit");
  return radial_estimate([this](double x) { return radial_speed(x); }, R);
}

double RadialModel::coordinate_radius(double t) const {
  if (!(t >= 0.0)) throw DomainError("geodesic radius must be non-negative");
  if (t == 0.0) return center();
  auto gap = [this, t](double R) { return radial_integral([this](double x) { return radial_speed(x); }, R, cfg_.panels) - t; };
  double hi = center() + t;
  while (gap(hi) < 0.0) {
    hi = center() + 2.0 * (hi - center());
    if (hi > rs().max_radius) throw DomainError("geodesic radius beyond the radial range");
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(gap, center(), hi, -t, gap(hi),
                                                      boost::math::tools::eps_tolerance<double>(50), iters);
  const double R = 0.5 * (root.first + root.second);
  if (R > rs().max_radius) throw DomainError("geodesic radius beyond the radial range");
  return R;
}

Estimate RadialModel::ball_volume(double t) const {
  return radial_estimate([this](double x) { return volume_density(x); }, coordinate_radius(t));
}

Estimate RadialModel::energy_in_ball(double t) const {
  return radial_estimate([this](double x) { return energy_density(x); }, coordinate_radius(t));
}

double RadialModel::sphere_integral(const ThreeFormField& form, double R) const {
  const RadialStructure& s = rs();
  const int chart_orientation = entry_.geom().chart.orientation();
  const int nv = s.angular_invariant ? 1 : cfg_.periodic_nodes;
  double total = 0.0;
  for (std::size_t i = 0; i < polar_rule_.nodes.size(); ++i) {
    const double u = s.polar_max * polar_rule_.nodes[i];
    double ring = 0.0;
    for (int jv = 0; jv < nv; ++jv)
      for (int jw = 0; jw < nv; ++jw) {
        const double v = s.angular_invariant ? s.reference_v : s.period_v * jv / nv;
        const double w = s.angular_invariant ? s.reference_w : s.period_w * jw / nv;
        const Point4 a{R, u, v, w};
        const Mat4 J = s.embed.jacobian(a);
        const double sign = chart_orientation * (J.determinant() > 0.0 ? 1.0 : -1.0);
        const ThreeForm omega = form(s.embed.value(a));
        ring += sign * omega.evaluate(J.col(1), J.col(2), J.col(3));
      }
    total += s.polar_max * polar_rule_.weights[i] * ring / (nv * nv);
  }
  return total * s.period_v * s.period_w;
}

RadialProfile RadialModel::profile(double t_max, int n) const {
  if (n < 2 || !(t_max > 0.0)) throw std::invalid_argument("profile needs n >= 2 and t_max > 0");
  RadialProfile out;
  for (int k = 1; k <= n; ++k) {
    RadialSample s;
    s.geodesic_r = t_max * k / n;
    s.R = coordinate_radius(s.geodesic_r);
    const double speed = radial_speed(s.R);
    s.shell_volume = volume_density(s.R) / speed;
    s.shell_energy = energy_density(s.R) / speed;
    out.samples.push_back(s);
  }
  return out;
}

void RadialProfile::write_csv(std::ostream& os) const {
  os << "r,geodesic_r,shell_volume,shell_energy\n";
  os.precision(12);
  for (const auto& s : samples) os << s.R << ',' << s.geodesic_r << ',' << s.shell_volume << ',' << s.shell_energy << '\n';
}

namespace {

double bump(double z) { return z > 1e-3 ? std::exp(-1.0 / z) : 0.0; }
double bump_slope(double z) { return z > 1e-3 ? std::exp(-1.0 / z) / (z * z) : 0.0; }

}  // namespace

double CutoffProfile::value(double x) const {
  if (x <= inner) return 1.0;
  if (x >= outer) return 0.0;
  const double y = (x - inner) / (outer - inner);
  const double a = bump(1.0 - y), b = bump(y);
  return a / (a + b);
}

double CutoffProfile::derivative(double x) const {
  if (x <= inner || x >= outer) return 0.0;
  const double y = (x - inner) / (outer - inner);
  const double a = bump(1.0 - y), b = bump(y);
  const double dy = (-bump_slope(1.0 - y) * b - a * bump_slope(y)) / ((a + b) * (a + b));
  return dy / (outer - inner);
}

CutoffProfile cutoff_profile(double inner, double outer, int samples) {
  if (!(inner > 0.0 && outer > inner)) throw std::invalid_argument("cutoff needs 0 < inner < outer");
  CutoffProfile c;
  c.inner = inner;
  c.outer = outer;
  c.derivative_bound = 2.0 / (outer - inner);
  for (int k = 0; k <= samples; ++k) {
    const double x = inner + (outer - inner) * k / samples;
    c.sampled_max_slope = std::max(c.sampled_max_slope, std::abs(c.derivative(x)));
  }
  return c;
}

}  // namespace transgress
