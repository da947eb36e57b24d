#include "transgress/theorems.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace transgress {

namespace {

constexpr double k8Pi2 = 8.0 * kPi * kPi;

void require_4d(const CatalogEntry& entry) {
  if (!entry.geometry4 || !entry.radial) {
    throw std::invalid_argument("'" + entry.name + "' has no 4-dimensional radial structure");
  }
}

double relative(double diff, double magnitude) { return std::abs(diff) / std::max(1.0, std::abs(magnitude)); }

template <class A>
double max_entry(const A& m) {
  return m.cwiseAbs().maxCoeff();
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double target_density(FormKind kind, const CurvatureData& c) {
  const CharacteristicDensities d = characteristic_densities(c);
  return kind == FormKind::euler ? d.euler : d.pontryagin;
}

bool has_plane_zero_set(const CatalogEntry& entry) {
  return std::any_of(entry.zero_set.begin(), entry.zero_set.end(),
                     [](const ZeroSetComponent& z) { return z.type == "plane"; });
}

}  // namespace

std::vector<Point4> sample_points(const CatalogEntry& entry, int n, unsigned seed) {
  require_4d(entry);
  if (n < 1) throw std::invalid_argument("need at least one sample point");
  const RadialStructure& rs = *entry.radial;
  const double a = entry.geom().chart.scale();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point4> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double R = rs.center + a * (0.2 + 3.8 * unit(rng));
    const double u = 0.3 + (rs.polar_max - 0.6) * unit(rng);
    const double v = rs.period_v * unit(rng);
    const double w = rs.period_w * unit(rng);
    out.push_back(entry.adapted_point(R, u, v, w));
  }
  return out;
}

double IdentityReport::worst() const {
  return std::max({covariant_constancy, null_vector, dk_closed_form, trace_k_wedge_dk, decomposition, t_integral,
                   polynomial});
}

IdentityReport verify_identities(const CatalogEntry& entry, int n_points, unsigned seed) {
  IdentityReport rep;
  rep.entry = entry.name;
  rep.n_points = n_points;
  const Geometry<4>& G = entry.geom();
  for (const Point4& p : sample_points(entry, n_points, seed)) {
    const PointEvaluation ev = evaluate_point(G.chart, G.killing, p);
    const KillingData& kd = ev.killing;
    const ConnectionDeformation& d = ev.deformation;
    const double h_scale = max_entry(kd.endomorphism);

    rep.covariant_constancy = std::max(rep.covariant_constancy, relative(covariant_constancy_residual(kd, d), h_scale));
    double f_scale = 0.0;
    for (const auto& row : d.F)
      for (const Mat4& m : row) f_scale = std::max(f_scale, max_entry(m));
    rep.null_vector = std::max(rep.null_vector, relative(null_vector_residual(kd, d), f_scale * kd.norm_X));

    const auto dk = dk_closed_form(kd, d);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double m = max_entry(d.DK[i][j]);
        rep.dk_closed_form = std::max(rep.dk_closed_form, relative(max_entry(Mat4(dk[i][j] - d.DK[i][j])), m));
      }

    const ThreeForm tk = trace_k_wedge_dk(d);
    rep.trace_k_wedge_dk = std::max(
        rep.trace_k_wedge_dk,
        relative((tk - trace_k_wedge_dk_closed_form(kd, ev.curvature.local.g_inv)).max_abs(), tk.max_abs()));

    rep.decomposition = std::max(rep.decomposition,
                                 relative(ev.curvature.decomposition_residual(), ev.curvature.norm_rm_sq));

    for (FormKind kind : {FormKind::euler, FormKind::pontryagin}) {
      const ThreeForm closed = transgression_form(kind, kd, ev.curvature).components;
      const double m = closed.max_abs();
      if (kind == FormKind::euler) rep.max_tp = std::max(rep.max_tp, m);
      rep.t_integral = std::max(
          rep.t_integral, relative((closed - transgression_via_t_integral(kind, d, 8).components).max_abs(), m));
      rep.polynomial = std::max(
          rep.polynomial, relative((closed - transgression_from_polynomial(kind, d).components).max_abs(), m));
    }
  }
  return rep;
}

ClosureReport verify_closure(const CatalogEntry& entry, int n_points, double h, unsigned seed) {
  if (!(h > 0.0)) throw std::invalid_argument("stencil step must be positive");
  ClosureReport rep;
  rep.entry = entry.name;
  rep.n_points = n_points;
  rep.h = h;
  const Geometry<4>& G = entry.geom();
  const double step = h * G.chart.scale();
  const std::vector<Point4> points = sample_points(entry, n_points, seed);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (FormKind kind : {FormKind::euler, FormKind::pontryagin}) {
    ClosureKindReport k;
    k.kind = kind;
    const ThreeFormField field = transgression_field(kind, G.chart, G.killing);
    std::vector<double> orders;
    for (const Point4& p : points) {
      const CurvatureData c = riemann(G.chart, p);
      const double vol = c.local.sqrt_det;
      const double density = target_density(kind, c);
      const double target = density * vol * c.local.orientation;
      const double d1 = exterior_derivative_3form(field, p, step);
      const double d2 = exterior_derivative_3form(field, p, 0.5 * step);
      const double r1 = std::abs(d1 - target) / vol;
      const double r2 = std::abs(d2 - target) / vol;
      k.max_residual_extrapolated =
          std::max(k.max_residual_extrapolated, std::abs((4.0 * d2 - d1) / 3.0 - target) / vol);
      k.max_residual_h = std::max(k.max_residual_h, r1);
      k.max_residual_half = std::max(k.max_residual_half, r2);
      k.max_density = std::max(k.max_density, std::abs(density));
      const double floor = 16.0 * eps * field(p).max_abs() / (0.5 * step) / vol;
      k.rounding_floor = std::max(k.rounding_floor, floor);
      if (r2 > 100.0 * floor) orders.push_back(std::log2(r1 / r2));
    }
    k.order_meaningful = k.max_residual_half > 100.0 * k.rounding_floor;
    k.order = k.order_meaningful ? std::log2(k.max_residual_h / k.max_residual_half)
                                 : std::numeric_limits<double>::quiet_NaN();
    k.median_order = median(orders);
    rep.kinds.push_back(k);
  }
  return rep;
}

BalanceReport verify_balance(const CatalogEntry& entry, const std::vector<double>& s_list,
                             const QuadratureConfig& cfg) {
  require_4d(entry);
  if (has_plane_zero_set(entry)) {
    throw DegenerateError("zero set of X on '" + entry.name + "' meets every level set; no residue balance");
  }
  const RadialModel model(entry, cfg);
  const Geometry<4>& G = entry.geom();
  const ThreeFormField tp = transgression_field(FormKind::euler, G.chart, G.killing, cfg.transgression, cfg.tol);
  BalanceReport rep;
  rep.entry = entry.name;
  for (double s : s_list) {
    if (!(s > 0.0)) throw DomainError("ball radius must be positive");
    BalanceRow row;
    row.s = s;
    row.R = model.coordinate_radius(s);
    const Estimate e = model.energy_in_ball(s);
    row.energy_over_8pi2 = e.value / k8Pi2;
    row.energy_error = e.error / k8Pi2;
    row.chi_inside = entry.chi_inside(row.R);
    row.boundary = model.sphere_integral(tp, row.R);
    row.residual = row.energy_over_8pi2 - row.chi_inside - row.boundary;
    rep.max_residual = std::max(rep.max_residual, std::abs(row.residual));
    rep.rows.push_back(row);
  }
  return rep;
}

namespace {

// Neville's scheme for the interpolating polynomial in x evaluated at 0.
double neville_at_zero(const std::vector<double>& x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
  return y[0];
}

}  // namespace

Extrapolation richardson_in_s(const std::vector<double>& s, const std::vector<double>& values, double tol) {
  if (s.size() != values.size() || s.size() < 2) throw std::invalid_argument("need at least two rungs");
  Extrapolation ex;
  ex.s = s;
  ex.raw = values;
  std::vector<double> x;
  for (double v : s) x.push_back(1.0 / v);
  ex.value = neville_at_zero(x, values);
  if (s.size() >= 3) {
    const std::vector<double> x_tail(x.begin() + 1, x.end());
    const std::vector<double> y_tail(values.begin() + 1, values.end());
    ex.change = std::abs(ex.value - neville_at_zero(x_tail, y_tail));
  } else {
    ex.change = std::abs(values.back() - values.front());
  }
  ex.converged = ex.change < tol;
  return ex;
}

Thm3Report verify_thm3(const CatalogEntry& entry, double tol, const Thm3Config& cfg) {
  require_4d(entry);
  if (!entry.known.count("energy_over_8pi2")) {
    throw std::invalid_argument("'" + entry.name + "' has no declared finite energy");
  }
  if (cfg.rungs < 2 || !(cfg.ratio > 1.0) || !(cfg.s0 > 0.0)) throw std::invalid_argument("bad s-ladder");
  const RadialModel model(entry, cfg.quadrature);
  const double unit = entry.geom().chart.scale() * entry.scale;
  std::vector<double> s, energy, avr;
  for (int k = 0; k < cfg.rungs; ++k) {
    const double sk = cfg.s0 * unit * std::pow(cfg.ratio, k);
    s.push_back(sk);
    energy.push_back(model.energy_in_ball(sk).value / k8Pi2);
    avr.push_back(model.ball_volume(sk).value / std::pow(sk, 4));
  }
  Thm3Report rep;
  rep.entry = entry.name;
  rep.tol = tol;
  rep.energy = richardson_in_s(s, energy, 0.1 * tol);
  rep.avr = richardson_in_s(s, avr, 0.1 * tol * 0.5 * kPi * kPi);
  rep.chi = entry.total_chi();
  rep.lhs = rep.energy.value;
  rep.rhs = rep.chi - rep.avr.value / (0.5 * kPi * kPi);
  rep.pass = std::abs(rep.lhs - rep.rhs) < tol && rep.energy.converged && rep.avr.converged;
  return rep;
}

EtaReport eta_sequence(int k, int first_index) {
  if (k < 1) throw std::invalid_argument("eta sequence needs k >= 1");
  EtaReport rep;
  rep.k = k;
  rep.first_index = first_index;
  rep.q = std::pow(9.0 / 11.0, 0.25);
  const double c = (std::pow(11.0, 0.25) - std::pow(9.0, 0.25)) / std::pow(11.0, 0.25);
  double weighted = 0.0;
  for (int i = first_index; i < first_index + k; ++i) {
    const double eta = c * std::pow(9.0 / 11.0, 0.25 * i);
    rep.eta.push_back(eta);
    rep.sum += eta;
    weighted += std::pow(0.75, i) / std::pow(eta, 4);
    rep.weighted_partial.push_back(weighted);
  }
  rep.infinite_sum = std::pow(rep.q, first_index);
  rep.sum_closed_form = rep.infinite_sum * (1.0 - std::pow(rep.q, k));
  rep.weighted_ratio = 0.75 * 11.0 / 9.0;
  rep.weighted_bound = std::pow(rep.weighted_ratio, first_index) / (1.0 - rep.weighted_ratio) / std::pow(c, 4);
  return rep;
}

Thm2Report thm2_bound(const CatalogEntry& entry, double t, double s, const ProbeConfig& probe_cfg,
                      const QuadratureConfig& qcfg) {
  require_4d(entry);
  if (!(t > 0.0 && s > 0.0)) throw DomainError("thm2 needs t > 0 and s > 0");
  const RadialModel model(entry, qcfg);
  const Geometry<4>& G = entry.geom();
  Thm2Report rep;
  rep.entry = entry.name;
  rep.t = t;
  rep.s = s;
  const double R_t = model.coordinate_radius(t);
  rep.lhs = model.energy_in_ball(t).value / k8Pi2;
  rep.chi = entry.chi_inside(R_t);
  rep.annulus_volume = model.ball_volume(t + s).value - model.ball_volume(t).value;
  rep.annulus_term = rep.annulus_volume / std::pow(s, 4);
  rep.measured_C = rep.annulus_term > 0.0 ? std::max(0.0, (rep.lhs - rep.chi) / rep.annulus_term) : 0.0;

  const CutoffProfile phi = cutoff_profile(t, t + s);
  rep.cutoff_slope_bound = phi.derivative_bound;
  rep.cutoff_sampled_slope = phi.sampled_max_slope;
  const auto space = make_probe_space(entry, probe_cfg);
  const bool balance_defined = !has_plane_zero_set(entry);
  const ThreeFormField tp = transgression_field(FormKind::euler, G.chart, G.killing, qcfg.transgression, qcfg.tol);
  const GaussRule rule = gauss_legendre_unit(8);
  double annulus_energy = 0.0, boundary = 0.0, first = 0.0;
  const int panels = std::max(16, qcfg.panels / 2);
  for (int k = 0; k < panels; ++k)
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double tau = t + s * (k + rule.nodes[q]) / panels;
      const double w = rule.weights[q] * s / panels;
      const double R = model.coordinate_radius(tau);
      annulus_energy += w * phi.value(tau) * model.energy_density(R) / model.radial_speed(R);
      if (balance_defined) boundary += w * (-phi.derivative(tau)) * model.sphere_integral(tp, R);
    }
  // Each node of the first-estimate integrand costs a curvature-radius bisection.
  constexpr int probe_panels = 4;
  for (int k = 0; k < probe_panels; ++k)
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double tau = t + s * (k + rule.nodes[q]) / probe_panels;
      const double w = rule.weights[q] * s / probe_panels;
      const double R = model.coordinate_radius(tau);
      const Point4 x = entry.reference_point(R);
      const ProbePoint p(x.begin(), x.end());
      const double r = curvature_radius(*space, p, s, probe_cfg).value;
      first += w * std::abs(phi.derivative(tau)) * std::pow(r, -3) * model.volume_density(R) / model.radial_speed(R);
    }
  rep.cutoff_energy = rep.lhs + annulus_energy / k8Pi2;
  rep.cutoff_boundary = balance_defined ? boundary : std::numeric_limits<double>::quiet_NaN();
  rep.cutoff_residual = rep.cutoff_energy - rep.chi - rep.cutoff_boundary;
  rep.first_estimate_integral = first;
  rep.measured_C1 = first > 0.0 ? std::max(0.0, (rep.cutoff_energy - rep.chi) / first) : 0.0;
  rep.variation = excised_variation(*space, Excision{space->origin(), t}, s, probe_cfg);
  return rep;
}

}  // namespace transgress
