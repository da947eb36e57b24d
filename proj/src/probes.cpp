#include "transgress/probes.hpp"

#include <cmath>
using std::isnan;  // Boost 1.74 pchip.hpp calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <limits>
#include <random>

namespace transgress {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_draw(boost::random::sobol& eng) {
  const double span = static_cast<double>(eng.max()) - static_cast<double>(eng.min()) + 1.0;
  return (static_cast<double>(eng()) - static_cast<double>(eng.min()) + 0.5) / span;
}

std::vector<ProbePoint> sobol_points(int dim, int count, unsigned seed, bool on_sphere) {
  boost::random::sobol eng(dim);
  eng.discard(static_cast<std::uintmax_t>(dim) * (1 + seed));
  std::vector<ProbePoint> out;
  while (static_cast<int>(out.size()) < count) {
    ProbePoint x(dim);
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      x[i] = 2.0 * unit_draw(eng) - 1.0;
      n2 += x[i] * x[i];
    }
    if (n2 >= 1.0 || n2 < 1e-12) continue;
    if (on_sphere)
      for (double& v : x) v /= std::sqrt(n2);
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<ProbePoint> sphere_directions(int dim, int n, unsigned seed) {
  std::vector<ProbePoint> out;
  if (dim == 2) {
    for (int j = 0; j < n; ++j) out.push_back({std::cos(2.0 * kPi * j / n), std::sin(2.0 * kPi * j / n)});
    return out;
  }
  for (int a = 0; a < dim && static_cast<int>(out.size()) < n; ++a) {
    ProbePoint e(dim, 0.0);
    e[a] = 1.0;
    out.push_back(e);
  }
  const auto rest = sobol_points(dim, std::max(0, n - static_cast<int>(out.size())), seed + 7, true);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

Ratio make_ratio(const SupInf& si) {
  Ratio r;
  if (!(si.inf > 0.0)) {
    r.infinite = true;
    r.value = kInf;
    r.bracket = {kInf, kInf};
    return r;
  }
  r.value = si.sup / si.inf;
  r.bracket.lower = si.sup_bracket.lower / si.inf_bracket.upper;
  r.bracket.upper = si.inf_bracket.lower > 0.0 ? si.sup_bracket.upper / si.inf_bracket.lower : kInf;
  return r;
}

// Fraction of a round 3-sphere (or circle) of radius t about the center lying
// within distance r of a point at distance tp.
double cap_model(int dim, double t, double tp, double r) {
  if (t + tp <= r) return 1.0;
  if (tp == 0.0 || t == 0.0) return t <= r ? 1.0 : 0.0;
  const double c = std::clamp((t * t + tp * tp - r * r) / (2.0 * t * tp), -1.0, 1.0);
  const double alpha = std::acos(c);
  return dim == 2 ? alpha / kPi : (alpha - std::sin(alpha) * c) / kPi;
}

}  // namespace

// ---------------------------------------------------------------------------

EuclideanProbeSpace::EuclideanProbeSpace(const CatalogEntry& entry, const ProbeConfig& cfg)
    : entry_(entry), dim_(entry.dimension), lambda_(entry.scale) {
  const bool euclidean = dim_ == 4 ? (entry.geometry4 && entry.geometry4->euclidean_coordinates)
                                   : (entry.geometry2 && entry.geometry2->euclidean_coordinates);
  if (!euclidean) throw std::invalid_argument("'" + entry.name + "' is not a Euclidean chart");
  if (cfg.n_samples < 16) throw std::invalid_argument("need at least 16 ball samples");
  unit_ball_ = sobol_points(dim_, cfg.n_samples, cfg.seed, false);
  const auto boundary = sphere_directions(dim_, dim_ == 2 ? 256 : 512, cfg.seed);
  unit_ball_.insert(unit_ball_.end(), boundary.begin(), boundary.end());
  unit_ball_.push_back(ProbePoint(dim_, 0.0));
  const ProbePoint zero(dim_, 0.0);
  if (norm_X(zero) > 0.0) throw std::invalid_argument("Euclidean probes expect a linear Killing field");
  Eigen::MatrixXd J = dim_ == 2 ? Eigen::MatrixXd(entry.geometry2->killing.jacobian({0.0, 0.0}))
                                : Eigen::MatrixXd(entry.geometry4->killing.jacobian({0.0, 0.0, 0.0, 0.0}));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  for (int i = 0; i < dim_; ++i) {
    if (svd.singularValues()(i) <= 1e-12 * std::max(1.0, svd.singularValues()(0))) {
      const Eigen::VectorXd v = svd.matrixV().col(i);
      kernel_.emplace_back(v.data(), v.data() + dim_);
    }
  }
  // Covering radius estimated from pseudo-random probe points, independent of the Sobol net.
  std::mt19937_64 rng(cfg.seed + 101);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  fill_fraction_ = 0.0;
  for (int k = 0; k < 1024;) {
    ProbePoint q(dim_);
    double n2 = 0.0;
    for (double& v : q) {
      v = unif(rng);
      n2 += v * v;
    }
    if (n2 >= 1.0) continue;
    ++k;
    double best = kInf;
    for (const auto& x : unit_ball_) {
      double d2 = 0.0;
      for (int i = 0; i < dim_; ++i) d2 += (q[i] - x[i]) * (q[i] - x[i]);
      best = std::min(best, d2);
    }
    fill_fraction_ = std::max(fill_fraction_, std::sqrt(best));
  }
}

double EuclideanProbeSpace::norm_X(const ProbePoint& q) const {
  if (dim_ == 2) {
    const Point<2> x{q[0], q[1]};
    const Vec<2> X = entry_.geometry2->killing.value(x);
    return std::sqrt(X.dot(entry_.geometry2->chart.metric(x) * X));
  }
  const Point4 x{q[0], q[1], q[2], q[3]};
  const Vec4 X = entry_.geometry4->killing.value(x);
  return std::sqrt(X.dot(entry_.geometry4->chart.metric(x) * X));
}

bool EuclideanProbeSpace::zero_set_meets(const ProbePoint& p, double r, const Excision* ex) const {
  // Zero set of the linear field: the kernel of its Jacobian. z is the point of it nearest p.
  ProbePoint z(dim_, 0.0);
  for (const auto& k : kernel_) {
    double c = 0.0;
    for (int i = 0; i < dim_; ++i) c += p[i] * k[i];
    for (int i = 0; i < dim_; ++i) z[i] += c * k[i];
  }
  if (distance(p, z) > r) return false;
  return !ex || distance(z, ex->center) >= ex->radius;
}

double EuclideanProbeSpace::lipschitz_X(const ProbePoint& p) const {
  // Coordinate Jacobian of a linear field; metric factors cancel in flat space.
  if (dim_ == 2) {
    const Mat<2> J = entry_.geometry2->killing.jacobian({p[0], p[1]});
    return Eigen::JacobiSVD<Mat<2>>(J).singularValues()(0);
  }
  const Mat4 J = entry_.geometry4->killing.jacobian({p[0], p[1], p[2], p[3]});
  return Eigen::JacobiSVD<Mat4>(J).singularValues()(0);
}

double EuclideanProbeSpace::value(ProbeField f, const ProbePoint& p) const {
  if (f == ProbeField::norm_X) return norm_X(p);
  if (dim_ == 2 || entry_.geometry4->flat) return 0.0;
  return riemann(entry_.geometry4->chart, {p[0], p[1], p[2], p[3]}).norm_rm();
}

SupInf EuclideanProbeSpace::sup_inf(ProbeField f, const ProbePoint& p, double r, const Excision* ex) const {
  const double rc = r / lambda_;  // coordinate radius
  SupInf out;
  out.sup = -kInf;
  out.inf = kInf;
  int kept = 0;
  ProbePoint q(dim_);
  for (const auto& x : unit_ball_) {
    for (int i = 0; i < dim_; ++i) q[i] = p[i] + rc * x[i];
    if (ex && distance(q, ex->center) < ex->radius) continue;
    const double v = value(f, q);
    out.sup = std::max(out.sup, v);
    out.inf = std::min(out.inf, v);
    ++kept;
  }
  if (kept == 0) throw DomainError("ball lies inside the excised region");
  if (f == ProbeField::norm_X && zero_set_meets(p, r, ex)) out.inf = 0.0;
  const double slack = (f == ProbeField::norm_X ? lipschitz_X(p) : 0.0) * fill_fraction_ * r;
  out.sup_bracket = {out.sup, out.sup + slack};
  out.inf_bracket = {std::max(0.0, out.inf - slack), out.inf};
  return out;
}

double EuclideanProbeSpace::ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p,
                                      double r) const {
  const double rc = r / lambda_;
  double sum = 0.0;
  int n = 0;
  ProbePoint q(dim_);
  // Interior samples only: the boundary set would bias the mean.
  const std::size_t interior = unit_ball_.size() - (dim_ == 2 ? 256 : 512) - 1;
  for (std::size_t k = 0; k < interior; ++k) {
    for (int i = 0; i < dim_; ++i) q[i] = p[i] + rc * unit_ball_[k][i];
    sum += std::abs(f(q));
    ++n;
  }
  return sum / n;
}

double EuclideanProbeSpace::ball_volume(const ProbePoint&, double r) const {
  return dim_ == 2 ? kPi * r * r : 0.5 * kPi * kPi * r * r * r * r;
}

double EuclideanProbeSpace::distance(const ProbePoint& a, const ProbePoint& b) const {
  double d2 = 0.0;
  for (int i = 0; i < dim_; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return lambda_ * std::sqrt(d2);
}

std::vector<ProbePoint> EuclideanProbeSpace::sphere_points(const ProbePoint& center, double d, int n) const {
  std::vector<ProbePoint> out;
  for (const auto& dir : sphere_directions(dim_, n, 0)) {
    ProbePoint q(dim_);
    for (int i = 0; i < dim_; ++i) q[i] = center[i] + d / lambda_ * dir[i];
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct RadialProbeSpace::Table {
  double t_max = 0.0;
  double R_max = 0.0;
  std::vector<double> t, R;
  std::optional<boost::math::interpolators::pchip<std::vector<double>>> R_of_t, t_of_R, rm, x, dvdt;
};

RadialProbeSpace::RadialProbeSpace(const CatalogEntry& entry, const ProbeConfig&, QuadratureConfig qcfg)
    : model_(entry, qcfg) {}

const RadialProbeSpace::Table& RadialProbeSpace::table(double t_needed) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (table_ && table_->t_max >= t_needed) return *table_;
  const double c = model_.center();
  double R_max = table_ ? table_->R_max : c + std::max(4.0, 2.0 * t_needed / model_.entry().scale);
  const GaussRule rule = gauss_legendre_unit(8);
  constexpr int n = 800;
  for (;;) {
    auto tab = std::make_shared<Table>();
    const double U = std::sqrt(R_max - c);
    std::vector<double> rm, x, dv;
    double t_acc = 0.0, u_prev = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double u = i == 0 ? 0.05 * U / n : U * i / n;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double uq = u_prev + (u - u_prev) * rule.nodes[q];
        t_acc += (u - u_prev) * rule.weights[q] * model_.radial_speed(c + uq * uq) * 2.0 * uq;
      }
      u_prev = u;
      const double R = c + u * u;
      tab->t.push_back(t_acc);
      tab->R.push_back(R);
      rm.push_back(model_.norm_rm(R));
      x.push_back(model_.norm_X(R));
      dv.push_back(model_.volume_density(R) / model_.radial_speed(R));
    }
    tab->t_max = t_acc;
    tab->R_max = R_max;
    if (t_acc >= t_needed) {
      using boost::math::interpolators::pchip;
      auto t = tab->t, R = tab->R;
      tab->R_of_t.emplace(std::vector<double>(t), std::vector<double>(R));
      tab->t_of_R.emplace(std::vector<double>(R), std::vector<double>(t));
      tab->rm.emplace(std::vector<double>(t), std::move(rm));
      tab->x.emplace(std::vector<double>(t), std::move(x));
      tab->dvdt.emplace(std::move(t), std::move(dv));
      if (table_) retired_.push_back(table_);
      table_ = tab;
      return *table_;
    }
    R_max = c + 4.0 * (R_max - c);
    if (R_max > model_.entry().radial->max_radius) throw DomainError("probe radius beyond the radial range");
  }
}

double RadialProbeSpace::geodesic_radius(const ProbePoint& p) const {
  if (p.size() != 4) throw std::invalid_argument("probe point needs 4 coordinates");
  const double c = model_.center();
  if (!(p[0] > c)) throw DomainError("probe point on or inside the center orbit");
  const Table* tab = &table(0.0);
  while (p[0] > tab->R_max) tab = &table(2.0 * tab->t_max);
  if (p[0] <= tab->R.front()) return 0.0;
  return (*tab->t_of_R)(p[0]);
}

ProbePoint RadialProbeSpace::point_at_t(double t) const {
  const Table& tab = table(t);
  const double R = t <= tab.t.front() ? tab.R.front() : std::max(tab.R.front(), (*tab.R_of_t)(t));
  const Point4 q = model_.entry().reference_point(R);
  return {q[0], q[1], q[2], q[3]};
}

ProbePoint RadialProbeSpace::origin() const { return point_at_t(0.0); }

double RadialProbeSpace::field_at_t(ProbeField f, double t) const {
  const Table& tab = table(t);
  const double tt = std::max(t, tab.t.front());
  if (f == ProbeField::norm_X) return t <= 0.0 ? 0.0 : (*tab.x)(tt);
  return (*tab.rm)(tt);
}

double RadialProbeSpace::value(ProbeField f, const ProbePoint& p) const {
  return field_at_t(f, geodesic_radius(p));
}

SupInf RadialProbeSpace::sup_inf(ProbeField f, const ProbePoint& p, double r, const Excision* ex) const {
  const double tp = geodesic_radius(p);
  double lo = std::max(0.0, tp - r);
  const double hi = tp + r;
  if (ex) {
    if (distance(ex->center, origin()) > 1e-12 * std::max(1.0, ex->radius)) {
      throw std::invalid_argument("radial spaces only excise balls about the center orbit");
    }
    lo = std::max(lo, ex->radius);
    if (lo >= hi) throw DomainError("ball lies inside the excised region");
  }
  const Table& tab = table(hi);
  SupInf out;
  out.sup = std::max(field_at_t(f, lo), field_at_t(f, hi));
  out.inf = std::min(field_at_t(f, lo), field_at_t(f, hi));
  double outer_sup = out.sup, outer_inf = out.inf;
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    const double v = (f == ProbeField::norm_rm) ? (*tab.rm)(tab.t[i]) : (*tab.x)(tab.t[i]);
    const bool inside = tab.t[i] > lo && tab.t[i] < hi;
    const bool adjacent = (i + 1 < tab.t.size() && tab.t[i + 1] > lo && tab.t[i] <= lo) ||
                          (i > 0 && tab.t[i - 1] < hi && tab.t[i] >= hi);
    if (inside) {
      out.sup = std::max(out.sup, v);
      out.inf = std::min(out.inf, v);
    }
    if (inside || adjacent) {
      outer_sup = std::max(outer_sup, v);
      outer_inf = std::min(outer_inf, v);
    }
  }
  // The zero set sits on the center orbit.
  if (f == ProbeField::norm_X && lo <= 0.0 && !model_.entry().zero_set.empty()) out.inf = outer_inf = 0.0;
  out.sup_bracket = {out.sup, outer_sup};
  out.inf_bracket = {std::max(0.0, outer_inf), out.inf};
  return out;
}

double RadialProbeSpace::cap_fraction(double t, double tp, double r) const { return cap_model(4, t, tp, r); }

double RadialProbeSpace::ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p,
                                   double r) const {
  const double tp = geodesic_radius(p);
  const double lo = std::max(0.0, tp - r), hi = tp + r;
  const Table& tab = table(hi);
  const GaussRule rule = gauss_legendre_unit(8);
  constexpr int panels = 16;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + (hi - lo) * k / panels, b = lo + (hi - lo) * (k + 1) / panels;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = a + (b - a) * rule.nodes[q];
      const double w = (b - a) * rule.weights[q] * cap_fraction(t, tp, r) * (*tab.dvdt)(std::max(t, tab.t.front()));
      num += w * std::abs(f(point_at_t(t)));
      den += w;
    }
  }
  return num / den;
}

double RadialProbeSpace::ball_volume(const ProbePoint& p, double r) const {
  const double tp = geodesic_radius(p);
  const double lo = std::max(0.0, tp - r), hi = tp + r;
  const Table& tab = table(hi);
  const GaussRule rule = gauss_legendre_unit(8);
  constexpr int panels = 16;
  double vol = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + (hi - lo) * k / panels, b = lo + (hi - lo) * (k + 1) / panels;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = a + (b - a) * rule.nodes[q];
      vol += (b - a) * rule.weights[q] * cap_fraction(t, tp, r) * (*tab.dvdt)(std::max(t, tab.t.front()));
    }
  }
  return vol;
}

double RadialProbeSpace::distance(const ProbePoint& a, const ProbePoint& b) const {
  // Exact when one argument lies on the center orbit.
  auto t_of = [this](const ProbePoint& q) { return q[0] <= model_.center() ? 0.0 : geodesic_radius(q); };
  const double ta = t_of(a), tb = t_of(b);
  if (ta != 0.0 && tb != 0.0) throw std::invalid_argument("radial distance needs one point on the center orbit");
  return std::abs(ta - tb);
}

std::vector<ProbePoint> RadialProbeSpace::sphere_points(const ProbePoint& center, double d, int) const {
  if (distance(center, origin()) > 0.0) throw std::invalid_argument("radial scans start at the center orbit");
  return {point_at_t(d)};  // orbits are homogeneous: one representative suffices
}

std::unique_ptr<ProbeSpace> make_probe_space(const CatalogEntry& entry, const ProbeConfig& cfg) {
  const bool euclidean = (entry.geometry4 && entry.geometry4->euclidean_coordinates) ||
                         (entry.geometry2 && entry.geometry2->euclidean_coordinates);
  if (euclidean) return std::make_unique<EuclideanProbeSpace>(entry, cfg);
  if (entry.radial && entry.radial->homogeneous_orbits) return std::make_unique<RadialProbeSpace>(entry, cfg);
  throw std::invalid_argument("no probe space for '" + entry.name + "'");
}

// ---------------------------------------------------------------------------

RadiusResult curvature_radius(const ProbeSpace& space, const ProbePoint& p, double s, const ProbeConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("scale s must be positive");
  auto ok = [&](double r) { return space.sup_inf(ProbeField::norm_rm, p, r).sup < 1.0 / (r * r); };
  RadiusResult out;
  if (ok(s)) {
    out.value = s;
    out.bracket = {s, s};
    out.capped = true;
    return out;
  }
  double lo = 0.0, hi = s;
  while (hi - lo > cfg.bracket_tol * s) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  out.value = lo;
  out.bracket = {lo, hi};
  return out;
}

namespace {

double normalized_energy(const ProbeSpace& space, const ProbePoint& p, double r) {
  auto rm2 = [&space](const ProbePoint& q) {
    const double v = space.value(ProbeField::norm_rm, q);
    return v * v;
  };
  return std::pow(r, 4) * space.ball_mean(rm2, p, r);
}

}  // namespace

RadiusResult energy_radius(const ProbeSpace& space, const ProbePoint& p, double s, const ProbeConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("scale s must be positive");
  auto ok = [&](double r) { return normalized_energy(space, p, r) <= cfg.epsilon0; };
  RadiusResult out;
  // Scan a geometric ladder downward from s; refine between the last good and first bad rung.
  const int n = std::max(2, cfg.n_radial);
  const double q = std::pow(1e-4, 1.0 / n);
  double bad = -1.0, good = 0.0;
  double r = s;
  for (int k = 0; k <= n; ++k, r *= q) {
    if (ok(r)) {
      good = r;
      break;
    }
    bad = r;
  }
  if (bad < 0.0) {
    out.value = s;
    out.bracket = {s, s};
    out.capped = true;
    return out;
  }
  if (good == 0.0) {
    out.value = 0.0;
    out.bracket = {0.0, bad};
    return out;
  }
  double lo = good, hi = bad;
  while (hi - lo > cfg.bracket_tol * s) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  out.value = lo;
  out.bracket = {lo, hi};
  return out;
}

double maximal_function(const ProbeSpace& space, const std::function<double(const ProbePoint&)>& f,
                        const ProbePoint& p, double s, const ProbeConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("scale s must be positive");
  double best = std::abs(f(p));
  // Fixed absolute ladder r_k = 2^(k/4) so that larger s only adds rungs.
  const int per_octave = 4;
  const int kmin = static_cast<int>(std::floor(per_octave * std::log2(s))) - cfg.n_radial;
  for (int k = kmin;; ++k) {
    const double r = std::exp2(static_cast<double>(k) / per_octave);
    if (r >= s) break;
    best = std::max(best, space.ball_mean(f, p, r));
  }
  best = std::max(best, space.ball_mean(f, p, s * (1.0 - 1e-12)));
  return best;
}

Ratio pointwise_variation(const ProbeSpace& space, const ProbePoint& p, const ProbeConfig& cfg) {
  const RadiusResult r = curvature_radius(space, p, cfg.s_cap, cfg);
  return make_ratio(space.sup_inf(ProbeField::norm_X, p, r.value));
}

Ratio excised_variation(const ProbeSpace& space, const Excision& omega, double s, const ProbeConfig& cfg,
                        double* argmax_distance) {
  Ratio worst;
  worst.value = 0.0;
  const int n = std::max(2, cfg.n_radial);
  for (int k = 0; k <= n; ++k) {
    const double d = omega.radius + 4.0 * s * k / n;
    for (const auto& p : space.sphere_points(omega.center, d, cfg.n_angular)) {
      const RadiusResult r = curvature_radius(space, p, s, cfg);
      if (!(r.value > 0.0)) continue;
      const Ratio ratio = make_ratio(space.sup_inf(ProbeField::norm_X, p, r.value, &omega));
      if (ratio.infinite || ratio.value > worst.value) {
        worst = ratio;
        if (argmax_distance) *argmax_distance = d;
      }
      if (worst.infinite) return worst;
    }
  }
  return worst;
}

VariationResult local_variation(const ProbeSpace& space, const ProbePoint& p, const ProbeConfig& cfg) {
  VariationResult out;
  out.r_curv = curvature_radius(space, p, cfg.s_cap, cfg).value;
  out.m_x = make_ratio(space.sup_inf(ProbeField::norm_X, p, out.r_curv));
  if (cfg.excised_domain) {
    out.m_x_omega_s = excised_variation(space, *cfg.excised_domain, cfg.s_cap, cfg, &out.worst_point_distance);
  }
  const ProbePoint o = space.origin();
  for (int k = 0; k < cfg.ladder_rungs; ++k) {
    const double s = cfg.s_cap * std::exp2(k);
    out.m_x_infty_estimate.emplace_back(s, excised_variation(space, Excision{o, s}, s, cfg));
  }
  return out;
}

WeakEstimateReport weak_estimate_check(const ProbeSpace& space, const ProbePoint& p, double s, int k,
                                       const ProbeConfig& cfg) {
  if (k < 1) throw std::invalid_argument("exponent k must be positive");
  WeakEstimateReport rep;
  rep.k = k;
  rep.s = s;
  rep.r_curv = curvature_radius(space, p, s, cfg).value;
  auto rm2 = [&space](const ProbePoint& q) {
    const double v = space.value(ProbeField::norm_rm, q);
    return v * v;
  };
  rep.maximal = maximal_function(space, rm2, p, s, cfg);
  rep.lhs = std::pow(rep.r_curv, -k);
  rep.rhs = std::max(std::pow(2.0, k) * std::pow(s, -k), std::pow(16.0 / cfg.epsilon0 * rep.maximal, k / 4.0));
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  rep.margin = rep.rhs / rep.lhs;
  return rep;
}

}  // namespace transgress
