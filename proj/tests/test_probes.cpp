#include "transgress/probes.hpp"
#include "transgress/theorems.hpp"

#include <doctest.h>

using namespace transgress;

namespace {

// R^4 carrying a fictitious curvature field of constant norm kappa and |X| = 1.
class ConstantSpace : public ProbeSpace {
 public:
  explicit ConstantSpace(double kappa) : kappa_(kappa) {}
  int dimension() const override { return 4; }
  double value(ProbeField f, const ProbePoint&) const override { return f == ProbeField::norm_rm ? kappa_ : 1.0; }
  SupInf sup_inf(ProbeField f, const ProbePoint& p, double, const Excision*) const override {
    const double v = value(f, p);
    return {v, v, {v, v}, {v, v}};
  }
  double ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p, double) const override {
    return std::abs(f(p));
  }
  double ball_volume(const ProbePoint&, double r) const override { return 0.5 * kPi * kPi * std::pow(r, 4); }
  double distance(const ProbePoint& a, const ProbePoint& b) const override {
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d2);
  }
  std::vector<ProbePoint> sphere_points(const ProbePoint& c, double d, int) const override {
    return {{c[0] + d, c[1], c[2], c[3]}};
  }
  ProbePoint origin() const override { return ProbePoint(4, 0.0); }

 private:
  double kappa_;
};

ProbePoint as_probe(const Point4& x) { return ProbePoint(x.begin(), x.end()); }

// max over d in [1, 5] of (d + 1) / max(d − 1, 1): ball of radius 1 about a point at
// distance d, with the unit ball removed, for |X| = |x|.
double plane_oracle() {
  double best = 0.0;
  for (int k = 0; k <= 4000; ++k) {
    const double d = 1.0 + 4.0 * k / 4000.0;
    best = std::max(best, (d + 1.0) / std::max(d - 1.0, 1.0));
  }
  return best;
}

}  // namespace

TEST_CASE("constant curvature: radii in closed form") {
  ProbeConfig cfg;
  const ProbePoint p(4, 0.0);
  for (double kappa : {0.01, 0.25, 4.0, 100.0}) {
    const ConstantSpace sp(kappa);
    for (double s : {0.5, 3.0, 50.0}) {
      INFO("kappa=" << kappa << " s=" << s);
      const RadiusResult rc = curvature_radius(sp, p, s, cfg);
      const double rc_oracle = std::min(s, 1.0 / std::sqrt(kappa));
      CHECK(rc.value == doctest::Approx(rc_oracle).epsilon(1e-8));
      CHECK(rc.bracket.lower <= rc_oracle * (1 + 1e-12));
      CHECK(rc.bracket.upper >= rc_oracle * (1 - 1e-12));
      CHECK(rc.capped == (s < 1.0 / std::sqrt(kappa)));
      const RadiusResult rho = energy_radius(sp, p, s, cfg);
      CHECK(rho.value == doctest::Approx(std::min(s, std::pow(cfg.epsilon0, 0.25) / std::sqrt(kappa))).epsilon(1e-8));
      CHECK(maximal_function(sp, [&](const ProbePoint& q) { return std::pow(sp.value(ProbeField::norm_rm, q), 2); }, p, s,
                             cfg) == doctest::Approx(kappa * kappa));
    }
  }
}

TEST_CASE("weak estimate holds for every exponent") {
  ProbeConfig cfg;
  for (double kappa : {0.01, 4.0}) {
    const ConstantSpace sp(kappa);
    for (int k : {1, 3, 4}) {
      const WeakEstimateReport w = weak_estimate_check(sp, ProbePoint(4, 0.0), 10.0, k, cfg);
      CHECK(w.pass);
      CHECK(w.lhs == doctest::Approx(std::pow(std::min(10.0, 1.0 / std::sqrt(kappa)), -k)).epsilon(1e-8));
      CHECK(w.margin >= 1.0);
    }
  }
  for (const char* name : {"eguchi-hanson", "taub-nut"}) {
    const CatalogEntry e = catalog_metric(name);
    const auto sp = make_probe_space(e, cfg);
    for (double R : {1.1, 2.0, 6.0})
      for (int k : {1, 3, 4}) {
        INFO(name << " R=" << R << " k=" << k);
        CHECK(weak_estimate_check(*sp, as_probe(e.reference_point(R)), 5.0, k, cfg).pass);
      }
  }
  CHECK_THROWS_AS(weak_estimate_check(ConstantSpace(1.0), ProbePoint(4, 0.0), 1.0, 0, cfg), std::invalid_argument);
}

TEST_CASE("two-dimensional rotation: excised variation at unit scale is 3") {
  ProbeConfig cfg;
  const auto sp = make_probe_space(catalog_metric("flat-r2-rot"), cfg);
  double where = 0.0;
  const Ratio m = excised_variation(*sp, Excision{sp->origin(), 1.0}, 1.0, cfg, &where);
  const double oracle = plane_oracle();
  CHECK(oracle == doctest::Approx(3.0));
  CHECK_FALSE(m.infinite);
  CHECK(m.value == doctest::Approx(oracle).epsilon(1e-3));
  CHECK(m.bracket.lower <= oracle + 1e-12);
  CHECK(m.bracket.upper >= oracle - 1e-12);
  CHECK(where == doctest::Approx(2.0));
}

TEST_CASE("flat two-plane rotation: excised variation bracket contains 3") {
  ProbeConfig cfg;
  const auto sp = make_probe_space(catalog_metric("flat-r4-rot2"), cfg);
  const Ratio m = excised_variation(*sp, Excision{sp->origin(), 1.0}, 1.0, cfg);
  CHECK(m.bracket.lower <= 3.0);
  CHECK(m.bracket.upper >= 3.0);
  CHECK(m.value == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("pointwise variation is infinite when the ball meets the zero set") {
  ProbeConfig cfg;
  const auto sp = make_probe_space(catalog_metric("flat-r2-rot"), cfg);
  const Ratio m = pointwise_variation(*sp, {0.5, 0.5}, cfg);
  CHECK(m.infinite);
  CHECK(std::isinf(m.value));
  const auto plane = make_probe_space(catalog_metric("flat-r4-rot1"), cfg);
  CHECK(pointwise_variation(*plane, {3.0, 0.0, 20.0, 0.0}, cfg).infinite);
}

TEST_CASE("maximal function on flat space") {
  ProbeConfig cfg;
  const auto sp = make_probe_space(catalog_metric("flat-r4-rot2"), cfg);
  const ProbePoint o = sp->origin();
  CHECK(maximal_function(*sp, [](const ProbePoint&) { return 1.0; }, o, 2.0, cfg) == doctest::Approx(1.0));
  // Mean of |x|² over a 4-ball of radius s is (2/3) s², increasing in s.
  auto r2 = [](const ProbePoint& q) { return q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]; };
  for (double s : {0.5, 1.0, 3.0}) CHECK(maximal_function(*sp, r2, o, s, cfg) == doctest::Approx(2.0 / 3.0 * s * s).epsilon(1e-2));
  // At the peak of a bump the r -> 0 limit dominates the falling ball means.
  auto bump = [](const ProbePoint& q) { return std::exp(-(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3])); };
  CHECK(maximal_function(*sp, bump, o, 1.0, cfg) == doctest::Approx(1.0));
  CHECK_THROWS_AS(maximal_function(*sp, bump, o, 0.0, cfg), std::invalid_argument);
}

TEST_CASE("curvature radius scales with the metric") {
  ProbeConfig cfg;
  for (const char* name : {"eguchi-hanson", "taub-nut"}) {
    const CatalogEntry e = catalog_metric(name);
    const auto base = make_probe_space(e, cfg);
    const auto big = make_probe_space(e.scaled(2.0), cfg);
    for (double R : {1.05, 1.5, 4.0}) {
      INFO(name << " R=" << R);
      const ProbePoint p = as_probe(e.reference_point(R));
      const double a = curvature_radius(*base, p, 10.0, cfg).value;
      const double b = curvature_radius(*big, p, 20.0, cfg).value;
      CHECK(a > 0.0);
      CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-6));
      const double ra = energy_radius(*base, p, 10.0, cfg).value;
      const double rb = energy_radius(*big, p, 20.0, cfg).value;
      CHECK(rb == doctest::Approx(2.0 * ra).epsilon(1e-6));
    }
  }
}

TEST_CASE("curvature radius definition holds at the returned radius") {
  ProbeConfig cfg;
  const CatalogEntry e = catalog_metric("eguchi-hanson");
  const auto sp = make_probe_space(e, cfg);
  for (double R : {1.05, 2.0, 5.0}) {
    const ProbePoint p = as_probe(e.reference_point(R));
    const RadiusResult r = curvature_radius(*sp, p, 10.0, cfg);
    CHECK(sp->sup_inf(ProbeField::norm_rm, p, r.value).sup < 1.0 / (r.value * r.value));
    if (!r.capped) CHECK(sp->sup_inf(ProbeField::norm_rm, p, r.bracket.upper * 1.001).sup >= 1.0 / std::pow(r.bracket.upper * 1.001, 2));
    const RadiusResult rho = energy_radius(*sp, p, 10.0, cfg);
    CHECK(rho.value <= 10.0);
    CHECK(rho.value > 0.0);
  }
}

TEST_CASE("sup over inf of |X| is at least one") {
  ProbeConfig cfg;
  for (const char* name : {"eguchi-hanson", "taub-nut", "flat-r4-rot2"}) {
    const CatalogEntry e = catalog_metric(name);
    const auto sp = make_probe_space(e, cfg);
    for (const Point4& x : sample_points(e, 10, 5)) {
      const Ratio m = pointwise_variation(*sp, as_probe(x), cfg);
      INFO(name);
      CHECK(m.value >= 1.0);
      CHECK(m.bracket.lower <= m.value);
      CHECK(m.bracket.upper >= m.value);
    }
  }
}

TEST_CASE("asymptotic variation sequences") {
  ProbeConfig cfg;
  cfg.ladder_rungs = 4;
  cfg.n_angular = 4;
  // Eguchi–Hanson is asymptotically a flat cone with |X| ~ r/2: the sequence rises toward 3.
  const auto eh = make_probe_space(catalog_metric("eguchi-hanson"), cfg);
  const VariationResult a = local_variation(*eh, eh->origin(), cfg);
  REQUIRE(a.m_x_infty_estimate.size() == 4);
  for (std::size_t k = 1; k < 4; ++k) CHECK(a.m_x_infty_estimate[k].second.value > a.m_x_infty_estimate[k - 1].second.value);
  CHECK(a.m_x_infty_estimate.back().second.value == doctest::Approx(3.0).epsilon(0.02));
  // Taub–NUT has bounded circle fibres: the sequence falls toward 1.
  const auto tn = make_probe_space(catalog_metric("taub-nut"), cfg);
  const VariationResult b = local_variation(*tn, tn->origin(), cfg);
  for (std::size_t k = 1; k < 4; ++k) CHECK(b.m_x_infty_estimate[k].second.value < b.m_x_infty_estimate[k - 1].second.value);
  CHECK(b.m_x_infty_estimate.back().second.value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("probe errors") {
  ProbeConfig cfg;
  const ConstantSpace sp(1.0);
  CHECK_THROWS_AS(curvature_radius(sp, ProbePoint(4, 0.0), -1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(energy_radius(sp, ProbePoint(4, 0.0), 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(EuclideanProbeSpace(catalog_metric("eguchi-hanson"), cfg), std::invalid_argument);
  const auto flat = make_probe_space(catalog_metric("flat-r4-rot2"), cfg);
  const Excision big{flat->origin(), 100.0};
  CHECK_THROWS_AS(flat->sup_inf(ProbeField::norm_X, flat->origin(), 1.0, &big), DomainError);
}
