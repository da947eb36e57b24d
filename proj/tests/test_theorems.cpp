#include "transgress/theorems.hpp"

#include <doctest.h>

using namespace transgress;

namespace {

const ClosureKindReport& kind(const ClosureReport& r, FormKind k) {
  for (const auto& x : r.kinds)
    if (x.kind == k) return x;
  throw std::logic_error("missing form kind");
}

}  // namespace

TEST_CASE("closure: flat two-plane rotation, extrapolated residual") {
  const ClosureReport r = verify_closure(catalog_metric("flat-r4-rot2"), 40, 3e-4, 1);
  REQUIRE(r.kinds.size() == 2);
  for (const auto& k : r.kinds) {
    CHECK(k.max_residual_extrapolated < 1e-8);
    CHECK(k.max_residual_half < k.max_residual_h);
  }
  // Flat metric: the Euler density vanishes identically.
  CHECK(kind(r, FormKind::euler).max_density == 0.0);
}

TEST_CASE("closure: second-order convergence on curved metrics") {
  for (const char* name : {"eguchi-hanson", "taub-nut"}) {
    const ClosureReport r = verify_closure(catalog_metric(name), 30, 1e-3, 2);
    for (const auto& k : r.kinds) {
      INFO(name << " " << to_string(k.kind));
      CHECK(k.max_residual_extrapolated < 1e-6);
      if (k.order_meaningful) CHECK(k.order == doctest::Approx(2.0).epsilon(0.1));
    }
    // The Euler density does not vanish, so its order is always measurable.
    CHECK(kind(r, FormKind::euler).order_meaningful);
  }
}

TEST_CASE("balance on Eguchi-Hanson balls") {
  const double a = 1.0;
  const CatalogEntry e = catalog_metric("eguchi-hanson");
  const RadialModel m(e);
  std::vector<double> s_list;
  for (double R : {1.3, 2.0, 5.0}) s_list.push_back(m.geodesic_radius(R).value);
  const BalanceReport b = verify_balance(e, s_list);
  REQUIRE(b.rows.size() == 3);
  for (const auto& row : b.rows) {
    CHECK(row.chi_inside == 2);
    CHECK(row.energy_over_8pi2 == doctest::Approx(1.5 * (1.0 - std::pow(a / row.R, 8))).epsilon(1e-9));
    CHECK(row.boundary == doctest::Approx(-0.5 - 1.5 * std::pow(a / row.R, 8)).epsilon(1e-9));
    CHECK(std::abs(row.residual) < 1e-9);
  }
  CHECK(b.max_residual < 1e-9);
}

TEST_CASE("balance on Taub-NUT and flat balls") {
  for (const char* name : {"taub-nut", "flat-r4-rot2"}) {
    const BalanceReport b = verify_balance(catalog_metric(name), {0.5, 2.0, 8.0});
    INFO(name);
    for (const auto& row : b.rows) CHECK(row.chi_inside == 1);
    CHECK(b.max_residual < 1e-6);
  }
  CHECK_THROWS_AS(verify_balance(catalog_metric("flat-r4-rot1"), {1.0}), DegenerateError);
  CHECK_THROWS_AS(verify_balance(catalog_metric("taub-nut"), {-1.0}), DomainError);
}

TEST_CASE("Richardson extrapolation in 1/s") {
  const std::vector<double> s{1.0, 2.0, 4.0, 8.0};
  std::vector<double> v;
  for (double x : s) v.push_back(3.0 + 2.0 / x + 5.0 / (x * x));
  const Extrapolation e = richardson_in_s(s, v, 1e-10);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(e.change < 1e-10);
  CHECK(e.converged);
  // A cubic in 1/s needs all four rungs, so dropping one changes the estimate.
  std::vector<double> c;
  for (double x : s) c.push_back(1.0 + 1.0 / (x * x * x));
  const Extrapolation f = richardson_in_s(s, c, 1e-10);
  CHECK(f.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.change > 1e-3);
  CHECK_FALSE(f.converged);
}

TEST_CASE("energy identity in the limit") {
  struct Case {
    const char* name;
    double energy;
    double avr_ratio;
  };
  // Eguchi–Hanson: 3/2 = 2 − 1/2. Taub–NUT: 1 = 1 − 0. Flat: 0 = 1 − 1.
  for (const Case& c : {Case{"eguchi-hanson", 1.5, 0.5}, Case{"taub-nut", 1.0, 0.0}, Case{"flat-r4-rot2", 0.0, 1.0}}) {
    const Thm3Report r = verify_thm3(catalog_metric(c.name));
    INFO(c.name);
    CHECK(r.pass);
    CHECK(r.energy.converged);
    CHECK(r.avr.converged);
    CHECK(r.lhs == doctest::Approx(c.energy).epsilon(1e-3).scale(1.0));
    CHECK(r.avr.value / (kPi * kPi / 2.0) == doctest::Approx(c.avr_ratio).epsilon(1e-3).scale(1.0));
    CHECK(std::abs(r.lhs - r.rhs) < r.tol);
  }
  const Thm3Report scaled = verify_thm3(catalog_metric("eguchi-hanson").scaled(3.0));
  CHECK(scaled.lhs == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("eta sequence") {
  const EtaReport r = eta_sequence(200);
  const double q = std::pow(9.0 / 11.0, 0.25);
  CHECK(r.q == doctest::Approx(q).epsilon(1e-15));
  REQUIRE(r.eta.size() == 200);
  CHECK(r.eta[0] == doctest::Approx((1.0 - q) * q).epsilon(1e-15));
  for (std::size_t i = 1; i < r.eta.size(); ++i) {
    CHECK(r.eta[i] < r.eta[i - 1]);
    CHECK(r.eta[i] / r.eta[i - 1] == doctest::Approx(q).epsilon(1e-14));
  }
  CHECK(r.sum == doctest::Approx(q * (1.0 - std::pow(q, 200))).epsilon(1e-14));
  CHECK(r.sum == doctest::Approx(r.sum_closed_form).epsilon(1e-14));
  CHECK(r.sum < q);
  CHECK(r.infinite_sum == doctest::Approx(q).epsilon(1e-15));
  // The geometric series from index 1 sums to q, strictly below 1.
  CHECK(std::abs(r.infinite_sum - 1.0) > 0.04);
  CHECK(r.weighted_ratio == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  double last = 0.0;
  for (double w : r.weighted_partial) {
    CHECK(w > last);
    CHECK(w < r.weighted_bound);
    last = w;
  }
  CHECK(r.weighted_bound == doctest::Approx(12.0 * (11.0 / 12.0) / std::pow(1.0 - q, 4)).epsilon(1e-12));
  const EtaReport zero = eta_sequence(10, 0);
  CHECK(zero.infinite_sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(eta_sequence(0), std::invalid_argument);
}

TEST_CASE("energy bound with measured constant") {
  const Thm2Report flat = thm2_bound(catalog_metric("flat-r4-rot2"), 2.0, 1.0);
  CHECK(flat.lhs == 0.0);
  CHECK(flat.measured_C == 0.0);
  CHECK(flat.annulus_volume == doctest::Approx(0.5 * kPi * kPi * (81.0 - 16.0)).epsilon(1e-10));
  CHECK(flat.annulus_term == doctest::Approx(flat.annulus_volume));
  CHECK(std::abs(flat.cutoff_residual) < 1e-9);

  const Thm2Report eh = thm2_bound(catalog_metric("eguchi-hanson"), 2.0, 1.0);
  CHECK(eh.chi == 2);
  CHECK(eh.lhs < 1.5);
  CHECK(eh.measured_C == 0.0);
  CHECK(std::abs(eh.cutoff_residual) < 1e-9);
  CHECK(eh.cutoff_energy > eh.lhs);
  CHECK(eh.first_estimate_integral > 0.0);
  CHECK(eh.cutoff_sampled_slope <= eh.cutoff_slope_bound * (1.0 + 1e-12));
  CHECK_FALSE(eh.variation.infinite);

  // Taub–NUT energy in large balls approaches χ = 1 from below.
  double last = 0.0;
  for (double t : {5.0, 50.0, 400.0}) {
    const Thm2Report tn = thm2_bound(catalog_metric("taub-nut"), t, 1.0);
    CHECK(tn.lhs > last);
    CHECK(tn.lhs < 1.0);
    CHECK(tn.measured_C == 0.0);
    last = tn.lhs;
  }
  CHECK(last == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("energy bound is stable under quadrature refinement") {
  QuadratureConfig coarse, dense;
  coarse.panels = 32;
  dense.panels = 256;
  const CatalogEntry e = catalog_metric("taub-nut");
  const Thm2Report a = thm2_bound(e, 3.0, 1.0, {}, coarse);
  const Thm2Report b = thm2_bound(e, 3.0, 1.0, {}, dense);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-4));
  CHECK(a.cutoff_energy == doctest::Approx(b.cutoff_energy).epsilon(1e-4));
  CHECK(std::abs(b.cutoff_residual) <= std::abs(a.cutoff_residual) + 1e-9);
}

TEST_CASE("theorem driver errors") {
  CHECK_THROWS_AS(thm2_bound(catalog_metric("taub-nut"), 2.0, -1.0), DomainError);
  CHECK_THROWS_AS(verify_thm3(catalog_metric("flat-r2-rot")), std::invalid_argument);
  CHECK_THROWS_AS(verify_closure(catalog_metric("taub-nut"), 0, 1e-3), std::invalid_argument);
}
