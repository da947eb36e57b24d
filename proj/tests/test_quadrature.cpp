#include "transgress/quadrature.hpp"

#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <sstream>

using namespace transgress;

namespace {

constexpr double k8Pi2 = 8.0 * kPi * kPi;

}  // namespace

TEST_CASE("flat ball volume, radius and energy") {
  const RadialModel m(catalog_metric("flat-r4-rot2"));
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(m.coordinate_radius(t) == doctest::Approx(t).epsilon(1e-12));
    CHECK(m.geodesic_radius(t).value == doctest::Approx(t).epsilon(1e-12));
    CHECK(m.ball_volume(t).value == doctest::Approx(0.5 * kPi * kPi * std::pow(t, 4)).epsilon(1e-12));
    CHECK(m.energy_in_ball(t).value == 0.0);
  }
}

TEST_CASE("flat two-plane rotation: boundary integral is -1 on every sphere") {
  // At (R, 0, 0, 0): X♭ = R dy, dX♭ = 2(dx∧dy + dz∧dw), so X♭∧dX♭ = 2R dσ and
  // TP = −(8/32π²) R^-4 · 2R dσ integrates to −(1/4π² R^4) · 4π² R^4 = −1.
  const CatalogEntry e = catalog_metric("flat-r4-rot2");
  const RadialModel m(e);
  const ThreeFormField tp = transgression_field(FormKind::euler, e.geom().chart, e.geom().killing);
  for (double R : {0.1, 1.0, 2.0, 5.0, 40.0}) CHECK(m.sphere_integral(tp, R) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Eguchi-Hanson volume and energy closed forms") {
  const double a = 1.4;
  const RadialModel m(catalog_metric("eguchi-hanson", {{"a", a}}));
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double R : {1.5, 2.5, 7.0}) {
    const double t = m.geodesic_radius(R).value;
    // t = ∫ r² dr / √(r⁴ − a⁴); with r = a + u², r⁴ − a⁴ = u²(r + a)(r² + a²).
    const double oracle_t = ts.integrate(
        [a](double u) {
          const double r = a + u * u;
          return 2.0 * r * r / std::sqrt((r + a) * (r * r + a * a));
        },
        0.0, std::sqrt(R - a));
    CHECK(t == doctest::Approx(oracle_t).epsilon(1e-9));
    CHECK(m.coordinate_radius(t) == doctest::Approx(R).epsilon(1e-10));
    // dVol/dr = π² r³ and |Rm|² = 384 a⁸ r^-12.
    CHECK(m.ball_volume(t).value == doctest::Approx(0.25 * kPi * kPi * (std::pow(R, 4) - std::pow(a, 4))).epsilon(1e-10));
    CHECK(m.energy_in_ball(t).value / k8Pi2 == doctest::Approx(1.5 * (1.0 - std::pow(a / R, 8))).epsilon(1e-10));
  }
}

TEST_CASE("Eguchi-Hanson boundary term tends to -1/2") {
  const CatalogEntry e = catalog_metric("eguchi-hanson");
  const RadialModel m(e);
  const ThreeFormField tp = transgression_field(FormKind::euler, e.geom().chart, e.geom().killing);
  // E(R)/8π² = 2 + ∮ gives ∮ = −1/2 − 3/2 (a/R)⁸.
  for (double R : {1.2, 2.0, 10.0}) CHECK(m.sphere_integral(tp, R) == doctest::Approx(-0.5 - 1.5 * std::pow(R, -8)).epsilon(1e-10));
}

TEST_CASE("Taub-NUT energy at two resolutions") {
  const CatalogEntry e = catalog_metric("taub-nut");
  QuadratureConfig coarse;
  coarse.panels = 32;
  const RadialModel fine(e), rough(e, coarse);
  for (double t : {1.0, 10.0, 200.0}) {
    const double a = fine.energy_in_ball(t).value, b = rough.energy_in_ball(t).value;
    CHECK(std::abs(a - b) < 1e-3 * a);
    CHECK(fine.energy_in_ball(t).error < 1e-3 * a);
  }
  CHECK(fine.energy_in_ball(400.0).value / k8Pi2 == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Taub-NUT boundary term decays") {
  const CatalogEntry e = catalog_metric("taub-nut");
  const RadialModel m(e);
  const ThreeFormField tp = transgression_field(FormKind::euler, e.geom().chart, e.geom().killing);
  double last = 1.0;
  for (double R : {1.0, 4.0, 16.0, 64.0}) {
    const double b = std::abs(m.sphere_integral(tp, R));
    CHECK(b < last);
    last = b;
  }
  CHECK(last < 1e-3);
}

TEST_CASE("scaled metric scales volumes and leaves energies") {
  const CatalogEntry e = catalog_metric("eguchi-hanson");
  const RadialModel base(e), big(e.scaled(2.0));
  CHECK(big.ball_volume(6.0).value == doctest::Approx(16.0 * base.ball_volume(3.0).value).epsilon(1e-10));
  CHECK(big.energy_in_ball(6.0).value == doctest::Approx(base.energy_in_ball(3.0).value).epsilon(1e-10));
}

TEST_CASE("radial model errors") {
  CHECK_THROWS_AS(RadialModel(catalog_metric("flat-r2-rot")), std::invalid_argument);
  QuadratureConfig bad;
  bad.panels = 1;
  CHECK_THROWS_AS(RadialModel(catalog_metric("taub-nut"), bad), std::invalid_argument);
  const RadialModel m(catalog_metric("eguchi-hanson"));
  CHECK_THROWS_AS(m.coordinate_radius(-1.0), DomainError);
  CHECK_THROWS_AS(m.geodesic_radius(0.5), DomainError);
  CHECK_THROWS_AS(m.coordinate_radius(1e7), DomainError);
}

TEST_CASE("smooth cutoff") {
  const CutoffProfile c = cutoff_profile(2.0, 5.0);
  CHECK(c.value(1.0) == 1.0);
  CHECK(c.value(2.0) == 1.0);
  CHECK(c.value(5.0) == 0.0);
  CHECK(c.value(3.5) == doctest::Approx(0.5));
  double last = 1.0;
  for (int k = 0; k <= 300; ++k) {
    const double x = 2.0 + 3.0 * k / 300.0;
    CHECK(c.value(x) <= last);
    last = c.value(x);
    if (x > 2.01 && x < 4.99) {
      const double fd = (c.value(x + 1e-6) - c.value(x - 1e-6)) / 2e-6;
      CHECK(c.derivative(x) == doctest::Approx(fd).epsilon(1e-5).scale(1e-3));
    }
  }
  CHECK(c.derivative_bound == doctest::Approx(2.0 / 3.0));
  CHECK(c.sampled_max_slope <= c.derivative_bound * (1.0 + 1e-12));
  CHECK(c.sampled_max_slope == doctest::Approx(c.derivative_bound).epsilon(1e-6));
  CHECK_THROWS_AS(cutoff_profile(3.0, 2.0), std::invalid_argument);
}

TEST_CASE("radial profile CSV") {
  const RadialModel m(catalog_metric("flat-r4-rot2"));
  const RadialProfile p = m.profile(2.0, 4);
  REQUIRE(p.samples.size() == 4);
  CHECK(p.samples.back().geodesic_r == 2.0);
  CHECK(p.samples.back().shell_volume == doctest::Approx(2.0 * kPi * kPi * 8.0).epsilon(1e-12));
  std::ostringstream os;
  p.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("r,geodesic_r,shell_volume,shell_energy\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK_THROWS_AS(m.profile(2.0, 1), std::invalid_argument);
}
