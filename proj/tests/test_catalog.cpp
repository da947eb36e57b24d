#include "transgress/catalog.hpp"

#include <doctest.h>

using namespace transgress;

TEST_CASE("catalog names resolve") {
  const auto names = catalog_names();
  CHECK(names.size() == 5);
  for (const auto& n : names) {
    const CatalogEntry e = catalog_metric(n);
    CHECK(e.name == n);
    CHECK_FALSE(e.zero_set.empty());
    CHECK(e.known.count("chi") == 1);
  }
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog_metric("schwarzschild"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("eguchi-hanson", {{"a", 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("taub-nut", {{"m", -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("eguchi-hanson").scaled(0.0), std::invalid_argument);
}

TEST_CASE("Euler characteristics of the zero sets") {
  CHECK(catalog_metric("eguchi-hanson").total_chi() == 2);
  CHECK(catalog_metric("taub-nut").total_chi() == 1);
  CHECK(catalog_metric("flat-r4-rot2").total_chi() == 1);
  CHECK(catalog_metric("flat-r2-rot").total_chi() == 1);
  const CatalogEntry eh = catalog_metric("eguchi-hanson", {{"a", 2.0}});
  CHECK(eh.chi_inside(1.9) == 0);
  CHECK(eh.chi_inside(2.1) == 2);
}

TEST_CASE("known values carry provenance") {
  const CatalogEntry eh = catalog_metric("eguchi-hanson");
  CHECK(eh.known.at("energy_over_8pi2").value == 1.5);
  CHECK(eh.known.at("energy_over_8pi2").provenance == Provenance::paper);
  CHECK(eh.known.at("avr").value == doctest::Approx(kPi * kPi / 4.0));
  CHECK(eh.known.at("avr_ratio").value == 0.5);
  const CatalogEntry tn = catalog_metric("taub-nut");
  CHECK(tn.known.at("energy_over_8pi2").provenance == Provenance::derived);
  CHECK(tn.known.at("avr").provenance == Provenance::trivial);
  CHECK(std::string(to_string(Provenance::computed)) == "computed");
  const InvariantRow row = known_invariants(catalog_metric("flat-r2-rot"));
  CHECK(row.chi->value == 1.0);
  CHECK_FALSE(row.avr_ratio.has_value());
  CHECK(row.expectations.size() == 1);
}

TEST_CASE("scaling multiplies the metric and keeps coordinates") {
  const CatalogEntry e = catalog_metric("taub-nut");
  const CatalogEntry s = e.scaled(3.0);
  const Point4 p = e.reference_point(1.5);
  CHECK((s.geom().chart.metric(p) - 9.0 * e.geom().chart.metric(p)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.scale == 3.0);
  CHECK(s.scaled(2.0).scale == 6.0);
}

TEST_CASE("adapted coordinates reach the chart") {
  const CatalogEntry flat = catalog_metric("flat-r4-rot2");
  const Point4 q = flat.adapted_point(2.0, 1.0, 0.3, 0.7);
  CHECK(std::hypot(std::hypot(q[0], q[1]), std::hypot(q[2], q[3])) == doctest::Approx(2.0));
  const CatalogEntry eh = catalog_metric("eguchi-hanson");
  const Point4 r = eh.reference_point(1.5);
  CHECK(r[0] == 1.5);
  CHECK(r[1] == doctest::Approx(kPi / 2));
}

TEST_CASE("Killing fields vanish exactly on the declared zero sets") {
  const CatalogEntry tn = catalog_metric("taub-nut");
  CHECK(tn.geom().killing.value({1.0, 1.0, 0.0, 0.0}).norm() > 0.0);
  const CatalogEntry rot1 = catalog_metric("flat-r4-rot1");
  CHECK(rot1.geom().killing.value({0.0, 0.0, 0.3, -0.2}).norm() == 0.0);
  const CatalogEntry rot2 = catalog_metric("flat-r4-rot2");
  CHECK(rot2.geom().killing.value({0.0, 0.0, 0.0, 0.0}).norm() == 0.0);
  CHECK(rot2.geom().killing.value({0.0, 0.0, 0.3, 0.0}).norm() > 0.0);
  // On Eguchi–Hanson |X|² = r²(1 − a⁴/r⁴)/4 vanishes at the bolt.
  const CatalogEntry eh = catalog_metric("eguchi-hanson");
  const Point4 p = eh.reference_point(1.5);
  const Vec4 X = eh.geom().killing.value(p);
  const double n2 = X.dot(eh.geom().chart.metric(p) * X);
  CHECK(n2 == doctest::Approx(0.25 * 1.5 * 1.5 * (1.0 - 1.0 / std::pow(1.5, 4))));
}
