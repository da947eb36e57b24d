#pragma once

// Named example manifolds with a Killing field, its zero set and the values
// the theorem drivers compare against.

#include "transgress/killing_transgression.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace transgress {

enum class Provenance { paper, trivial, derived, computed };

const char* to_string(Provenance p);

struct KnownValue {
  double value = 0.0;
  Provenance provenance = Provenance::computed;
  std::string note;
};

struct ZeroSetComponent {
  std::string type;  // nut | bolt | plane | none
  int chi = 0;
  std::string location;
  double center_radius = 0.0;  // radial coordinate of the component
};

// A smooth map between coordinate systems with its Jacobian.
template <int N>
struct ChartMap {
  std::function<Point<N>(const Point<N>&)> value;
  std::function<Mat<N>(const Point<N>&)> jacobian;  // (a, b) = ∂_b y^a
};

template <int N, class F>
ChartMap<N> make_autodiff_map(F functor) {
  ChartMap<N> out;
  out.value = [functor](const Point<N>& p) {
    const auto y = functor(p);
    Point<N> q;
    for (int a = 0; a < N; ++a) q[a] = y[a];
    return q;
  };
  out.jacobian = [functor](const Point<N>& p) {
    const auto y = functor(seed_jets<N>(p));
    Mat<N> m;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) m(a, b) = y[a].d[b];
    return m;
  };
  return out;
}

// Cohomogeneity-one structure: adapted coordinates (R, u, v, w) in which the
// level sets {R = const} are the symmetry orbits. u is a polar angle on
// (0, polar_max); v and w are periodic with the given periods. When
// `angular_invariant` holds, metric quantities and the transgression form
// pulled back to adapted coordinates depend on (R, u) only.
struct RadialStructure {
  ChartMap<4> embed;  // adapted -> chart coordinates
  double center = 0.0;  // R of the nut or bolt
  double polar_max = kPi;
  double period_v = 2.0 * kPi;
  double period_w = 2.0 * kPi;
  bool angular_invariant = true;
  bool homogeneous_orbits = true;  // |Rm| and |X| constant on every orbit
  double reference_u = 0.5 * kPi;
  double reference_v = 0.0;
  double reference_w = 0.0;
  double max_radius = 1e6;
};

template <int N>
struct Geometry {
  MetricChart<N> chart;
  KillingField<N> killing;
  bool flat = false;
  // Cartesian chart of flat space: geodesic balls are coordinate balls.
  bool euclidean_coordinates = false;
};

struct CatalogEntry {
  std::string name;
  std::map<std::string, double> params;
  int dimension = 4;
  std::optional<Geometry<4>> geometry4;
  std::optional<Geometry<2>> geometry2;
  std::optional<RadialStructure> radial;
  std::vector<ZeroSetComponent> zero_set;
  std::map<std::string, KnownValue> known;  // keys: chi, avr_ratio, energy_over_8pi2, ...
  bool ricci_flat = true;
  double scale = 1.0;  // λ of the last scaled() call relative to the base entry

  // Metric λ² g; coordinates, Killing field and zero set unchanged.
  CatalogEntry scaled(double lambda) const;

  int total_chi() const;
  // Σχ over zero-set components with radial coordinate below R.
  int chi_inside(double radial_coordinate) const;

  const Geometry<4>& geom() const;
  // Chart point for adapted coordinates (R, u, v, w).
  Point4 adapted_point(double R, double u, double v, double w) const;
  Point4 reference_point(double R) const;
};

// Names accepted by catalog_metric.
std::vector<std::string> catalog_names();

// Throws std::invalid_argument for unknown names or non-positive parameters.
CatalogEntry catalog_metric(const std::string& name, const std::map<std::string, double>& params = {});

struct InvariantRow {
  std::string name;
  std::optional<KnownValue> chi, avr_ratio, energy_over_8pi2;
  std::vector<std::string> expectations;
};

InvariantRow known_invariants(const CatalogEntry& entry);

}  // namespace transgress
