#include "transgress/catalog.hpp"

#include <stdexcept>

namespace transgress {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::paper: return "paper";
    case Provenance::trivial: return "trivial";
    case Provenance::derived: return "derived";
    case Provenance::computed: return "computed";
  }
  return "computed";
}

namespace {

template <class T, int N>
using Grid = std::array<std::array<T, N>, N>;

template <class T, int N>
Grid<T, N> zero_grid() {
  Grid<T, N> g;
  for (auto& row : g) row.fill(T(0.0));
  return g;
}

struct Euclidean4 {
  template <class T>
  Grid<T, 4> operator()(const std::array<T, 4>&) const {
    auto g = zero_grid<T, 4>();
    for (int i = 0; i < 4; ++i) g[i][i] = T(1.0);
    return g;
  }
};

struct Euclidean2 {
  template <class T>
  Grid<T, 2> operator()(const std::array<T, 2>&) const {
    auto g = zero_grid<T, 2>();
    g[0][0] = T(1.0);
    g[1][1] = T(1.0);
    return g;
  }
};

// Coordinates (r, θ, ψ, φ), σ3 = dψ + cos θ dφ.
struct EguchiHanson {
  double a;
  template <class T>
  Grid<T, 4> operator()(const std::array<T, 4>& x) const {
    using std::cos;
    using std::sin;
    const T& r = x[0];
    const T ct = cos(x[1]), st = sin(x[1]);
    const T r2 = r * r;
    const T q = T(a * a) / r2;
    const T f = T(1.0) - q * q;
    auto g = zero_grid<T, 4>();
    g[0][0] = T(1.0) / f;
    g[1][1] = T(0.25) * r2;
    g[2][2] = T(0.25) * r2 * f;
    g[2][3] = T(0.25) * r2 * f * ct;
    g[3][2] = g[2][3];
    g[3][3] = T(0.25) * r2 * (f * ct * ct + st * st);
    return g;
  }
};

// Coordinates (ρ, θ, τ, φ): V(dρ² + ρ²dΩ²) + V⁻¹(dτ + 2m cos θ dφ)².
struct TaubNut {
  double m;
  template <class T>
  Grid<T, 4> operator()(const std::array<T, 4>& x) const {
    using std::cos;
    using std::sin;
    const T& rho = x[0];
    const T ct = cos(x[1]), st = sin(x[1]);
    const T V = T(1.0) + T(2.0 * m) / rho;
    const T Vi = T(1.0) / V;
    const T r2 = rho * rho;
    auto g = zero_grid<T, 4>();
    g[0][0] = V;
    g[1][1] = V * r2;
    g[2][2] = Vi;
    g[2][3] = Vi * T(2.0 * m) * ct;
    g[3][2] = g[2][3];
    g[3][3] = V * r2 * st * st + Vi * T(4.0 * m * m) * ct * ct;
    return g;
  }
};

struct CoordinateField {
  int index;
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>&) const {
    std::array<T, 4> v;
    v.fill(T(0.0));
    v[index] = T(1.0);
    return v;
  }
};

struct SinglePlaneRotation {
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>& x) const {
    return {-x[1], x[0], T(0.0), T(0.0)};
  }
};

struct TwoPlaneRotation {
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>& x) const {
    return {-x[1], x[0], -x[3], x[2]};
  }
};

struct PlaneRotation {
  template <class T>
  std::array<T, 2> operator()(const std::array<T, 2>& x) const {
    return {-x[1], x[0]};
  }
};

struct Identity4 {
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>& x) const { return x; }
};

// (R, θ, ψ, φ) -> (x, y, z, w) with θ ∈ (0, π), ψ of period 4π.
struct Hopf {
  template <class T>
  std::array<T, 4> operator()(const std::array<T, 4>& q) const {
    using std::cos;
    using std::sin;
    const T& R = q[0];
    const T c = cos(T(0.5) * q[1]), s = sin(T(0.5) * q[1]);
    const T alpha = T(0.5) * (q[2] + q[3]);
    const T beta = T(0.5) * (q[2] - q[3]);
    return {R * c * cos(alpha), R * c * sin(alpha), R * s * cos(beta), R * s * sin(beta)};
  }
};

constexpr double kFar = 1e8;

Box<4> flat_box() { return Box<4>{{-kFar, -kFar, -kFar, -kFar}, {kFar, kFar, kFar, kFar}}; }

Box<4> radial_box(double r0) { return Box<4>{{r0, 0.0, -kFar, -kFar}, {kFar, kPi, kFar, kFar}}; }

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  const double v = it == params.end() ? fallback : it->second;
  if (!(v > 0.0)) throw std::invalid_argument("parameter " + key + " must be positive");
  return v;
}

CatalogEntry flat_r4(const std::string& name, bool two_planes) {
  CatalogEntry e;
  e.name = name;
  e.dimension = 4;
  Geometry<4> geo;
  geo.chart = make_autodiff_chart<4>(name, flat_box(), Euclidean4{});
  geo.killing = two_planes ? make_autodiff_field<4>("-y d/dx + x d/dy - w d/dz + z d/dw", TwoPlaneRotation{})
                           : make_autodiff_field<4>("-y d/dx + x d/dy", SinglePlaneRotation{});
  geo.flat = true;
  geo.euclidean_coordinates = true;
  e.geometry4 = geo;
  RadialStructure rs;
  rs.embed = make_autodiff_map<4>(Hopf{});
  rs.center = 0.0;
  rs.period_v = 4.0 * kPi;
  rs.period_w = 2.0 * kPi;
  e.radial = rs;
  if (two_planes) {
    e.zero_set.push_back({"nut", 1, "origin", 0.0});
    e.known["chi"] = {1.0, Provenance::trivial, "isolated fixed point at the origin"};
  } else {
    e.zero_set.push_back({"plane", 1, "{x = y = 0}", 0.0});
    e.known["chi"] = {1.0, Provenance::trivial, "fixed 2-plane meets every ball in a disc"};
  }
  e.known["avr_ratio"] = {1.0, Provenance::trivial, "Euclidean volume growth"};
  e.known["avr"] = {kPi * kPi / 2.0, Provenance::trivial, "Euclidean unit ball volume"};
  e.known["energy_over_8pi2"] = {0.0, Provenance::trivial, "flat"};
  return e;
}

CatalogEntry eguchi_hanson(double a) {
  CatalogEntry e;
  e.name = "eguchi-hanson";
  e.params["a"] = a;
  Geometry<4> geo;
  geo.chart = make_autodiff_chart<4>("eguchi-hanson", radial_box(a), EguchiHanson{a}, -1, a);
  geo.killing = make_autodiff_field<4>("d/dpsi", CoordinateField{2});
  e.geometry4 = geo;
  RadialStructure rs;
  rs.embed = make_autodiff_map<4>(Identity4{});
  rs.center = a;
  rs.period_v = 2.0 * kPi;  // Z2 quotient of the Hopf fibre
  rs.period_w = 2.0 * kPi;
  e.radial = rs;
  e.zero_set.push_back({"bolt", 2, "r = a (2-sphere)", a});
  e.known["chi"] = {2.0, Provenance::paper, "bolt is a 2-sphere"};
  e.known["avr"] = {kPi * kPi / 4.0, Provenance::paper, "lim s^-4 Vol B(p, s)"};
  e.known["avr_ratio"] = {0.5, Provenance::paper, "1/|Z2|"};
  e.known["energy_over_8pi2"] = {1.5, Provenance::paper, "(1/8 pi^2) int |Rm|^2"};
  return e;
}

CatalogEntry taub_nut(double m) {
  CatalogEntry e;
  e.name = "taub-nut";
  e.params["m"] = m;
  Geometry<4> geo;
  geo.chart = make_autodiff_chart<4>("taub-nut", radial_box(0.0), TaubNut{m}, 1, m);
  geo.killing = make_autodiff_field<4>("d/dtau", CoordinateField{2});
  e.geometry4 = geo;
  RadialStructure rs;
  rs.embed = make_autodiff_map<4>(Identity4{});
  rs.center = 0.0;
  rs.period_v = 8.0 * kPi * m;
  rs.period_w = 2.0 * kPi;
  e.radial = rs;
  e.zero_set.push_back({"nut", 1, "rho = 0", 0.0});
  e.known["chi"] = {1.0, Provenance::trivial, "isolated fixed point"};
  e.known["avr"] = {0.0, Provenance::trivial, "cubic volume growth"};
  e.known["avr_ratio"] = {0.0, Provenance::trivial, "cubic volume growth"};
  e.known["energy_over_8pi2"] = {1.0, Provenance::derived, "radial quadrature"};
  return e;
}

CatalogEntry flat_r2() {
  CatalogEntry e;
  e.name = "flat-r2-rot";
  e.dimension = 2;
  Geometry<2> geo;
  geo.chart = make_autodiff_chart<2>("flat-r2-rot", Box<2>{{-kFar, -kFar}, {kFar, kFar}}, Euclidean2{});
  geo.killing = make_autodiff_field<2>("-y d/dx + x d/dy", PlaneRotation{});
  geo.flat = true;
  geo.euclidean_coordinates = true;
  e.geometry2 = geo;
  e.zero_set.push_back({"nut", 1, "origin", 0.0});
  e.known["chi"] = {1.0, Provenance::trivial, "isolated fixed point"};
  e.known["energy_over_8pi2"] = {0.0, Provenance::trivial, "flat"};
  return e;
}

}  // namespace

CatalogEntry CatalogEntry::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale factor must be positive");
  CatalogEntry out = *this;
  if (geometry4) out.geometry4->chart = geometry4->chart.scaled(lambda);
  if (geometry2) out.geometry2->chart = geometry2->chart.scaled(lambda);
  out.scale = scale * lambda;
  return out;
}

int CatalogEntry::total_chi() const {
  int s = 0;
  for (const auto& z : zero_set) s += z.chi;
  return s;
}

int CatalogEntry::chi_inside(double radial_coordinate) const {
  int s = 0;
  for (const auto& z : zero_set)
    if (z.center_radius < radial_coordinate) s += z.chi;
  return s;
}

const Geometry<4>& CatalogEntry::geom() const {
  if (!geometry4) throw std::invalid_argument("'" + name + "' is not a 4-dimensional entry");
  return *geometry4;
}

Point4 CatalogEntry::adapted_point(double R, double u, double v, double w) const {
  if (!radial) throw std::invalid_argument("'" + name + "' has no radial structure");
  return radial->embed.value({R, u, v, w});
}

Point4 CatalogEntry::reference_point(double R) const {
  return adapted_point(R, radial->reference_u, radial->reference_v, radial->reference_w);
}

std::vector<std::string> catalog_names() {
  return {"flat-r4-rot1", "flat-r4-rot2", "eguchi-hanson", "taub-nut", "flat-r2-rot"};
}

CatalogEntry catalog_metric(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "flat-r4-rot1") return flat_r4(name, false);
  if (name == "flat-r4-rot2") return flat_r4(name, true);
  if (name == "eguchi-hanson") return eguchi_hanson(param(params, "a", 1.0));
  if (name == "taub-nut") return taub_nut(param(params, "m", 1.0));
  if (name == "flat-r2-rot") return flat_r2();
  throw std::invalid_argument("unknown metric '" + name + "'");
}

InvariantRow known_invariants(const CatalogEntry& entry) {
  InvariantRow row;
  row.name = entry.name;
  auto pick = [&](const char* key) -> std::optional<KnownValue> {
    const auto it = entry.known.find(key);
    if (it == entry.known.end()) return std::nullopt;
    return it->second;
  };
  row.chi = pick("chi");
  row.avr_ratio = pick("avr_ratio");
  row.energy_over_8pi2 = pick("energy_over_8pi2");
  if (entry.name == "flat-r4-rot1") row.expectations.push_back("transgression form vanishes identically");
  if (entry.name == "flat-r2-rot") row.expectations.push_back("local variation M_X is infinite without excision");
  if (entry.name == "eguchi-hanson") row.expectations.push_back("curvature is half-conformally flat");
  return row;
}

}  // namespace transgress
