#pragma once

// Radial integration on cohomogeneity-one catalog entries: geodesic radius,
// ball volumes and energies, integrals of 3-forms over orbits, and cutoffs.
//
// Balls are the sublevel sets {t < s} of the geodesic distance t to the
// center orbit (nut or bolt), measured along the adapted radial coordinate.

#include "transgress/catalog.hpp"

#include <iosfwd>
#include <vector>

namespace transgress {

struct QuadratureConfig {
  int panels = 64;           // composite Gauss–Legendre panels in u = sqrt(R − R_center)
  int nodes_per_panel = 8;
  int polar_nodes = 24;
  int periodic_nodes = 8;    // per periodic angle when the integrand is not invariant
  Tolerances tol{};
  TransgressionConfig transgression{};
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // |fine − coarse| under panel halving
};

// One node of a radial profile.
struct RadialSample {
  double R = 0.0;             // adapted radial coordinate
  double geodesic_r = 0.0;
  double shell_volume = 0.0;  // 3-volume of the orbit, dVol/dt
  double shell_energy = 0.0;  // ∫_orbit |Rm|² (energy norm), per unit t
};

struct RadialProfile {
  std::vector<RadialSample> samples;
  void write_csv(std::ostream& os) const;
};

class RadialModel {
 public:
  explicit RadialModel(CatalogEntry entry, QuadratureConfig cfg = {});

  const CatalogEntry& entry() const { return entry_; }
  const QuadratureConfig& config() const { return cfg_; }
  double center() const { return rs().center; }

  // √G_RR at R (G the metric pulled back to adapted coordinates).
  double radial_speed(double R) const;
  // dVol/dR: the metric volume density integrated over the angles.
  double volume_density(double R) const;
  // ∫_orbit |Rm|² dVol per unit R (energy norm, so the Euler integral is energy/8π² on Ricci-flat input).
  double energy_density(double R) const;
  // |Rm| (full contraction) and |X| at the reference angles of level R.
  double norm_rm(double R) const;
  double norm_X(double R) const;

  Estimate geodesic_radius(double R) const;
  // Inverse of geodesic_radius; throws DomainError beyond the radial range.
  double coordinate_radius(double t) const;

  Estimate ball_volume(double t) const;
  Estimate energy_in_ball(double t) const;

  // ∫_{R = const} ω with the orientation induced by the outward normal.
  double sphere_integral(const ThreeFormField& form, double R) const;

  RadialProfile profile(double t_max, int n) const;

 private:
  const RadialStructure& rs() const { return *entry_.radial; }
  Mat4 adapted_metric(double R, double u, double v, double w, Mat4* jacobian = nullptr) const;
  // ∫_{center}^{R} f(R') dR' with R' = center + u², at `panels` panels.
  template <class F>
  double radial_integral(F f, double R, int panels) const;
  template <class F>
  Estimate radial_estimate(F f, double R) const;

  CatalogEntry entry_;
  QuadratureConfig cfg_;
  GaussRule panel_rule_;
  GaussRule polar_rule_;
};

struct CutoffProfile {
  double inner = 0.0;
  double outer = 0.0;
  double derivative_bound = 0.0;   // declared: 2 / (outer − inner)
  double sampled_max_slope = 0.0;  // certified by dense sampling

  double value(double x) const;
  double derivative(double x) const;
};

// Smooth monotone step: 1 on (−∞, inner], 0 on [outer, ∞).
CutoffProfile cutoff_profile(double inner, double outer, int samples = 20001);

}  // namespace transgress
