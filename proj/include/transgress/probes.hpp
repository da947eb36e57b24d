#pragma once

// Scale-dependent estimators: curvature radius, energy radius, local variation
// of |X|, the maximal function and the curvature-radius weak estimate.
//
// All |Rm| values here are full metric contractions. Balls are geodesic:
// exact coordinate balls on Euclidean charts, and on cohomogeneity-one
// entries the set of orbits meeting the ball, weighted by the fraction of
// each orbit inside it (round-cap model).

#include "transgress/quadrature.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace transgress {

using ProbePoint = std::vector<double>;  // chart coordinates

struct Excision {
  ProbePoint center;
  double radius = 0.0;
};

struct ProbeConfig {
  int n_radial = 48;      // rungs on radius ladders
  int n_angular = 16;     // directions per rung when scanning points
  int n_samples = 4096;   // low-discrepancy samples per ball on Euclidean charts
  double s_cap = 10.0;
  std::optional<Excision> excised_domain;
  double bracket_tol = 1e-10;  // relative width of bisection brackets
  double epsilon0 = 1e-2;
  int ladder_rungs = 8;   // scales in the asymptotic local-variation sequence
  unsigned seed = 0;
};

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
};

struct SupInf {
  double sup = 0.0;
  double inf = 0.0;
  Bracket sup_bracket;
  Bracket inf_bracket;
};

enum class ProbeField { norm_rm, norm_X };

// A metric space with the two fields of interest and ball averages.
class ProbeSpace {
 public:
  virtual ~ProbeSpace() = default;
  virtual int dimension() const = 0;
  virtual double value(ProbeField f, const ProbePoint& p) const = 0;
  // Sup and inf of the field over B(p, r) minus the excised ball.
  virtual SupInf sup_inf(ProbeField f, const ProbePoint& p, double r, const Excision* ex = nullptr) const = 0;
  // Mean of |f| over B(p, r).
  virtual double ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p, double r) const = 0;
  virtual double ball_volume(const ProbePoint& p, double r) const = 0;
  // Distance from p to the excision center, for scanning points outside it.
  virtual double distance(const ProbePoint& a, const ProbePoint& b) const = 0;
  // Points at distance d from `center`, in several directions.
  virtual std::vector<ProbePoint> sphere_points(const ProbePoint& center, double d, int n) const = 0;
  // Center of the zero set (origin, nut, bolt): the reference for asymptotic scans.
  virtual ProbePoint origin() const = 0;
};

// Flat chart in Cartesian coordinates (metric λ² δ), Sobol samples in balls.
class EuclideanProbeSpace : public ProbeSpace {
 public:
  EuclideanProbeSpace(const CatalogEntry& entry, const ProbeConfig& cfg);
  int dimension() const override { return dim_; }
  double value(ProbeField f, const ProbePoint& p) const override;
  SupInf sup_inf(ProbeField f, const ProbePoint& p, double r, const Excision* ex = nullptr) const override;
  double ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p, double r) const override;
  double ball_volume(const ProbePoint& p, double r) const override;
  double distance(const ProbePoint& a, const ProbePoint& b) const override;
  std::vector<ProbePoint> sphere_points(const ProbePoint& center, double d, int n) const override;
  ProbePoint origin() const override { return ProbePoint(dim_, 0.0); }

 private:
  double norm_X(const ProbePoint& q) const;
  double lipschitz_X(const ProbePoint& p) const;
  bool zero_set_meets(const ProbePoint& p, double r, const Excision* ex) const;

  CatalogEntry entry_;
  int dim_;
  double lambda_;
  std::vector<ProbePoint> unit_ball_;  // interior and boundary samples of the unit ball
  double fill_fraction_;               // estimated covering radius of unit_ball_
  std::vector<ProbePoint> kernel_;     // orthonormal basis of the zero set of X
};

// Cohomogeneity-one entry: fields depend on the distance t to the center orbit.
class RadialProbeSpace : public ProbeSpace {
 public:
  RadialProbeSpace(const CatalogEntry& entry, const ProbeConfig& cfg, QuadratureConfig qcfg = {});
  int dimension() const override { return 4; }
  double value(ProbeField f, const ProbePoint& p) const override;
  SupInf sup_inf(ProbeField f, const ProbePoint& p, double r, const Excision* ex = nullptr) const override;
  double ball_mean(const std::function<double(const ProbePoint&)>& f, const ProbePoint& p, double r) const override;
  double ball_volume(const ProbePoint& p, double r) const override;
  double distance(const ProbePoint& a, const ProbePoint& b) const override;
  std::vector<ProbePoint> sphere_points(const ProbePoint& center, double d, int n) const override;
  ProbePoint origin() const override;

  double geodesic_radius(const ProbePoint& p) const;
  double field_at_t(ProbeField f, double t) const;
  ProbePoint point_at_t(double t) const;

 private:
  struct Table;
  const Table& table(double t_needed) const;
  double cap_fraction(double t, double tp, double r) const;

  RadialModel model_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const Table> table_;
  mutable std::vector<std::shared_ptr<const Table>> retired_;  // keeps handed-out references valid
};

std::unique_ptr<ProbeSpace> make_probe_space(const CatalogEntry& entry, const ProbeConfig& cfg);

struct RadiusResult {
  double value = 0.0;
  Bracket bracket;
  bool capped = false;  // value equals the scale cap s
};

// sup{0 < r < s : |Rm| < r^-2 on B(p, r)}
RadiusResult curvature_radius(const ProbeSpace& space, const ProbePoint& p, double s, const ProbeConfig& cfg);

// sup{0 < r < s : r^4 Vol(B(p, r))^-1 ∫_B |Rm|² ≤ ε0}
RadiusResult energy_radius(const ProbeSpace& space, const ProbePoint& p, double s, const ProbeConfig& cfg);

// sup over 0 < r < s of the mean of |f| on B(p, r), including the r -> 0 limit |f(p)|.
double maximal_function(const ProbeSpace& space, const std::function<double(const ProbePoint&)>& f,
                        const ProbePoint& p, double s, const ProbeConfig& cfg);

struct Ratio {
  double value = 0.0;  // +inf when the inf of |X| vanishes
  bool infinite = false;
  Bracket bracket;
};

struct VariationResult {
  double r_curv = 0.0;
  Ratio m_x;                          // over B(p, r^s) with s = cfg.s_cap
  std::optional<Ratio> m_x_omega_s;   // with the configured excision
  std::vector<std::pair<double, Ratio>> m_x_infty_estimate;  // (s, M_X^{B(o,s),s})
  double worst_point_distance = 0.0;  // where the excised sup was attained
};

// M_X(p) over B(p, r^s(p)) with s = cfg.s_cap (the s -> ∞ radius is not computable).
Ratio pointwise_variation(const ProbeSpace& space, const ProbePoint& p, const ProbeConfig& cfg);

// M_X^{Ω,s}: sup over scanned points outside Ω at distances up to dist(Ω) + 4s.
Ratio excised_variation(const ProbeSpace& space, const Excision& omega, double s, const ProbeConfig& cfg,
                        double* argmax_distance = nullptr);

VariationResult local_variation(const ProbeSpace& space, const ProbePoint& p, const ProbeConfig& cfg);

struct WeakEstimateReport {
  int k = 0;
  double s = 0.0;
  double r_curv = 0.0;
  double maximal = 0.0;  // M^s_{|Rm|²}(p)
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;   // rhs / lhs
};

WeakEstimateReport weak_estimate_check(const ProbeSpace& space, const ProbePoint& p, double s, int k,
                                       const ProbeConfig& cfg);

struct ProbeResult {
  RadiusResult r_curv;
  RadiusResult rho;
  VariationResult variation;
  double maximal = 0.0;
};

}  // namespace transgress
