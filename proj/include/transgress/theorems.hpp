#pragma once

// Drivers that assemble the pointwise, quadrature and probe modules into the
// checkable statements: closure of the transgression forms, the residue
// balance on balls, the energy identity in the limit, the η iteration
// sequence and the measured constant of the energy bound.

#include "transgress/probes.hpp"
#include "transgress/quadrature.hpp"

#include <vector>

namespace transgress {

// Deterministic sample points away from the zero set, axes and chart edges.
std::vector<Point4> sample_points(const CatalogEntry& entry, int n, unsigned seed = 0);

// Pointwise algebraic identities; each residual is max |a − b| / max(1, |a|).
struct IdentityReport {
  std::string entry;
  int n_points = 0;
  double covariant_constancy = 0.0;   // K(X) w = ∇_w X
  double null_vector = 0.0;           // i_X (F − DK) = 0
  double dk_closed_form = 0.0;
  double trace_k_wedge_dk = 0.0;
  double decomposition = 0.0;         // |Rm|² = R²/6 + 2|Ric°|² + |W|²
  double t_integral = 0.0;            // closed TP vs 2∫ P(K, F_t) dt, both kinds
  double polynomial = 0.0;            // closed TP vs 2P(K, F) − P(K, DK), both kinds
  double max_tp = 0.0;                // max |TP_χ| component, for the flat single-plane check

  double worst() const;
};

IdentityReport verify_identities(const CatalogEntry& entry, int n_points, unsigned seed = 0);

struct ClosureKindReport {
  FormKind kind = FormKind::euler;
  double max_residual_h = 0.0;       // max |dTP − P| / √det at step h
  double max_residual_half = 0.0;    // at step h/2
  double max_residual_extrapolated = 0.0;  // (4 d_{h/2} − d_h) / 3, fourth order
  double max_density = 0.0;          // max |P| over the samples
  double rounding_floor = 0.0;       // estimated finite-difference rounding level at h/2
  double order = 0.0;                // log2 of the ratio of maxima
  double median_order = 0.0;         // median of the per-point orders
  bool order_meaningful = false;     // residuals clear the rounding floor
};

struct ClosureReport {
  std::string entry;
  int n_points = 0;
  double h = 0.0;
  std::vector<ClosureKindReport> kinds;
};

ClosureReport verify_closure(const CatalogEntry& entry, int n_points, double h, unsigned seed = 0);

struct BalanceRow {
  double s = 0.0;
  double R = 0.0;
  double energy_over_8pi2 = 0.0;
  double energy_error = 0.0;
  int chi_inside = 0;
  double boundary = 0.0;  // ∮ TP_χ over the level set
  double residual = 0.0;  // energy − χ − boundary
};

struct BalanceReport {
  std::string entry;
  std::vector<BalanceRow> rows;
  double max_residual = 0.0;
};

// Throws DegenerateError when the zero set meets every level set (fixed planes).
BalanceReport verify_balance(const CatalogEntry& entry, const std::vector<double>& s_list,
                             const QuadratureConfig& cfg = {});

struct Extrapolation {
  std::vector<double> s;
  std::vector<double> raw;
  double value = 0.0;
  double change = 0.0;  // |all rungs − all but the coarsest|
  bool converged = false;
};

// Polynomial extrapolation in 1/s to s = ∞ over the given ladder.
Extrapolation richardson_in_s(const std::vector<double>& s, const std::vector<double>& values, double tol);

struct Thm3Report {
  std::string entry;
  Extrapolation energy;  // (1/8π²) ∫_{B(s)} |Rm|²
  Extrapolation avr;     // s^-4 Vol B(s)
  int chi = 0;
  double lhs = 0.0;
  double rhs = 0.0;      // Σχ − avr / (π²/2)
  double tol = 0.0;
  bool pass = false;
};

struct Thm3Config {
  double s0 = 16.0;  // first rung, in units of the entry scale
  int rungs = 5;
  double ratio = 2.0;
  QuadratureConfig quadrature{};
};

Thm3Report verify_thm3(const CatalogEntry& entry, double tol = 0.01, const Thm3Config& cfg = {});

struct EtaReport {
  int k = 0;
  int first_index = 1;
  double q = 0.0;                    // (9/11)^(1/4)
  std::vector<double> eta;
  double sum = 0.0;                  // Σ η_i, summed term by term
  double sum_closed_form = 0.0;      // (1 − q) q^i0 (1 − q^k) / (1 − q)
  double infinite_sum = 0.0;         // q^i0
  std::vector<double> weighted_partial;  // partial sums of (3/4)^i η_i^-4
  double weighted_ratio = 0.0;       // (3/4)(11/9)
  double weighted_bound = 0.0;       // closed-form infinite sum
};

EtaReport eta_sequence(int k, int first_index = 1);

struct Thm2Report {
  std::string entry;
  double t = 0.0, s = 0.0;
  double lhs = 0.0;             // (1/8π²) ∫_{B(t)} |Rm|²
  int chi = 0;
  double annulus_volume = 0.0;  // |B(t + s) \ B(t)|
  double annulus_term = 0.0;    // s^-4 |B(t + s) \ B(t)|
  double measured_C = 0.0;      // smallest C ≥ 0 with lhs ≤ χ + C annulus_term
  // Cutoff form: φ = 1 on B(t), 0 outside B(t + s).
  double cutoff_energy = 0.0;   // (1/8π²) ∫ φ |Rm|²
  double cutoff_boundary = 0.0; // −∫ dφ ∧ TP_χ
  double cutoff_residual = 0.0; // cutoff_energy − χ − cutoff_boundary
  double first_estimate_integral = 0.0;  // ∫ |∇φ| (r^s)^-3
  double measured_C1 = 0.0;     // smallest C1 ≥ 0 with cutoff_energy ≤ χ + C1 · integral
  Ratio variation;              // M_X^{B(t), s}
  double cutoff_slope_bound = 0.0;
  double cutoff_sampled_slope = 0.0;
};

Thm2Report thm2_bound(const CatalogEntry& entry, double t, double s, const ProbeConfig& probe_cfg = {},
                      const QuadratureConfig& qcfg = {});

}  // namespace transgress
