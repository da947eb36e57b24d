#include "transgress/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace transgress {

namespace {

// Inputs echoed back (tolerances, counts, radii) are tagged trivial.
Json input(double v) { return tagged(v, Provenance::trivial); }

Json chi_json(const CatalogEntry* entry, int chi) {
  if (entry) {
    const auto it = entry->known.find("chi");
    if (it != entry->known.end() && it->second.value == chi) return tagged(it->second);
  }
  return tagged(chi, Provenance::computed);
}

Json known_or_null(const CatalogEntry& entry, const char* key) {
  const auto it = entry.known.find(key);
  return it == entry.known.end() ? Json(nullptr) : tagged(it->second);
}

Json extrapolation_json(const Extrapolation& ex) {
  Json rungs = Json::array();
  for (std::size_t k = 0; k < ex.s.size(); ++k) rungs.push_back({{"s", input(ex.s[k])}, {"raw", tagged(ex.raw[k])}});
  return {{"rungs", rungs},
          {"extrapolated", tagged(ex.value)},
          {"change", tagged(ex.change)},
          {"converged", ex.converged}};
}

}  // namespace

Json tagged(double value, Provenance p) {
  Json j = {{"provenance", to_string(p)}};
  if (std::isinf(value)) {
    j["value"] = nullptr;
    j["infinite"] = true;
  } else if (std::isnan(value)) {
    j["value"] = nullptr;
    j["undefined"] = true;
  } else {
    j["value"] = value;
  }
  return j;
}

Json tagged(const KnownValue& v) {
  Json j = tagged(v.value, v.provenance);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json envelope(const std::string& command, const CatalogEntry* entry, Json result) {
  Json j = {{"schema", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
  j["entry"] = entry ? entry_json(*entry) : Json(nullptr);
  return j;
}

Json entry_json(const CatalogEntry& entry) {
  Json params = Json::object();
  for (const auto& [k, v] : entry.params) params[k] = input(v);
  Json zero = Json::array();
  for (const auto& z : entry.zero_set) {
    zero.push_back({{"type", z.type}, {"chi", tagged(z.chi, Provenance::trivial)}, {"location", z.location}});
  }
  Json known = Json::object();
  for (const auto& [k, v] : entry.known) known[k] = tagged(v);
  const InvariantRow row = known_invariants(entry);
  return {{"name", entry.name},
          {"dimension", input(entry.dimension)},
          {"params", params},
          {"scale", input(entry.scale)},
          {"ricci_flat", entry.ricci_flat},
          {"zero_set", zero},
          {"known", known},
          {"expectations", row.expectations}};
}

Json catalog_json() {
  Json list = Json::array();
  for (const auto& name : catalog_names()) list.push_back(entry_json(catalog_metric(name)));
  return list;
}

Json to_json(const IdentityReport& r) {
  return {{"n_points", input(r.n_points)},
          {"covariant_constancy", tagged(r.covariant_constancy)},
          {"null_vector", tagged(r.null_vector)},
          {"dk_closed_form", tagged(r.dk_closed_form)},
          {"trace_k_wedge_dk", tagged(r.trace_k_wedge_dk)},
          {"decomposition", tagged(r.decomposition)},
          {"t_integral", tagged(r.t_integral)},
          {"polynomial", tagged(r.polynomial)},
          {"max_transgression_component", tagged(r.max_tp)},
          {"worst", tagged(r.worst())}};
}

Json to_json(const ClosureReport& r, double tol) {
  Json kinds = Json::array();
  bool pass = true;
  for (const auto& k : r.kinds) {
    const bool order_ok = !k.order_meaningful || std::abs(k.order - 2.0) <= 0.3;
    const bool kind_pass = order_ok && k.max_residual_extrapolated < std::max(tol, 100.0 * k.rounding_floor);
    pass = pass && kind_pass;
    kinds.push_back({{"form", to_string(k.kind)},
                     {"max_residual_h", tagged(k.max_residual_h)},
                     {"max_residual_half", tagged(k.max_residual_half)},
                     {"max_residual_extrapolated", tagged(k.max_residual_extrapolated)},
                     {"max_density", tagged(k.max_density)},
                     {"rounding_floor", tagged(k.rounding_floor)},
                     {"order", tagged(k.order)},
                     {"median_order", tagged(k.median_order)},
                     {"order_meaningful", k.order_meaningful},
                     {"expected_order", tagged(2.0, Provenance::derived)},
                     {"pass", kind_pass}});
  }
  return {{"claim", "d TP = P for the Euler and Pontryagin forms"},
          {"n_points", input(r.n_points)},
          {"h", input(r.h)},
          {"tolerance", input(tol)},
          {"forms", kinds},
          {"pass", pass}};
}

Json to_json(const BalanceReport& r, double tol) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"s", input(row.s)},
                    {"R", tagged(row.R)},
                    {"energy_over_8pi2", tagged(row.energy_over_8pi2)},
                    {"energy_error", tagged(row.energy_error)},
                    {"chi_inside", tagged(row.chi_inside, Provenance::trivial)},
                    {"boundary", tagged(row.boundary)},
                    {"residual", tagged(row.residual)}});
  }
  return {{"claim", "(1/8 pi^2) int_B |Rm|^2 = chi(inside) + boundary integral of TP"},
          {"rows", rows},
          {"max_residual", tagged(r.max_residual)},
          {"tolerance", input(tol)},
          {"pass", r.max_residual < tol}};
}

Json to_json(const Thm3Report& r, const CatalogEntry& entry) {
  return {{"claim", "(1/8 pi^2) int |Rm|^2 = sum chi - lim Vol B(s) / (pi^2 s^4 / 2)"},
          {"lhs", tagged(r.lhs)},
          {"rhs", tagged(r.rhs)},
          {"difference", tagged(r.lhs - r.rhs)},
          {"chi", chi_json(&entry, r.chi)},
          {"energy", extrapolation_json(r.energy)},
          {"avr", extrapolation_json(r.avr)},
          {"expected_energy_over_8pi2", known_or_null(entry, "energy_over_8pi2")},
          {"expected_avr", known_or_null(entry, "avr")},
          {"expected_avr_ratio", known_or_null(entry, "avr_ratio")},
          {"tolerance", input(r.tol)},
          {"pass", r.pass}};
}

Json to_json(const EtaReport& r) {
  Json eta = Json::array();
  for (double v : r.eta) eta.push_back(tagged(v, Provenance::trivial));
  Json weighted = Json::array();
  for (double v : r.weighted_partial) weighted.push_back(tagged(v));
  const bool below = r.weighted_partial.empty() || r.weighted_partial.back() < r.weighted_bound;
  return {{"k", input(r.k)},
          {"first_index", input(r.first_index)},
          {"q", tagged(r.q, Provenance::trivial)},
          {"eta", eta},
          {"sum", tagged(r.sum)},
          {"sum_closed_form", tagged(r.sum_closed_form, Provenance::derived)},
          {"infinite_sum", tagged(r.infinite_sum, Provenance::derived)},
          {"claimed_infinite_sum", tagged(1.0, Provenance::paper)},
          {"weighted_partial_sums", weighted},
          {"weighted_ratio", tagged(r.weighted_ratio, Provenance::derived)},
          {"weighted_bound", tagged(r.weighted_bound, Provenance::derived)},
          {"weighted_below_bound", below}};
}

Json to_json(const Thm2Report& r) {
  return {{"claim", "(1/8 pi^2) int_B(t) |Rm|^2 <= chi + C s^-4 |B(t+s) \\ B(t)|"},
          {"t", input(r.t)},
          {"s", input(r.s)},
          {"lhs", tagged(r.lhs)},
          {"chi", tagged(r.chi, Provenance::trivial)},
          {"annulus_volume", tagged(r.annulus_volume)},
          {"annulus_term", tagged(r.annulus_term)},
          {"measured_C", tagged(r.measured_C)},
          {"cutoff",
           {{"energy", tagged(r.cutoff_energy)},
            {"boundary", tagged(r.cutoff_boundary)},
            {"residual", tagged(r.cutoff_residual)},
            {"slope_bound", tagged(r.cutoff_slope_bound, Provenance::derived)},
            {"sampled_slope", tagged(r.cutoff_sampled_slope)}}},
          {"first_estimate_integral", tagged(r.first_estimate_integral)},
          {"measured_C1", tagged(r.measured_C1)},
          {"variation", to_json(r.variation)}};
}

Json to_json(const RadiusResult& r) {
  return {{"radius", tagged(r.value)},
          {"bracket", {tagged(r.bracket.lower), tagged(r.bracket.upper)}},
          {"capped", r.capped}};
}

Json to_json(const Ratio& r) {
  return {{"ratio", tagged(r.infinite ? std::numeric_limits<double>::infinity() : r.value)},
          {"infinite", r.infinite},
          {"bracket", {tagged(r.bracket.lower), tagged(r.bracket.upper)}}};
}

Json to_json(const VariationResult& r) {
  Json ladder = Json::array();
  for (const auto& [s, ratio] : r.m_x_infty_estimate) ladder.push_back({{"s", input(s)}, {"m_x", to_json(ratio)}});
  Json j = {{"r_curv", tagged(r.r_curv)},
            {"m_x", to_json(r.m_x)},
            {"m_x_infty_estimate", ladder},
            {"worst_point_distance", tagged(r.worst_point_distance)}};
  j["m_x_omega_s"] = r.m_x_omega_s ? to_json(*r.m_x_omega_s) : Json(nullptr);
  return j;
}

void write_balance_csv(const BalanceReport& r, std::ostream& os) {
  os << "s,R,energy_over_8pi2,energy_error,chi_inside,boundary,residual\n";
  os.precision(12);
  for (const auto& row : r.rows) {
    os << row.s << ',' << row.R << ',' << row.energy_over_8pi2 << ',' << row.energy_error << ',' << row.chi_inside
       << ',' << row.boundary << ',' << row.residual << '\n';
  }
}

void write_thm3_csv(const Thm3Report& r, std::ostream& os) {
  os << "s,energy_over_8pi2,volume_over_s4\n";
  os.precision(12);
  for (std::size_t k = 0; k < r.energy.s.size(); ++k) {
    os << r.energy.s[k] << ',' << r.energy.raw[k] << ',' << r.avr.raw[k] << '\n';
  }
}

void write_eta_csv(const EtaReport& r, std::ostream& os) {
  os << "i,eta,partial_sum,weighted_partial_sum\n";
  os.precision(17);
  double sum = 0.0;
  for (std::size_t k = 0; k < r.eta.size(); ++k) {
    sum += r.eta[k];
    os << r.first_index + static_cast<int>(k) << ',' << r.eta[k] << ',' << sum << ',' << r.weighted_partial[k] << '\n';
  }
}

}  // namespace transgress
