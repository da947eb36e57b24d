#pragma once

// JSON and CSV emission. Every number is written as
//   {"value": v, "provenance": "paper" | "trivial" | "derived" | "computed"}
// with "value": null and "infinite": true for unbounded ratios.

#include "transgress/theorems.hpp"

#include <json.hpp>

#include <iosfwd>

namespace transgress {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json tagged(double value, Provenance p = Provenance::computed);
Json tagged(const KnownValue& v);

// {"schema": 1, "command": ..., "entry": {...}, "result": ...}
Json envelope(const std::string& command, const CatalogEntry* entry, Json result);

Json entry_json(const CatalogEntry& entry);
Json catalog_json();

Json to_json(const IdentityReport& r);
Json to_json(const ClosureReport& r, double tol);
Json to_json(const BalanceReport& r, double tol);
Json to_json(const Thm3Report& r, const CatalogEntry& entry);
Json to_json(const EtaReport& r);
Json to_json(const Thm2Report& r);
Json to_json(const RadiusResult& r);
Json to_json(const Ratio& r);
Json to_json(const VariationResult& r);

// CSV tables of the s-ladders.
void write_balance_csv(const BalanceReport& r, std::ostream& os);
void write_thm3_csv(const Thm3Report& r, std::ostream& os);
void write_eta_csv(const EtaReport& r, std::ostream& os);

}  // namespace transgress
