// transgress: command-line front end for the catalog, the theorem drivers and the probes.
//
// Exit codes: 0 ok, 2 usage, 3 domain, 4 verification failure.

#include "transgress/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace transgress;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerification = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string metric;
  std::vector<std::string> params;  // key=value
  double scale = 1.0;
  unsigned seed = 0;
  std::string out_dir;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("parameter '" + item + "' is not key=value");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("parameter '" + item + "' has a non-numeric value");
    }
  }
  return out;
}

CatalogEntry load_entry(const Options& o) {
  CatalogEntry e;
  try {
    e = catalog_metric(o.metric, parse_params(o.params));
    if (o.scale != 1.0) e = e.scaled(o.scale);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  return e;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("'" + text + "' is not a comma-separated list of numbers");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// Prints the document and, when an output directory is configured, writes it there too.
void emit(const Options& o, const std::string& stem, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (o.out_dir.empty()) return;
  std::filesystem::create_directories(o.out_dir);
  std::ofstream(std::filesystem::path(o.out_dir) / (stem + ".json")) << text;
}

template <class Writer>
void emit_csv(const Options& o, const std::string& stem, Writer write) {
  if (o.out_dir.empty()) return;
  std::filesystem::create_directories(o.out_dir);
  std::ofstream os(std::filesystem::path(o.out_dir) / (stem + ".csv"));
  write(os);
}

int gate(bool pass) { return pass ? 0 : kExitVerification; }

void print_error(const char* kind, const std::string& message) {
  const Json err = {{"schema", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Killing-field transgression checks on Ricci-flat 4-manifolds"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for sampled points")->default_val(0);
  app.add_option("--out-dir", o.out_dir, "Directory for JSON and CSV output")->envname("TRANSGRESS_OUTPUT_DIR");

  auto add_metric = [&o](CLI::App* sub) {
    sub->add_option("--metric", o.metric, "Catalog entry")->required();
    sub->add_option("--param", o.params, "Entry parameter key=value (repeatable)");
    sub->add_option("--scale", o.scale, "Replace g by scale^2 g")->check(CLI::PositiveNumber);
  };

  int result = 0;

  auto* catalog = app.add_subcommand("catalog", "Catalog entries");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "List entries with their known invariants")->callback([&] {
    emit(o, "catalog", envelope("catalog list", nullptr, catalog_json()));
  });

  int points = 100;
  double h = 1e-3, closure_tol = 1e-6;
  auto* closure = app.add_subcommand("closure", "Check d TP = P at sample points");
  closure->set_help_flag("--help", "Print this help message and exit");
  add_metric(closure);
  closure->add_option("--points", points)->check(CLI::PositiveNumber);
  closure->add_option("--h", h, "Stencil step relative to the chart scale")->check(CLI::PositiveNumber);
  closure->add_option("--tol", closure_tol)->check(CLI::PositiveNumber);
  closure->callback([&] {
    const CatalogEntry e = load_entry(o);
    const Json j = to_json(verify_closure(e, points, h, o.seed), closure_tol);
    emit(o, "closure-" + e.name, envelope("closure", &e, j));
    result = gate(j["pass"]);
  });

  int identity_points = 1000;
  double identity_tol = 1e-8;
  auto* identities = app.add_subcommand("identities", "Pointwise algebraic identities");
  add_metric(identities);
  identities->add_option("--points", identity_points)->check(CLI::PositiveNumber);
  identities->add_option("--tol", identity_tol)->check(CLI::PositiveNumber);
  identities->callback([&] {
    const CatalogEntry e = load_entry(o);
    const IdentityReport r = verify_identities(e, identity_points, o.seed);
    Json j = to_json(r);
    j["tolerance"] = tagged(identity_tol, Provenance::trivial);
    j["pass"] = r.worst() < identity_tol;
    emit(o, "identities-" + e.name, envelope("identities", &e, j));
    result = gate(j["pass"]);
  });

  std::string radii = "1,2,5";
  double balance_tol = 0.01;
  auto* balance = app.add_subcommand("balance", "Residue balance on balls");
  add_metric(balance);
  balance->add_option("--radii", radii, "Comma-separated geodesic radii");
  balance->add_option("--tol", balance_tol)->check(CLI::PositiveNumber);
  balance->callback([&] {
    const CatalogEntry e = load_entry(o);
    const BalanceReport r = verify_balance(e, parse_list(radii));
    const Json j = to_json(r, balance_tol);
    emit(o, "balance-" + e.name, envelope("balance", &e, j));
    emit_csv(o, "balance-" + e.name, [&r](std::ostream& os) { write_balance_csv(r, os); });
    result = gate(j["pass"]);
  });

  double thm3_tol = 0.01;
  Thm3Config thm3_cfg;
  auto* thm3 = app.add_subcommand("thm3", "Energy identity via the s-ladder");
  add_metric(thm3);
  thm3->add_option("--tol", thm3_tol)->check(CLI::PositiveNumber);
  thm3->add_option("--s0", thm3_cfg.s0, "First rung in units of the entry scale")->check(CLI::PositiveNumber);
  thm3->add_option("--rungs", thm3_cfg.rungs)->check(CLI::Range(2, 12));
  thm3->callback([&] {
    const CatalogEntry e = load_entry(o);
    const Thm3Report r = verify_thm3(e, thm3_tol, thm3_cfg);
    emit(o, "thm3-" + e.name, envelope("thm3", &e, to_json(r, e)));
    emit_csv(o, "thm3-" + e.name, [&r](std::ostream& os) { write_thm3_csv(r, os); });
    result = gate(r.pass);
  });

  double t2 = 2.0, s2 = 1.0;
  auto* thm2 = app.add_subcommand("thm2", "Measured constant of the energy bound");
  add_metric(thm2);
  thm2->add_option("--t", t2)->check(CLI::PositiveNumber);
  thm2->add_option("--s", s2)->check(CLI::PositiveNumber);
  thm2->callback([&] {
    const CatalogEntry e = load_entry(o);
    ProbeConfig cfg;
    cfg.seed = o.seed;
    emit(o, "thm2-" + e.name, envelope("thm2", &e, to_json(thm2_bound(e, t2, s2, cfg))));
  });

  int eta_k = 200, eta_first = 1;
  auto* eta = app.add_subcommand("eta", "The iteration sequence eta_i");
  eta->add_option("--k", eta_k)->check(CLI::PositiveNumber);
  eta->add_option("--first-index", eta_first);
  eta->callback([&] {
    const EtaReport r = eta_sequence(eta_k, eta_first);
    emit(o, "eta", envelope("eta", nullptr, to_json(r)));
    emit_csv(o, "eta", [&r](std::ostream& os) { write_eta_csv(r, os); });
  });

  std::string point_text;
  double probe_s = 1.0, epsilon0 = 1e-2;
  auto* probe = app.add_subcommand("probe", "Scale-dependent estimators at a point");
  probe->require_subcommand(1);
  auto probe_run = [&](const std::string& what) {
    const CatalogEntry e = load_entry(o);
    ProbeConfig cfg;
    cfg.seed = o.seed;
    cfg.epsilon0 = epsilon0;
    cfg.s_cap = probe_s;
    const auto space = make_probe_space(e, cfg);
    const ProbePoint p = parse_list(point_text);
    if (static_cast<int>(p.size()) != space->dimension()) {
      throw UsageError("--point needs " + std::to_string(space->dimension()) + " coordinates");
    }
    Json j;
    if (what == "curvature-radius") {
      j = to_json(curvature_radius(*space, p, probe_s, cfg));
    } else if (what == "energy-radius") {
      j = to_json(energy_radius(*space, p, probe_s, cfg));
    } else if (what == "variation") {
      j = to_json(local_variation(*space, p, cfg));
    } else {
      auto rm2 = [&space](const ProbePoint& q) {
        const double v = space->value(ProbeField::norm_rm, q);
        return v * v;
      };
      j = {{"maximal_rm_sq", tagged(maximal_function(*space, rm2, p, probe_s, cfg))}};
    }
    Json point = Json::array();
    for (double x : p) point.push_back(tagged(x, Provenance::trivial));
    j["point"] = point;
    j["s"] = tagged(probe_s, Provenance::trivial);
    emit(o, "probe-" + what + "-" + e.name, envelope("probe " + what, &e, j));
  };
  for (const char* name : {"curvature-radius", "energy-radius", "variation", "maximal"}) {
    auto* sub = probe->add_subcommand(name);
    add_metric(sub);
    sub->add_option("--point", point_text, "Chart coordinates, comma-separated")->required();
    sub->add_option("--s", probe_s)->check(CLI::PositiveNumber);
    sub->add_option("--epsilon0", epsilon0)->check(CLI::PositiveNumber);
    sub->callback([&probe_run, name] { probe_run(name); });
  }

  std::string profile_out;
  double t_max = 20.0;
  int profile_n = 200;
  auto* profile = app.add_subcommand("profile", "Radial volume and energy profile as CSV");
  add_metric(profile);
  profile->add_option("--out", profile_out, "CSV file")->required();
  profile->add_option("--t-max", t_max, "Largest geodesic radius")->check(CLI::PositiveNumber);
  profile->add_option("--n", profile_n)->check(CLI::Range(2, 100000));
  profile->callback([&] {
    const CatalogEntry e = load_entry(o);
    const RadialModel model(e);
    const RadialProfile prof = model.profile(t_max, profile_n);
    std::ofstream os(profile_out);
    if (!os) throw UsageError("cannot write '" + profile_out + "'");
    prof.write_csv(os);
    const Json j = {{"file", profile_out},
                    {"rows", tagged(profile_n, Provenance::trivial)},
                    {"t_max", tagged(t_max, Provenance::trivial)},
                    {"columns", {"r", "geodesic_r", "shell_volume", "shell_energy"}}};
    emit(o, "profile-" + e.name, envelope("profile", &e, j));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    print_error("usage", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    print_error("domain", e.what());
    return kExitDomain;
  } catch (const DegenerateError& e) {
    print_error("degenerate", e.what());
    return kExitDomain;
  } catch (const VerificationError& e) {
    print_error("verification", e.what());
    return kExitVerification;
  }
  return result;
}
