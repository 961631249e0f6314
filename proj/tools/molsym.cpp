// Command-line front end: minimize / modes / symmetry / verify-paper with
// machine-readable JSON reports on stdout (or --output <path>).
//
// Exit codes: 0 success, 1 check failure, 2 input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>  // vendored nlohmann/json
#include <optional>
#include <sstream>

#include "molsym/equilibria.hpp"
#include "molsym/molecule_io.hpp"
#include "molsym/optimizer.hpp"
#include "molsym/strata.hpp"
#include "molsym/symmetry.hpp"
#include "molsym/verify.hpp"
#include "molsym/vibrations.hpp"

namespace {

using molsym::Configuration;
using nlohmann::json;

std::string fnv1a64(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

struct CommonOptions {
  std::string spec_file;
  std::string builtin;
  std::string config_file;
  std::string units_override;
  std::string output;
  std::uint64_t seed = 1729;
  int starts = 64;
  double tol = 1e-10;
};

struct LoadedInput {
  molsym::ParsedSpec spec;
  std::string digest;
};

LoadedInput load_input(const CommonOptions& opts) {
  LoadedInput input;
  if (!opts.spec_file.empty()) {
    input.spec = molsym::load_spec_file(opts.spec_file);
    std::ifstream in(opts.spec_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    input.digest = fnv1a64(buffer.str());
  } else {
    input.spec = molsym::builtin_spec(opts.builtin.empty() ? "x3" : opts.builtin);
    input.digest = fnv1a64("builtin:" + (opts.builtin.empty() ? "x3" : opts.builtin));
  }
  if (opts.units_override == "SI") input.spec.units = molsym::UnitSystem::si();
  else if (opts.units_override == "reduced") input.spec.units = molsym::UnitSystem::reduced();
  else if (!opts.units_override.empty())
    throw molsym::ParseError("--units must be \"SI\" or \"reduced\"");
  return input;
}

json positions_json(const Configuration& config) {
  json arr = json::array();
  for (const auto& p : config.positions) arr.push_back({p.x(), p.y(), p.z()});
  return arr;
}

json signature_json(const molsym::PairSignature& sig) {
  json arr = json::array();
  for (const auto& [label, d] : sig.entries) arr.push_back({label, d});
  return arr;
}

json point_group_json(const molsym::PointGroupReport& group) {
  json j;
  j["name"] = group.name;
  j["continuous"] = group.continuous;
  j["order"] = group.order;
  j["element_count"] = group.elements.size();
  if (group.continuous) {
    j["axis"] = {group.axis.x(), group.axis.y(), group.axis.z()};
    j["horizontal_flip"] = group.horizontal_flip;
  }
  return j;
}

int emit(const json& report, const std::string& output, int exit_code) {
  const std::string text = report.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write output file '" << output << "'\n";
      return 2;
    }
    out << text;
  }
  return exit_code;
}

json base_report(const std::string& command, const LoadedInput& input,
                 const CommonOptions& opts) {
  json report;
  report["command"] = command;
  report["input_digest"] = input.digest;
  report["units"] = input.spec.units.name();
  report["seed"] = opts.seed;
  report["checks"] = json::array();
  report["results"] = json::object();
  return report;
}

void add_check(json& report, const std::string& name, bool pass, const std::string& detail) {
  report["checks"].push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
}

bool all_checks_pass(const json& report) {
  for (const auto& c : report["checks"])
    if (!c["pass"].get<bool>()) return false;
  return true;
}

json catalog_entry_json(const molsym::PotentialModel& model,
                        const molsym::CatalogEntry& entry, json& warnings) {
  json j;
  j["classification"] = to_string(entry.point.kind);
  j["value"] = entry.point.value;
  j["gradient_norm"] = entry.point.gradient_norm;
  j["zero_modes"] = entry.point.zero_modes;
  j["hits"] = entry.hits;
  j["iterations"] = entry.point.iterations;
  j["positions"] = positions_json(entry.point.configuration);
  j["signature"] = signature_json(entry.point.signature);
  json eig = json::array();
  for (int i = 0; i < entry.point.eigenvalues.size(); ++i)
    eig.push_back(entry.point.eigenvalues(i));
  j["eigenvalues"] = eig;

  const auto group = molsym::detect_point_group(model.spec(), entry.point.configuration);
  j["point_group"] = group.name;
  try {
    const auto stratum =
        molsym::classify_stratum(model.spec(), entry.point.configuration);
    if (stratum.catalogued) {
      j["stratum"] = {{"label", stratum.entry->stratum_label},
                      {"symmetry", stratum.entry->symmetry},
                      {"maximally_peripheral", stratum.entry->maximally_peripheral}};
    } else {
      j["stratum"] = nullptr;
      warnings.push_back("uncatalogued stratum with symmetry " + stratum.detected_symmetry);
    }
  } catch (const molsym::UnsupportedError& e) {
    j["stratum"] = nullptr;
    warnings.push_back(std::string("strata unsupported: ") + e.what());
  }
  return j;
}

molsym::StationaryCatalog run_catalog(const molsym::PotentialModel& model,
                                      const molsym::ParsedSpec& spec,
                                      const CommonOptions& opts) {
  molsym::OptimizerOptions oopts;
  oopts.gradient_tolerance = opts.tol;
  oopts.seed = opts.seed;
  molsym::StationaryCatalog catalog =
      molsym::multistart_search(model, opts.starts, opts.seed, oopts);
  if (spec.initial_configuration) {
    try {
      molsym::StationaryPoint sp =
          molsym::find_stationary_point(model, *spec.initial_configuration, oopts);
      bool merged = false;
      for (auto& entry : catalog.entries)
        if (entry.point.signature.matches(sp.signature, 1e-5)) {
          ++entry.hits;
          merged = true;
          break;
        }
      if (!merged) catalog.entries.push_back(molsym::CatalogEntry{std::move(sp), 1});
      ++catalog.total_starts;
    } catch (const molsym::Error&) {
      ++catalog.failed_starts;
      ++catalog.total_starts;
    }
  }
  return catalog;
}

int cmd_minimize(const CommonOptions& opts) {
  const LoadedInput input = load_input(opts);
  const molsym::PotentialModel model = input.spec.model();
  json report = base_report("minimize", input, opts);
  report["starts"] = opts.starts;

  const auto catalog = run_catalog(model, input.spec, opts);
  json warnings = json::array();
  json entries = json::array();
  const double tol_abs =
      opts.tol * (model.units().is_si() ? model.gradient_scale() : 1.0);
  for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
    entries.push_back(catalog_entry_json(model, catalog.entries[i], warnings));
    const double gn = model.gradient(catalog.entries[i].point.configuration).norm();
    add_check(report, "entry" + std::to_string(i) + "_gradient", gn <= 10.0 * tol_abs,
              "re-evaluated |grad| = " + std::to_string(gn));
  }
  add_check(report, "catalog_nonempty", !catalog.entries.empty(),
            std::to_string(catalog.entries.size()) + " distinct stationary points");
  report["results"]["catalog"] = entries;
  report["results"]["failed_starts"] = catalog.failed_starts;
  report["results"]["total_starts"] = catalog.total_starts;
  report["results"]["warnings"] = warnings;
  return emit(report, opts.output, all_checks_pass(report) ? 0 : 1);
}

int cmd_modes(const CommonOptions& opts) {
  const LoadedInput input = load_input(opts);
  const molsym::PotentialModel model = input.spec.model();
  json report = base_report("modes", input, opts);

  const auto catalog = run_catalog(model, input.spec, opts);
  json minima = json::array();
  for (const auto& entry : catalog.entries) {
    if (entry.point.kind != molsym::StationaryKind::Minimum) continue;
    const auto group =
        molsym::detect_point_group(model.spec(), entry.point.configuration);
    const auto modes =
        molsym::normal_modes(model, entry.point.configuration, group);
    json jmodes = json::array();
    for (const auto& mode : modes.modes) {
      json jm;
      jm["omega"] = mode.omega;
      jm["irrep"] = mode.irrep;
      if (mode.wavenumber) jm["wavenumber_cm"] = *mode.wavenumber;
      else jm["wavenumber_cm"] = nullptr;
      jmodes.push_back(jm);
    }
    minima.push_back({{"value", entry.point.value},
                      {"point_group", group.name},
                      {"positions", positions_json(entry.point.configuration)},
                      {"zero_modes", modes.zero_modes},
                      {"modes", jmodes}});
  }
  report["results"]["minima"] = minima;
  add_check(report, "minimum_found", !minima.empty(),
            std::to_string(minima.size()) + " minima in catalog");
  return emit(report, opts.output, all_checks_pass(report) ? 0 : 1);
}

int cmd_symmetry(const CommonOptions& opts) {
  const LoadedInput input = load_input(opts);
  const molsym::PotentialModel model = input.spec.model();
  json report = base_report("symmetry", input, opts);

  Configuration config;
  if (!opts.config_file.empty()) config = molsym::load_configuration_file(opts.config_file);
  else if (input.spec.initial_configuration) config = *input.spec.initial_configuration;
  else throw molsym::ParseError("symmetry command needs --config or initial_configuration");

  const auto group = molsym::detect_point_group(model.spec(), config);
  report["results"]["point_group"] = point_group_json(group);

  try {
    const auto decomp = molsym::irrep_decomposition(group, model.spec());
    json jd = json::object();
    for (const auto& [label, n] : decomp.multiplicities) jd[label] = n;
    report["results"]["irrep_decomposition"] = jd;
  } catch (const molsym::UnsupportedError&) {
    report["results"]["irrep_decomposition"] = nullptr;
  }
  const int mult = molsym::totally_symmetric_multiplicity(group, model.spec(), config);
  report["results"]["totally_symmetric_multiplicity"] = mult;
  add_check(report, "totally_symmetric_theorem", mult >= 1,
            "multiplicity = " + std::to_string(mult));

  const auto commutation =
      molsym::verify_hessian_commutation(model.hessian(config), group.elements, 1e-8);
  json jres = json::array();
  for (double r : commutation.residuals) jres.push_back(r);
  report["results"]["hessian_commutation"] = {{"residuals", jres},
                                              {"pass", commutation.pass}};
  add_check(report, "hessian_commutation", commutation.pass,
            "max residual over " + std::to_string(commutation.residuals.size()) +
                " elements");
  return emit(report, opts.output, all_checks_pass(report) ? 0 : 1);
}

int cmd_verify_paper(const CommonOptions& opts, const std::string& only) {
  json report;
  report["command"] = "verify-paper";
  report["input_digest"] = fnv1a64("builtin:verify-paper");
  report["units"] = "mixed";
  report["seed"] = opts.seed;
  report["checks"] = json::array();
  report["results"] = json::object();

  molsym::VerifyOptions vopts;
  vopts.seed = opts.seed;
  vopts.only = only;
  const auto results = molsym::run_builtin_checks(vopts);
  bool all_pass = true;
  for (const auto& r : results) {
    report["checks"].push_back({{"name", r.name},
                                {"pass", r.pass},
                                {"detail", r.detail},
                                {"duration_ms", r.duration_ms}});
    std::cerr << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " — " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  report["results"]["checks_run"] = results.size();
  return emit(report, opts.output, all_pass && !results.empty() ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model nuclear potentials: stationary points, point groups, strata, vibrations"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string only;

  auto add_common = [&](CLI::App* cmd, bool with_model_inputs) {
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--output", opts.output, "write the JSON report to a file");
    if (with_model_inputs) {
      cmd->add_option("--spec", opts.spec_file, "molecule spec JSON file");
      cmd->add_option("--builtin", opts.builtin, "built-in spec name");
      cmd->add_option("--units", opts.units_override, "override units: SI or reduced");
      cmd->add_option("--tol", opts.tol, "gradient tolerance");
    }
  };

  CLI::App* minimize = app.add_subcommand("minimize", "multistart stationary-point catalog");
  add_common(minimize, true);
  minimize->add_option("--starts", opts.starts, "number of multistart samples");

  CLI::App* modes = app.add_subcommand("modes", "normal modes at every catalog minimum");
  add_common(modes, true);
  modes->add_option("--starts", opts.starts, "number of multistart samples");

  CLI::App* symmetry = app.add_subcommand("symmetry", "point group of a configuration");
  add_common(symmetry, true);
  symmetry->add_option("--config", opts.config_file, "configuration JSON file");

  CLI::App* verify = app.add_subcommand("verify-paper", "run the built-in verification suite");
  add_common(verify, false);
  verify->add_option("--only", only, "run only checks whose name contains this substring");

  CLI11_PARSE(app, argc, argv);

  try {
    if (minimize->parsed()) return cmd_minimize(opts);
    if (modes->parsed()) return cmd_modes(opts);
    if (symmetry->parsed()) return cmd_symmetry(opts);
    if (verify->parsed()) return cmd_verify_paper(opts, only);
  } catch (const molsym::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const molsym::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
