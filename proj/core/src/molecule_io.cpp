#include "molsym/molecule_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>  // vendored nlohmann/json
#include <sstream>

namespace molsym {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_number())
    throw ParseError(where + ": missing or non-numeric field '" + field + "'");
  return j[field].get<double>();
}

std::string require_string(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(where + ": missing or non-string field '" + field + "'");
  return j[field].get<std::string>();
}

Configuration positions_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of [x,y,z] triples");
  Configuration config;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
        !p[2].is_number())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected [x,y,z]");
    config.positions.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  }
  return config;
}

}  // namespace

ParsedSpec parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec file: top level must be an object");

  ParsedSpec spec;
  if (!doc.contains("species") || !doc["species"].is_array() || doc["species"].empty())
    throw ParseError("spec file: 'species' must be a non-empty array");
  for (std::size_t i = 0; i < doc["species"].size(); ++i) {
    const auto& js = doc["species"][i];
    const std::string where = "species[" + std::to_string(i) + "]";
    Species s;
    s.label = require_string(js, "label", where);
    s.charge = require_number(js, "charge", where);
    s.mass = require_number(js, "mass", where);
    const double count = require_number(js, "count", where);
    if (count != std::floor(count) || count < 1)
      throw ParseError(where + ": 'count' must be a positive integer");
    s.count = static_cast<int>(count);
    spec.species.push_back(std::move(s));
  }

  const std::string units = doc.contains("units")
                                ? require_string(doc, "units", "spec file")
                                : "reduced";
  if (units == "SI") spec.units = UnitSystem::si();
  else if (units == "reduced") spec.units = UnitSystem::reduced();
  else throw ParseError("spec file: 'units' must be \"SI\" or \"reduced\"");

  if (!doc.contains("coefficients") || !doc["coefficients"].is_array())
    throw ParseError("spec file: 'coefficients' must be an array");
  for (std::size_t i = 0; i < doc["coefficients"].size(); ++i) {
    const auto& jc = doc["coefficients"][i];
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    if (!jc.contains("pair") || !jc["pair"].is_array() || jc["pair"].size() != 2 ||
        !jc["pair"][0].is_string() || !jc["pair"][1].is_string())
      throw ParseError(where + ": 'pair' must be two species labels");
    const double value = require_number(jc, "value", where);
    spec.coefficients.set(jc["pair"][0].get<std::string>(), jc["pair"][1].get<std::string>(),
                          value);
  }

  if (doc.contains("initial_configuration"))
    spec.initial_configuration =
        positions_from_json(doc["initial_configuration"], "initial_configuration");

  // Fails early on invalid species or missing pair coefficients.
  spec.model();
  if (spec.initial_configuration &&
      spec.initial_configuration->size() != spec.molecule().nucleus_count())
    throw ParseError("initial_configuration: nucleus count does not match species counts");
  return spec;
}

ParsedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_spec_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string spec_to_json(const ParsedSpec& spec) {
  json doc;
  doc["species"] = json::array();
  for (const auto& s : spec.species)
    doc["species"].push_back(
        {{"label", s.label}, {"charge", s.charge}, {"mass", s.mass}, {"count", s.count}});
  doc["units"] = spec.units.name();
  doc["coefficients"] = json::array();
  for (const auto& [pair, value] : spec.coefficients.values())
    doc["coefficients"].push_back({{"pair", {pair.first, pair.second}}, {"value", value}});
  if (spec.initial_configuration) {
    json arr = json::array();
    for (const auto& p : spec.initial_configuration->positions)
      arr.push_back({p.x(), p.y(), p.z()});
    doc["initial_configuration"] = arr;
  }
  return doc.dump(2);
}

Configuration parse_configuration_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("positions"))
    return positions_from_json(doc["positions"], "positions");
  return positions_from_json(doc, "configuration");
}

Configuration load_configuration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open configuration file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_configuration_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

PotentialModel one_species_model(double q, double coeff, int count, const UnitSystem& units,
                                 double m) {
  MoleculeSpec spec({Species{"X", q, m, count}});
  ModelCoefficients coeffs;
  coeffs.set("X", "X", coeff);
  return PotentialModel(std::move(spec), std::move(coeffs), units);
}

PotentialModel two_species_model(double q, double Q, double a, double c, int y_count,
                                 const UnitSystem& units, double m_x, double m_y) {
  MoleculeSpec spec({Species{"X", q, m_x, 1}, Species{"Y", Q, m_y, y_count}});
  ModelCoefficients coeffs;
  coeffs.set("X", "Y", a);
  if (y_count >= 2) coeffs.set("Y", "Y", c);
  return PotentialModel(std::move(spec), std::move(coeffs), units);
}

}  // namespace

PotentialModel make_xy_model(double q1, double q2, double a, const UnitSystem& units, double m1,
                             double m2) {
  MoleculeSpec spec({Species{"X", q1, m1, 1}, Species{"Y", q2, m2, 1}});
  ModelCoefficients coeffs;
  coeffs.set("X", "Y", a);
  return PotentialModel(std::move(spec), std::move(coeffs), units);
}

PotentialModel make_x2_model(double q, double a, const UnitSystem& units, double m) {
  return one_species_model(q, a, 2, units, m);
}

PotentialModel make_xy2_model(double q, double Q, double a1, double c1, const UnitSystem& units,
                              double m_x, double m_y) {
  return two_species_model(q, Q, a1, c1, 2, units, m_x, m_y);
}

PotentialModel make_x3_model(double q, double a2, const UnitSystem& units, double m) {
  return one_species_model(q, a2, 3, units, m);
}

PotentialModel make_xy3_model(double q, double Q, double a3, double c3, const UnitSystem& units,
                              double m_x, double m_y) {
  return two_species_model(q, Q, a3, c3, 3, units, m_x, m_y);
}

PotentialModel make_x4_model(double q, double a4, const UnitSystem& units, double m) {
  return one_species_model(q, a4, 4, units, m);
}

namespace {

ParsedSpec spec_from_model(const PotentialModel& model) {
  ParsedSpec spec;
  spec.species = model.spec().species();
  spec.coefficients = model.coefficients();
  spec.units = model.units();
  return spec;
}

}  // namespace

const std::vector<std::string>& builtin_spec_names() {
  static const std::vector<std::string> names = {
      "xy", "x2", "xy2-bent", "xy2-linear", "x3", "xy3-pyramidal", "xy3-planar", "x4", "h2-si"};
  return names;
}

ParsedSpec builtin_spec(const std::string& name) {
  if (name == "xy") return spec_from_model(make_xy_model(1.0, 1.0, 0.5, UnitSystem::reduced(), 1.0, 2.0));
  if (name == "x2") return spec_from_model(make_x2_model(1.0, 0.5));
  if (name == "xy2-bent")
    return spec_from_model(make_xy2_model(1.0, 1.0, 0.5, 0.5, UnitSystem::reduced(), 16.0, 1.0));
  if (name == "xy2-linear")
    return spec_from_model(make_xy2_model(4.0, 1.0, 1.0, 0.01, UnitSystem::reduced(), 12.0, 16.0));
  if (name == "x3") return spec_from_model(make_x3_model(1.0, 0.5));
  if (name == "xy3-pyramidal")
    return spec_from_model(make_xy3_model(1.0, 1.0, 0.5, 2.0, UnitSystem::reduced(), 14.0, 1.0));
  if (name == "xy3-planar")
    return spec_from_model(make_xy3_model(9.0, 1.0, 1.0, 0.01, UnitSystem::reduced(), 11.0, 1.0));
  if (name == "x4") return spec_from_model(make_x4_model(1.0, 0.5));
  if (name == "h2-si") {
    // Coefficient chosen so the model minimum sits at the H2 bond length.
    const UnitSystem si = UnitSystem::si();
    const double bond = 0.07414e-9;
    const double a = si.coulomb_coupling(1.0, 1.0) / (2.0 * bond * bond * bond);
    return spec_from_model(make_x2_model(1.0, a, si, 1.007276));
  }
  throw ParseError("unknown builtin spec '" + name + "'");
}

}  // namespace molsym
