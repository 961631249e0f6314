#pragma once

#include <optional>
#include <string>
#include <vector>

#include "molsym/potential.hpp"

namespace molsym {

/// Everything a molecule spec file carries.
struct ParsedSpec {
  std::vector<Species> species;
  ModelCoefficients coefficients;
  UnitSystem units = UnitSystem::reduced();
  std::optional<Configuration> initial_configuration;

  MoleculeSpec molecule() const { return MoleculeSpec(species); }
  PotentialModel model() const { return PotentialModel(molecule(), coefficients, units); }
};

/// Parse the spec-file schema:
/// {"species":[{"label","charge","mass","count"}...],
///  "units":"SI"|"reduced",
///  "coefficients":[{"pair":["X","Y"],"value":...}...],
///  "initial_configuration":[[x,y,z],...]}    (optional)
ParsedSpec parse_spec_json(const std::string& text);
ParsedSpec load_spec_file(const std::string& path);
std::string spec_to_json(const ParsedSpec& spec);

/// A configuration file: either [[x,y,z],...] or {"positions":[[x,y,z],...]}.
Configuration parse_configuration_json(const std::string& text);
Configuration load_configuration_file(const std::string& path);

// Model builders for the supported molecule types (reduced units by default).
// Species labels are "X" and "Y"; X comes first in the nucleus ordering.
PotentialModel make_xy_model(double q1, double q2, double a,
                             const UnitSystem& units = UnitSystem::reduced(),
                             double m1 = 1.0, double m2 = 1.0);
PotentialModel make_x2_model(double q, double a,
                             const UnitSystem& units = UnitSystem::reduced(), double m = 1.0);
PotentialModel make_xy2_model(double q, double Q, double a1, double c1,
                              const UnitSystem& units = UnitSystem::reduced(),
                              double m_x = 1.0, double m_y = 1.0);
PotentialModel make_x3_model(double q, double a2,
                             const UnitSystem& units = UnitSystem::reduced(), double m = 1.0);
PotentialModel make_xy3_model(double q, double Q, double a3, double c3,
                              const UnitSystem& units = UnitSystem::reduced(),
                              double m_x = 1.0, double m_y = 1.0);
PotentialModel make_x4_model(double q, double a4,
                             const UnitSystem& units = UnitSystem::reduced(), double m = 1.0);

/// Specs shipped in the binary so `verify-paper` and `--builtin` need no files.
const std::vector<std::string>& builtin_spec_names();
ParsedSpec builtin_spec(const std::string& name);

}  // namespace molsym
