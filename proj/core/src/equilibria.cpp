#include "molsym/equilibria.hpp"

#include <cmath>
#include <numbers>

namespace molsym {

namespace {
constexpr double kSqrt3 = std::numbers::sqrt3;
}

std::string to_string(MoleculeType type) {
  switch (type) {
    case MoleculeType::XY: return "XY";
    case MoleculeType::X2: return "X2";
    case MoleculeType::XY2: return "XY2";
    case MoleculeType::X3: return "X3";
    case MoleculeType::XY3: return "XY3";
    case MoleculeType::X4: return "X4";
  }
  return "?";
}

std::optional<MoleculeType> parse_molecule_type(const std::string& name) {
  if (name == "XY") return MoleculeType::XY;
  if (name == "X2") return MoleculeType::X2;
  if (name == "XY2") return MoleculeType::XY2;
  if (name == "X3") return MoleculeType::X3;
  if (name == "XY3") return MoleculeType::XY3;
  if (name == "X4") return MoleculeType::X4;
  return std::nullopt;
}

std::optional<MoleculeType> classify_molecule_type(const MoleculeSpec& spec) {
  const auto& sp = spec.species();
  if (sp.size() == 1) {
    if (sp[0].count == 2) return MoleculeType::X2;
    if (sp[0].count == 3) return MoleculeType::X3;
    if (sp[0].count == 4) return MoleculeType::X4;
    return std::nullopt;
  }
  if (sp.size() == 2) {
    // X is the singleton species; Y the repeated one. Species order is free.
    const Species* x = nullptr;
    const Species* y = nullptr;
    if (sp[0].count == 1) { x = &sp[0]; y = &sp[1]; }
    else if (sp[1].count == 1) { x = &sp[1]; y = &sp[0]; }
    if (x == nullptr) return std::nullopt;
    if (y->count == 1) return MoleculeType::XY;
    if (y->count == 2) return MoleculeType::XY2;
    if (y->count == 3) return MoleculeType::XY3;
  }
  return std::nullopt;
}

double diatomic_bond_length(double q1, double q2, double a, const UnitSystem& units) {
  if (!(a > 0.0)) throw NoSolutionError("diatomic potential has no minimum for a <= 0");
  return std::cbrt(units.coulomb_coupling(q1, q2) / (2.0 * a));
}

AnalyticEquilibrium xy2_bent_geometry(double q, double Q, double a1, double c1,
                                      const UnitSystem& units) {
  if (!(a1 > 0.0) || !(c1 > 0.0))
    throw NoSolutionError("bent XY2 equilibrium requires a1 > 0 and c1 > 0");
  AnalyticEquilibrium eq;
  eq.type = MoleculeType::XY2;
  eq.label = "xy2-bent";
  eq.symmetry = "C2v";
  const double d_xy = std::cbrt(units.coulomb_coupling(q, Q) / (2.0 * a1));
  const double d_yy = std::cbrt(units.coulomb_coupling(Q, Q) / (2.0 * c1));
  eq.distances = {{"d_xy", d_xy}, {"d_yy", d_yy}};
  eq.feasible = d_yy < 2.0 * d_xy;
  return eq;
}

AnalyticEquilibrium xy2_linear_geometry(double q, double Q, double a1, double c1,
                                        const UnitSystem& units) {
  if (!(a1 + 2.0 * c1 > 0.0))
    throw NoSolutionError("linear XY2 equilibrium requires a1 + 2 c1 > 0");
  AnalyticEquilibrium eq;
  eq.type = MoleculeType::XY2;
  eq.label = "xy2-linear";
  eq.symmetry = "Dinfh";
  const double numer = units.coulomb_coupling(q, Q) + units.coulomb_coupling(Q, Q) / 4.0;
  const double d_xy = std::cbrt(numer / (2.0 * (a1 + 2.0 * c1)));
  eq.distances = {{"d_xy", d_xy}};
  eq.stable = xy2_linear_stable(q, Q, a1, c1);
  return eq;
}

bool xy2_linear_stable(double q, double Q, double a1, double c1) {
  return a1 > 0.0 && c1 < a1 * Q / (8.0 * q) && c1 > -a1 / 2.0;
}

double x3_triangle_side(double q, double a2, const UnitSystem& units) {
  if (!(a2 > 0.0)) throw NoSolutionError("equilateral X3 requires a2 > 0");
  return std::cbrt(units.coulomb_coupling(q, q) / (2.0 * a2));
}

X3LinearInstability x3_linear_is_unstable() {
  X3LinearInstability record;
  record.detail =
      "linear X3 stability would require c1 < a1 Q/(8q), i.e. a2 < a2/8 with "
      "q = Q and a1 = c1 = a2; empty window";
  return record;
}

AnalyticEquilibrium xy3_pyramidal_geometry(double q, double Q, double a3, double c3,
                                           const UnitSystem& units) {
  if (!(a3 > 0.0) || !(c3 > 0.0))
    throw NoSolutionError("pyramidal XY3 equilibrium requires a3 > 0 and c3 > 0");
  AnalyticEquilibrium eq;
  eq.type = MoleculeType::XY3;
  eq.label = "xy3-pyramidal";
  eq.symmetry = "C3v";
  const double d_xy = std::cbrt(units.coulomb_coupling(q, Q) / (2.0 * a3));
  const double d_yy = std::cbrt(units.coulomb_coupling(Q, Q) / (2.0 * c3));
  eq.distances = {{"d_xy", d_xy}, {"d_yy", d_yy}};
  eq.feasible = d_yy < kSqrt3 * d_xy;
  return eq;
}

AnalyticEquilibrium xy3_planar_geometry(double q, double Q, double a3, double c3,
                                        const UnitSystem& units) {
  if (!(a3 + 3.0 * c3 > 0.0))
    throw NoSolutionError("planar XY3 equilibrium requires a3 + 3 c3 > 0");
  AnalyticEquilibrium eq;
  eq.type = MoleculeType::XY3;
  eq.label = "xy3-planar";
  eq.symmetry = "D3h";
  const double numer = units.coulomb_coupling(q, Q) + units.coulomb_coupling(Q, Q) / kSqrt3;
  const double d_xy = std::cbrt(numer / (2.0 * (a3 + 3.0 * c3)));
  eq.distances = {{"d_xy", d_xy}};
  eq.stable = a3 > 0.0 && c3 < a3 * Q / (3.0 * kSqrt3 * q) && c3 > -a3 / 3.0;
  return eq;
}

double x4_tetrahedron_edge(double q, double a4, const UnitSystem& units) {
  if (!(a4 > 0.0)) throw NoSolutionError("tetrahedral X4 requires a4 > 0");
  return std::cbrt(units.coulomb_coupling(q, q) / (2.0 * a4));
}

Configuration diatomic_configuration(double d) {
  return Configuration({{0.0, 0.0, 0.0}, {0.0, 0.0, d}});
}

Configuration x2_configuration(double d) {
  return Configuration({{0.0, 0.0, -d / 2.0}, {0.0, 0.0, d / 2.0}});
}

Configuration xy2_bent_configuration(double d_xy, double d_yy) {
  if (!(d_yy < 2.0 * d_xy))
    throw DomainError("bent XY2 geometry not realizable: d_yy >= 2 d_xy");
  const double h = std::sqrt(d_xy * d_xy - 0.25 * d_yy * d_yy);
  return Configuration({{0.0, 0.0, 0.0},
                        {0.0, -d_yy / 2.0, -h},
                        {0.0, d_yy / 2.0, -h}});
}

Configuration xy2_linear_configuration(double d_xy) {
  return Configuration({{0.0, 0.0, 0.0}, {0.0, 0.0, -d_xy}, {0.0, 0.0, d_xy}});
}

Configuration x3_triangle_configuration(double side) {
  const double r = side / kSqrt3;
  Configuration config;
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 3.0;
    config.positions.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
  }
  return config;
}

Configuration x3_linear_configuration(double half_spacing) {
  return Configuration(
      {{0.0, 0.0, -half_spacing}, {0.0, 0.0, 0.0}, {0.0, 0.0, half_spacing}});
}

Configuration xy3_pyramidal_configuration(double d_xy, double d_yy) {
  const double r = d_yy / kSqrt3;
  if (!(r < d_xy)) throw DomainError("pyramidal XY3 geometry not realizable: d_yy >= sqrt(3) d_xy");
  const double h = std::sqrt(d_xy * d_xy - r * r);
  Configuration config;
  config.positions.push_back({0.0, 0.0, h});
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 3.0;
    config.positions.push_back({r * std::cos(phi), r * std::sin(phi), 0.0});
  }
  return config;
}

Configuration xy3_planar_configuration(double d_xy) {
  Configuration config;
  config.positions.push_back({0.0, 0.0, 0.0});
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 3.0;
    config.positions.push_back({d_xy * std::cos(phi), d_xy * std::sin(phi), 0.0});
  }
  return config;
}

Configuration x4_tetrahedron_configuration(double edge) {
  const double s = edge / (2.0 * std::numbers::sqrt2);
  return Configuration({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}});
}

Configuration x4_square_configuration(double side) {
  const double r = side / std::numbers::sqrt2;
  return Configuration({{r, 0.0, 0.0}, {0.0, r, 0.0}, {-r, 0.0, 0.0}, {0.0, -r, 0.0}});
}

Configuration x4_centered_triangle_configuration(double radius) {
  Configuration config;
  config.positions.push_back({0.0, 0.0, 0.0});
  for (int k = 0; k < 3; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 3.0;
    config.positions.push_back({radius * std::cos(phi), radius * std::sin(phi), 0.0});
  }
  return config;
}

Configuration x4_linear_configuration(double inner, double outer) {
  if (!(0.0 < inner && inner < outer))
    throw DomainError("linear X4 requires 0 < inner < outer");
  return Configuration({{0.0, 0.0, -outer}, {0.0, 0.0, -inner},
                        {0.0, 0.0, inner}, {0.0, 0.0, outer}});
}

}  // namespace molsym
