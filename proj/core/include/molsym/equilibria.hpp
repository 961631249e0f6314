#pragma once

#include <map>
#include <optional>
#include <string>

#include "molsym/molecule.hpp"
#include "molsym/units.hpp"

namespace molsym {

enum class MoleculeType { XY, X2, XY2, X3, XY3, X4 };

std::string to_string(MoleculeType type);
std::optional<MoleculeType> parse_molecule_type(const std::string& name);
/// Pattern-match the species blocks onto one of the supported types.
std::optional<MoleculeType> classify_molecule_type(const MoleculeSpec& spec);

/// Closed-form equilibrium geometry of one of the model molecule types,
/// with geometric-realizability and (where applicable) stability flags.
struct AnalyticEquilibrium {
  MoleculeType type;
  std::string label;
  std::map<std::string, double> distances;
  std::string symmetry;
  bool feasible = true;
  std::optional<bool> stable;
};

/// [k_C q1 q2 / (2a)]^(1/3); requires a > 0.
double diatomic_bond_length(double q1, double q2, double a, const UnitSystem& units);

/// C2v minimum: d_XY = [k_C qQ/(2 a1)]^(1/3), d_YY = [k_C Q^2/(2 c1)]^(1/3).
/// Feasible only when the isoceles triangle is realizable (d_YY < 2 d_XY).
AnalyticEquilibrium xy2_bent_geometry(double q, double Q, double a1, double c1,
                                      const UnitSystem& units);

/// Centered linear configuration: d_XY = [k_C (qQ + Q^2/4)/(2(a1 + 2c1))]^(1/3).
AnalyticEquilibrium xy2_linear_geometry(double q, double Q, double a1, double c1,
                                        const UnitSystem& units);

/// Stability window of the linear XY2 configuration:
/// a1 > 0 and a1 Q/(8q) > c1 > -a1/2.
bool xy2_linear_stable(double q, double Q, double a1, double c1);

/// Equilateral side [k_C q^2/(2 a2)]^(1/3); requires a2 > 0.
double x3_triangle_side(double q, double a2, const UnitSystem& units);

/// The linear-XY2 stability window is empty once q = Q and a1 = c1 = a2:
/// it would require a2/8 > a2. Returned record carries the contradiction.
struct X3LinearInstability {
  bool window_empty = true;
  double required_upper_ratio = 0.125;  // c1/a2 must be below this
  double actual_ratio = 1.0;            // c1/a2 for X3
  std::string detail;
};
X3LinearInstability x3_linear_is_unstable();

/// C3v pyramid: d_XY = [k_C qQ/(2 a3)]^(1/3), d_YY = [k_C Q^2/(2 c3)]^(1/3);
/// feasible only if the apex sits strictly off the Y plane (d_YY < sqrt(3) d_XY).
AnalyticEquilibrium xy3_pyramidal_geometry(double q, double Q, double a3, double c3,
                                           const UnitSystem& units);

/// D3h planar: center-to-vertex [k_C (qQ + Q^2/sqrt(3))/(2(a3 + 3c3))]^(1/3);
/// stable iff a3 > 0 and a3 Q/(3 sqrt(3) q) > c3 > -a3/3.
AnalyticEquilibrium xy3_planar_geometry(double q, double Q, double a3, double c3,
                                        const UnitSystem& units);

/// Tetrahedron edge [k_C q^2/(2 a4)]^(1/3); requires a4 > 0.
double x4_tetrahedron_edge(double q, double a4, const UnitSystem& units);

// Geometry builders. Orientation conventions: principal axis along z; for the
// bent XY2 the C2 axis is z and the molecular plane is yz. Positions are as
// constructed (not mass-centered); use centered() before symmetry detection.

Configuration diatomic_configuration(double d);                 // (0,0,0), (0,0,d)
Configuration x2_configuration(double d);                       // (0,0,+-d/2)
Configuration xy2_bent_configuration(double d_xy, double d_yy); // X first
Configuration xy2_linear_configuration(double d_xy);            // X at origin
Configuration x3_triangle_configuration(double side);
Configuration x3_linear_configuration(double half_spacing);     // (0, +-d) on z
Configuration xy3_pyramidal_configuration(double d_xy, double d_yy);
Configuration xy3_planar_configuration(double d_xy);
Configuration x4_tetrahedron_configuration(double edge);
Configuration x4_square_configuration(double side);
Configuration x4_centered_triangle_configuration(double radius);
Configuration x4_linear_configuration(double inner, double outer);  // (+-inner, +-outer) on z

}  // namespace molsym
