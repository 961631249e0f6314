#pragma once

#include <optional>
#include <string>
#include <vector>

#include "molsym/equilibria.hpp"
#include "molsym/molecule.hpp"

namespace molsym {

/// Minimal integrity basis values for an XY pair (distinct species, no
/// permutation): theta1 = R1^2, theta2 = R2^2, theta3 = R1.R2.
struct MibValuesXY {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

/// MIB values for X2 (identical pair, swap allowed):
/// theta1 = R1^2 + R2^2, theta2 = R1.R2, theta3 = R1^2 R2^2.
struct MibValuesX2 {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

struct OrbitParamsXY {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> alpha;  // undefined when a or b vanishes
};

MibValuesXY mib_xy(const Configuration& config);
OrbitParamsXY orbit_params_xy(const Configuration& config);

/// "Sigma1" (Cs), "Sigma2" (Cinfv) or "Sigma3" (O3). Positions are taken
/// relative to the origin as given; no centering.
std::string classify_stratum_xy(const Configuration& config, double tol = 1e-12);

MibValuesX2 mib_x2(const MoleculeSpec& spec, const Configuration& config);

struct StratumEntry {
  MoleculeType type;
  std::string stratum_label;
  std::string symmetry;
  bool maximally_peripheral = false;
  std::string description;
};

/// The shipped orbit-type catalog for one molecule type.
const std::vector<StratumEntry>& stratum_catalog(MoleculeType type);

struct StratumClassification {
  std::optional<StratumEntry> entry;  // empty when the symmetry is uncatalogued
  std::string detected_symmetry;
  bool catalogued = false;
};

/// Detects the point group of the mass-centered configuration and looks the
/// symmetry name up in the catalog. Unknown symmetry names are reported, not
/// fatal.
StratumClassification classify_stratum(const MoleculeSpec& spec, const Configuration& config,
                                       double tol = -1.0);

/// The embedded JSON document (identical to the installed data file).
std::string strata_catalog_json();

}  // namespace molsym
