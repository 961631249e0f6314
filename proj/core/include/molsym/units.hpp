#pragma once

#include <string>

namespace molsym {

/// CODATA-2018 constants. Values live here and nowhere else.
struct PhysicalConstants {
  double elementary_charge = 1.602176634e-19;     // C
  double vacuum_permittivity = 8.8541878128e-12;  // F/m
  double hbar = 1.054571817e-34;                  // J s
  double atomic_mass_unit = 1.66053906660e-27;    // kg
  double speed_of_light = 2.99792458e8;           // m/s
};

/// Unit conventions for potential evaluation and spectroscopy output.
///
/// Reduced mode: Coulomb constant k_C = 1, charges are dimensionless counts,
/// lengths and masses dimensionless. SI mode: lengths in m, energies in J,
/// charges given as multiples of e, masses in u (converted to kg internally),
/// k_C = 1/(4 pi eps0).
class UnitSystem {
 public:
  enum class Mode { Reduced, SI };

  static UnitSystem reduced() { return UnitSystem(Mode::Reduced); }
  static UnitSystem si() { return UnitSystem(Mode::SI); }

  Mode mode() const { return mode_; }
  bool is_si() const { return mode_ == Mode::SI; }
  const PhysicalConstants& constants() const { return constants_; }

  /// k_C * q1 * q2 for charges given as elementary-charge counts.
  /// Reduced: q1*q2. SI: q1*q2*e^2/(4 pi eps0), in J m.
  double coulomb_coupling(double q1, double q2) const;

  /// Mass in the system's mass unit (SI: kg from u; reduced: unchanged).
  double mass(double mass_in_u) const;

  std::string name() const { return is_si() ? "SI" : "reduced"; }

 private:
  explicit UnitSystem(Mode mode) : mode_(mode) {}
  Mode mode_;
  PhysicalConstants constants_;
};

}  // namespace molsym
