#include "molsym/units.hpp"

#include <numbers>

namespace molsym {

double UnitSystem::coulomb_coupling(double q1, double q2) const {
  if (mode_ == Mode::Reduced) return q1 * q2;
  const double e = constants_.elementary_charge;
  const double k_c = 1.0 / (4.0 * std::numbers::pi * constants_.vacuum_permittivity);
  return k_c * (q1 * e) * (q2 * e);
}

double UnitSystem::mass(double mass_in_u) const {
  return is_si() ? mass_in_u * constants_.atomic_mass_unit : mass_in_u;
}

}  // namespace molsym
