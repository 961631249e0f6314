#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>

#include "molsym/molecule.hpp"
#include "molsym/units.hpp"

namespace molsym {

/// Quadratic-model coefficients keyed by unordered species pair.
/// One entry per pair that occurs in the molecule (X-X pairs included when a
/// species has count >= 2).
class ModelCoefficients {
 public:
  void set(const std::string& a, const std::string& b, double value);
  double get(const std::string& a, const std::string& b) const;
  bool has(const std::string& a, const std::string& b) const;
  const std::map<std::pair<std::string, std::string>, double>& values() const { return values_; }

 private:
  static std::pair<std::string, std::string> key(std::string a, std::string b);
  std::map<std::pair<std::string, std::string>, double> values_;
};

/// V(R) = sum_{j<l} k_C q_j q_l / |R_j - R_l|
///       + sum_{j<l} coeff(species_j, species_l) |R_j - R_l|^2.
///
/// The second sum is the lowest-order symmetry-adapted model of the
/// electronic effective energy; coefficients are per species pair.
class PotentialModel {
 public:
  PotentialModel(MoleculeSpec spec, ModelCoefficients coeffs, UnitSystem units);

  const MoleculeSpec& spec() const { return spec_; }
  const UnitSystem& units() const { return units_; }
  const ModelCoefficients& coefficients() const { return coeffs_; }

  double coulomb_energy(const Configuration& config) const;
  double model_electronic_energy(const Configuration& config) const;
  double total_potential(const Configuration& config) const;

  /// Analytic dV/dR as a stacked 3N-vector. Per-nucleus gradients sum to zero.
  Eigen::VectorXd gradient(const Configuration& config) const;
  /// Analytic symmetric 3N x 3N second derivative.
  Eigen::MatrixXd hessian(const Configuration& config) const;

  /// Largest per-pair 1-D equilibrium distance [k_C q q' / (2 c)]^(1/3) over
  /// pairs with positive coefficient; 1 if none. Sets multistart radius and
  /// trust-region defaults.
  double length_scale() const;
  /// Characteristic |dV/dR| used to scale gradient tolerances in SI mode.
  double gradient_scale() const;

 private:
  void check(const Configuration& config) const;
  double pair_coupling(int j, int l) const;  // k_C q_j q_l
  double pair_coeff(int j, int l) const;     // model coefficient

  MoleculeSpec spec_;
  ModelCoefficients coeffs_;
  UnitSystem units_;
  Eigen::MatrixXd coupling_;  // species x species, k_C q q'
  Eigen::MatrixXd coeff_;     // species x species, model coefficients
};

/// Four-term expansion of 1/|rho + drho| around drho = 0:
/// 1/|rho| - rho.drho/|rho|^3 - (1/2)|drho|^2/|rho|^3 + (3/2)(rho.drho)^2/|rho|^5.
/// Error is third order in |drho|.
double inverse_norm_quadratic(const Eigen::Vector3d& rho, const Eigen::Vector3d& drho);

}  // namespace molsym
