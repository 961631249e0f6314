#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "molsym/optimizer.hpp"
#include "molsym/potential.hpp"
#include "molsym/symmetry.hpp"

namespace molsym {

/// Hessian eigenvalue that should be positive at a minimum is negative.
class NotAMinimumError : public Error {
 public:
  using Error::Error;
};

struct NormalMode {
  double omega = 0.0;                 // angular frequency (rad/s in SI)
  std::optional<double> wavenumber;   // cm^-1, SI mode only
  Eigen::VectorXd vector;             // mass-weighted displacement, unit norm
  std::string irrep = "unassigned";
};

struct NormalModeReport {
  std::vector<NormalMode> modes;  // ascending frequency
  int zero_modes = 0;
};

/// W = M^(-1/2) H M^(-1/2) with the diagonal per-coordinate mass matrix.
Eigen::MatrixXd mass_weighted_hessian(const MoleculeSpec& spec, const Eigen::MatrixXd& hessian,
                                      const UnitSystem& units);

/// Frequencies omega_k = sqrt(lambda_k) over the positive eigenvalues of W at
/// a minimum; zero modes dropped by the relative threshold; modes labeled by
/// irrep for finite groups (continuous groups leave "unassigned").
NormalModeReport normal_modes(const PotentialModel& model, const Configuration& minimum,
                              const PointGroupReport& group, double zero_tol = 1e-7);

struct DiatomicInput {
  double q1 = 0.0;
  double q2 = 0.0;
  double mass1 = 0.0;       // u in SI mode
  double mass2 = 0.0;
  double bond_length = 0.0;  // m in SI mode
};

/// omega = sqrt( 3 k_C q1 q2 / rho0^3 * (1/M1 + 1/M2) ), i.e. the bracket of
/// the bond-length/frequency relation taken with equality.
double diatomic_frequency(const DiatomicInput& input, const UnitSystem& units);

/// nu = omega / (2 pi c) in cm^-1. SI mode only.
double angular_frequency_to_wavenumber(double omega, const UnitSystem& units);

}  // namespace molsym
