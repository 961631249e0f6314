#include "molsym/vibrations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace molsym {

Eigen::MatrixXd mass_weighted_hessian(const MoleculeSpec& spec, const Eigen::MatrixXd& hessian,
                                      const UnitSystem& units) {
  const int dim = 3 * spec.nucleus_count();
  if (hessian.rows() != dim || hessian.cols() != dim)
    throw DimensionError("hessian size does not match molecule spec");
  if ((hessian - hessian.transpose()).norm() > 1e-9 * std::max(hessian.norm(), 1e-300))
    throw DomainError("hessian must be symmetric");
  Eigen::VectorXd inv_sqrt_mass(dim);
  for (int j = 0; j < spec.nucleus_count(); ++j) {
    const double m = units.mass(spec.mass_of(j));
    if (!(m > 0.0)) throw DomainError("nucleus mass must be positive");
    inv_sqrt_mass.segment<3>(3 * j).setConstant(1.0 / std::sqrt(m));
  }
  return inv_sqrt_mass.asDiagonal() * hessian * inv_sqrt_mass.asDiagonal();
}

namespace {

// The dynamical representation permutes only identical (equal-mass) nuclei,
// so it commutes with M^(1/2): the Cartesian projectors act unchanged on
// mass-weighted vectors.
std::vector<std::string> label_cluster(
    const std::vector<std::pair<std::string, Eigen::MatrixXd>>& projectors,
    Eigen::MatrixXd& cluster_basis) {
  const int count = static_cast<int>(cluster_basis.cols());
  std::vector<std::string> labels;
  Eigen::MatrixXd canonical(cluster_basis.rows(), count);
  int filled = 0;
  for (const auto& [label, projector] : projectors) {
    const Eigen::MatrixXd projected = projector * cluster_basis;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(projected, Eigen::ComputeThinU);
    for (int k = 0; k < svd.singularValues().size() && filled < count; ++k) {
      if (svd.singularValues()(k) > 0.5) {
        canonical.col(filled) = svd.matrixU().col(k);
        labels.push_back(label);
        ++filled;
      }
    }
  }
  if (filled == count) cluster_basis = canonical;
  while (static_cast<int>(labels.size()) < count) labels.emplace_back("unassigned");
  return labels;
}

}  // namespace

NormalModeReport normal_modes(const PotentialModel& model, const Configuration& minimum,
                              const PointGroupReport& group, double zero_tol) {
  const Eigen::MatrixXd w =
      mass_weighted_hessian(model.spec(), model.hessian(minimum), model.units());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double cut = zero_tol * lam.cwiseAbs().maxCoeff();

  NormalModeReport report;
  std::vector<int> retained;
  for (int i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) <= cut) {
      ++report.zero_modes;
    } else if (lam(i) < 0.0) {
      throw NotAMinimumError("negative non-zero-mode eigenvalue " + std::to_string(lam(i)));
    } else {
      retained.push_back(i);
    }
  }

  std::vector<std::pair<std::string, Eigen::MatrixXd>> projectors;
  if (!group.continuous && find_character_table(group.name) != nullptr)
    projectors = irrep_projectors(group, model.spec());

  // Group retained modes into (near-)degenerate clusters so multi-dimensional
  // irreps get a canonical basis.
  std::size_t start = 0;
  while (start < retained.size()) {
    std::size_t stop = start + 1;
    while (stop < retained.size() &&
           lam(retained[stop]) - lam(retained[stop - 1]) <= 1e-6 * lam(retained[stop]))
      ++stop;
    Eigen::MatrixXd basis(lam.size(), stop - start);
    for (std::size_t k = start; k < stop; ++k)
      basis.col(k - start) = es.eigenvectors().col(retained[k]);

    std::vector<std::string> labels(stop - start, "unassigned");
    if (!projectors.empty()) labels = label_cluster(projectors, basis);

    for (std::size_t k = start; k < stop; ++k) {
      NormalMode mode;
      mode.omega = std::sqrt(lam(retained[k]));
      if (model.units().is_si())
        mode.wavenumber = angular_frequency_to_wavenumber(mode.omega, model.units());
      Eigen::VectorXd v = basis.col(k - start);
      int lead;
      v.cwiseAbs().maxCoeff(&lead);
      if (v(lead) < 0.0) v = -v;  // deterministic sign
      mode.vector = v;
      mode.irrep = labels[k - start];
      report.modes.push_back(std::move(mode));
    }
    start = stop;
  }
  return report;
}

double diatomic_frequency(const DiatomicInput& input, const UnitSystem& units) {
  if (!(input.q1 > 0.0) || !(input.q2 > 0.0) || !(input.mass1 > 0.0) ||
      !(input.mass2 > 0.0) || !(input.bond_length > 0.0))
    throw DomainError("diatomic_frequency: all inputs must be positive");
  const double rho = input.bond_length;
  const double p = 3.0 * units.coulomb_coupling(input.q1, input.q2) / (rho * rho * rho);
  const double inv_mu = 1.0 / units.mass(input.mass1) + 1.0 / units.mass(input.mass2);
  return std::sqrt(p * inv_mu);
}

double angular_frequency_to_wavenumber(double omega, const UnitSystem& units) {
  if (!units.is_si())
    throw UnitError("wavenumber conversion is defined in SI mode only");
  const double c_cm = units.constants().speed_of_light * 100.0;
  return omega / (2.0 * std::numbers::pi * c_cm);
}

}  // namespace molsym
