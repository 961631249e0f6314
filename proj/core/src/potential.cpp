#include "molsym/potential.hpp"

#include <algorithm>
#include <cmath>

namespace molsym {

std::pair<std::string, std::string> ModelCoefficients::key(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

void ModelCoefficients::set(const std::string& a, const std::string& b, double value) {
  if (!std::isfinite(value) || value == 0.0)
    throw DomainError("coefficient for pair (" + a + "," + b + ") must be finite and non-zero");
  values_[key(a, b)] = value;
}

double ModelCoefficients::get(const std::string& a, const std::string& b) const {
  const auto it = values_.find(key(a, b));
  if (it == values_.end())
    throw DomainError("missing model coefficient for species pair (" + a + "," + b + ")");
  return it->second;
}

bool ModelCoefficients::has(const std::string& a, const std::string& b) const {
  return values_.count(key(a, b)) > 0;
}

PotentialModel::PotentialModel(MoleculeSpec spec, ModelCoefficients coeffs, UnitSystem units)
    : spec_(std::move(spec)), coeffs_(std::move(coeffs)), units_(units) {
  const int s = spec_.species_count();
  coupling_.resize(s, s);
  coeff_.resize(s, s);
  for (int a = 0; a < s; ++a) {
    for (int b = a; b < s; ++b) {
      const bool pair_present = (a != b) || spec_.species_at(a).count >= 2;
      const auto& la = spec_.species_at(a).label;
      const auto& lb = spec_.species_at(b).label;
      if (pair_present && !coeffs_.has(la, lb))
        throw DomainError("model coefficient missing for present pair (" + la + "," + lb + ")");
      coupling_(a, b) = coupling_(b, a) =
          units_.coulomb_coupling(spec_.species_at(a).charge, spec_.species_at(b).charge);
      coeff_(a, b) = coeff_(b, a) = pair_present ? coeffs_.get(la, lb) : 0.0;
    }
  }
}

double PotentialModel::pair_coupling(int j, int l) const {
  return coupling_(spec_.species_of(j), spec_.species_of(l));
}

double PotentialModel::pair_coeff(int j, int l) const {
  return coeff_(spec_.species_of(j), spec_.species_of(l));
}

void PotentialModel::check(const Configuration& config) const {
  if (config.size() != spec_.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  if (!config.all_finite()) throw DomainError("configuration has non-finite components");
  const double dmin = config.min_pair_distance();
  const double scale = std::max(config.max_pair_distance(), length_scale());
  if (config.size() >= 2 && dmin <= 1e-9 * scale)
    throw DegenerateConfigurationError("nuclei too close: min pair distance " +
                                       std::to_string(dmin));
}

double PotentialModel::coulomb_energy(const Configuration& config) const {
  check(config);
  double energy = 0.0;
  for (int j = 0; j < config.size(); ++j)
    for (int l = j + 1; l < config.size(); ++l)
      energy += pair_coupling(j, l) / (config.positions[j] - config.positions[l]).norm();
  return energy;
}

double PotentialModel::model_electronic_energy(const Configuration& config) const {
  if (config.size() != spec_.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  double energy = 0.0;
  for (int j = 0; j < config.size(); ++j)
    for (int l = j + 1; l < config.size(); ++l)
      energy += pair_coeff(j, l) * (config.positions[j] - config.positions[l]).squaredNorm();
  return energy;
}

double PotentialModel::total_potential(const Configuration& config) const {
  return coulomb_energy(config) + model_electronic_energy(config);
}

Eigen::VectorXd PotentialModel::gradient(const Configuration& config) const {
  check(config);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(3 * config.size());
  for (int j = 0; j < config.size(); ++j) {
    for (int l = j + 1; l < config.size(); ++l) {
      const Eigen::Vector3d r = config.positions[j] - config.positions[l];
      const double d = r.norm();
      // d/dR_j of [c d^2 + k/d] = (2c - k/d^3) r
      const Eigen::Vector3d f =
          (2.0 * pair_coeff(j, l) - pair_coupling(j, l) / (d * d * d)) * r;
      g.segment<3>(3 * j) += f;
      g.segment<3>(3 * l) -= f;
    }
  }
  return g;
}

Eigen::MatrixXd PotentialModel::hessian(const Configuration& config) const {
  check(config);
  const int n = config.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const Eigen::Vector3d r = config.positions[j] - config.positions[l];
      const double d = r.norm();
      const Eigen::Vector3d u = r / d;
      const double k = pair_coupling(j, l);
      const double c = pair_coeff(j, l);
      // For phi(d) = c d^2 + k/d the pair block is
      // phi'' u u^T + (phi'/d)(I - u u^T) with phi'' = 2c + 2k/d^3,
      // phi'/d = 2c - k/d^3.
      const double radial = 2.0 * c + 2.0 * k / (d * d * d);
      const double tangential = 2.0 * c - k / (d * d * d);
      const Eigen::Matrix3d uu = u * u.transpose();
      const Eigen::Matrix3d block =
          radial * uu + tangential * (Eigen::Matrix3d::Identity() - uu);
      h.block<3, 3>(3 * j, 3 * j) += block;
      h.block<3, 3>(3 * l, 3 * l) += block;
      h.block<3, 3>(3 * j, 3 * l) -= block;
      h.block<3, 3>(3 * l, 3 * j) -= block;
    }
  }
  return h;
}

double PotentialModel::length_scale() const {
  double scale = 0.0;
  for (int a = 0; a < spec_.species_count(); ++a) {
    for (int b = a; b < spec_.species_count(); ++b) {
      const bool pair_present = (a != b) || spec_.species_at(a).count >= 2;
      if (!pair_present || coeff_(a, b) <= 0.0) continue;
      scale = std::max(scale, std::cbrt(coupling_(a, b) / (2.0 * coeff_(a, b))));
    }
  }
  return scale > 0.0 ? scale : 1.0;
}

double PotentialModel::gradient_scale() const {
  const double L = length_scale();
  double energy = 0.0;
  for (int a = 0; a < spec_.species_count(); ++a)
    for (int b = a; b < spec_.species_count(); ++b)
      energy = std::max(energy, std::abs(coeff_(a, b)) * L * L + coupling_(a, b) / L);
  return std::max(energy / L, 1e-300);
}

double inverse_norm_quadratic(const Eigen::Vector3d& rho, const Eigen::Vector3d& drho) {
  const double r = rho.norm();
  if (r < 1e-300) throw DomainError("inverse_norm_quadratic: rho must be non-zero");
  const double r3 = r * r * r;
  const double dot = rho.dot(drho);
  return 1.0 / r - dot / r3 - 0.5 * drho.squaredNorm() / r3 + 1.5 * dot * dot / (r3 * r * r);
}

}  // namespace molsym
