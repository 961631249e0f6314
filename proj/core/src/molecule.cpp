#include "molsym/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace molsym {

MoleculeSpec::MoleculeSpec(std::vector<Species> species) : species_(std::move(species)) {
  if (species_.empty()) throw DimensionError("molecule needs at least one species");
  std::set<std::string> labels;
  for (const auto& s : species_) {
    if (s.label.empty()) throw DimensionError("species label must be non-empty");
    if (!labels.insert(s.label).second)
      throw DimensionError("duplicate species label '" + s.label + "'");
    if (!(s.charge > 0.0)) throw DomainError("species '" + s.label + "': charge must be > 0");
    if (!(s.mass > 0.0)) throw DomainError("species '" + s.label + "': mass must be > 0");
    if (s.count < 1) throw DomainError("species '" + s.label + "': count must be >= 1");
  }
  for (int j = 0; j < species_count(); ++j) {
    block_begin_.push_back(nucleus_count_);
    nucleus_count_ += species_[j].count;
    for (int i = 0; i < species_[j].count; ++i) species_of_.push_back(j);
  }
  block_begin_.push_back(nucleus_count_);
}

std::pair<int, int> MoleculeSpec::block(int species_index) const {
  return {block_begin_.at(species_index), block_begin_.at(species_index + 1)};
}

Eigen::VectorXd Configuration::stacked() const {
  Eigen::VectorXd x(3 * size());
  for (int j = 0; j < size(); ++j) x.segment<3>(3 * j) = positions[j];
  return x;
}

Configuration Configuration::from_stacked(const Eigen::VectorXd& x) {
  if (x.size() % 3 != 0) throw DimensionError("stacked vector length must be a multiple of 3");
  Configuration config;
  config.positions.resize(x.size() / 3);
  for (int j = 0; j < config.size(); ++j) config.positions[j] = x.segment<3>(3 * j);
  return config;
}

bool Configuration::all_finite() const {
  return std::all_of(positions.begin(), positions.end(),
                     [](const Eigen::Vector3d& p) { return p.allFinite(); });
}

double Configuration::min_pair_distance() const {
  double d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < size(); ++j)
    for (int l = j + 1; l < size(); ++l) d = std::min(d, (positions[j] - positions[l]).norm());
  return d;
}

double Configuration::max_pair_distance() const {
  double d = 0.0;
  for (int j = 0; j < size(); ++j)
    for (int l = j + 1; l < size(); ++l) d = std::max(d, (positions[j] - positions[l]).norm());
  return d;
}

double Configuration::scale() const {
  const Eigen::Vector3d c = centroid(*this);
  double s = 0.0;
  for (const auto& p : positions) s = std::max(s, (p - c).norm());
  return std::max(s, 1e-30);
}

Eigen::Vector3d centroid(const Configuration& config) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : config.positions) c += p;
  return config.size() > 0 ? Eigen::Vector3d(c / config.size()) : c;
}

Eigen::Vector3d center_of_mass(const MoleculeSpec& spec, const Configuration& config) {
  if (config.size() != spec.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  double total = 0.0;
  for (int j = 0; j < config.size(); ++j) {
    const double m = spec.mass_of(j);
    c += m * config.positions[j];
    total += m;
  }
  return c / total;
}

Configuration centered(const MoleculeSpec& spec, const Configuration& config) {
  const Eigen::Vector3d com = center_of_mass(spec, config);
  Configuration out = config;
  for (auto& p : out.positions) p -= com;
  return out;
}

bool is_collinear(const Configuration& config, double rtol) {
  if (config.size() <= 2) return true;
  const Eigen::Vector3d c = centroid(config);
  Eigen::Matrix3d second_moment = Eigen::Matrix3d::Zero();
  for (const auto& p : config.positions) {
    const Eigen::Vector3d d = p - c;
    second_moment += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(second_moment);
  const auto& ev = es.eigenvalues();  // ascending
  return ev(1) <= rtol * std::max(ev(2), 1e-300);
}

}  // namespace molsym
