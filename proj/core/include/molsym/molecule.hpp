#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "molsym/errors.hpp"

namespace molsym {

/// One chemical species: `count` identical nuclei of the given charge
/// (elementary-charge count) and mass (u in SI mode, dimensionless otherwise).
struct Species {
  std::string label;
  double charge = 0.0;
  double mass = 0.0;
  int count = 0;
};

/// Ordered species blocks; nucleus indices run contiguously per species
/// (first block = species 0, and so on).
class MoleculeSpec {
 public:
  explicit MoleculeSpec(std::vector<Species> species);

  int nucleus_count() const { return nucleus_count_; }
  int species_count() const { return static_cast<int>(species_.size()); }
  const std::vector<Species>& species() const { return species_; }
  const Species& species_at(int index) const { return species_.at(index); }

  /// Species index of nucleus j.
  int species_of(int nucleus) const { return species_of_.at(nucleus); }
  /// Half-open nucleus index range [begin, end) of a species block.
  std::pair<int, int> block(int species_index) const;

  double charge_of(int nucleus) const { return species_[species_of(nucleus)].charge; }
  double mass_of(int nucleus) const { return species_[species_of(nucleus)].mass; }
  const std::string& label_of(int nucleus) const { return species_[species_of(nucleus)].label; }
  bool same_species(int j, int l) const { return species_of(j) == species_of(l); }

 private:
  std::vector<Species> species_;
  std::vector<int> species_of_;
  std::vector<int> block_begin_;
  int nucleus_count_ = 0;
};

/// A point R in R^(3N): one 3-vector per nucleus.
struct Configuration {
  std::vector<Eigen::Vector3d> positions;

  Configuration() = default;
  explicit Configuration(std::vector<Eigen::Vector3d> pos) : positions(std::move(pos)) {}

  int size() const { return static_cast<int>(positions.size()); }

  Eigen::VectorXd stacked() const;
  static Configuration from_stacked(const Eigen::VectorXd& x);

  bool all_finite() const;
  double min_pair_distance() const;
  double max_pair_distance() const;
  /// Max nucleus distance from the centroid; floor of 1e-30 so it can divide.
  double scale() const;
};

Eigen::Vector3d centroid(const Configuration& config);
Eigen::Vector3d center_of_mass(const MoleculeSpec& spec, const Configuration& config);
/// Copy of `config` translated so its center of mass is at the origin.
Configuration centered(const MoleculeSpec& spec, const Configuration& config);

/// True when all nuclei lie on one line (rank-1 second-moment tensor).
bool is_collinear(const Configuration& config, double rtol = 1e-9);

}  // namespace molsym
