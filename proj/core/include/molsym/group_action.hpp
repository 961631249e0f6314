#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "molsym/molecule.hpp"

namespace molsym {

/// Element of O(3), validated to 1e-12 on construction.
class OrthogonalMatrix3 {
 public:
  explicit OrthogonalMatrix3(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double determinant() const { return det_; }
  bool is_proper() const { return det_ > 0.0; }

  static OrthogonalMatrix3 identity();
  static OrthogonalMatrix3 inversion();
  static OrthogonalMatrix3 rotation(const Eigen::Vector3d& axis, double angle);
  static OrthogonalMatrix3 reflection(const Eigen::Vector3d& plane_normal);
  /// Rotation about `axis` by `angle` followed by reflection through the
  /// perpendicular plane (S_n when angle = 2 pi / n).
  static OrthogonalMatrix3 improper_rotation(const Eigen::Vector3d& axis, double angle);

 private:
  Eigen::Matrix3d m_;
  double det_ = 1.0;
};

/// Block-diagonal permutation: an independent bijection per species block,
/// never mixing nuclei of different species.
class SpeciesPermutation {
 public:
  /// `image[j]` = index the nucleus j is sent to. Must respect species blocks.
  SpeciesPermutation(const MoleculeSpec& spec, std::vector<int> image);

  static SpeciesPermutation identity(const MoleculeSpec& spec);

  int size() const { return static_cast<int>(image_.size()); }
  int image(int nucleus) const { return image_.at(nucleus); }
  int preimage(int nucleus) const { return preimage_.at(nucleus); }
  bool is_identity() const;
  int fixed_count() const;

  /// this after other: (a.compose(b)) acts as a∘b.
  SpeciesPermutation compose(const SpeciesPermutation& other) const;
  SpeciesPermutation inverse() const;

  bool operator==(const SpeciesPermutation& other) const { return image_ == other.image_; }

 private:
  SpeciesPermutation() = default;
  std::vector<int> image_;
  std::vector<int> preimage_;
  std::vector<int> block_of_;
};

/// g = P_N (x) h: permutation of identical nuclei tensored with an O(3) matrix.
struct GroupElement {
  SpeciesPermutation perm;
  OrthogonalMatrix3 rotation;
};

/// (g R)_j = h R_{perm^-1(j)}.
Configuration apply_group_element(const GroupElement& g, const Configuration& config);
Configuration apply_rotation(const OrthogonalMatrix3& h, const Configuration& config);
Configuration apply_translation(const Eigen::Vector3d& t, const Configuration& config);

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);

/// Orbit-invariant fingerprint: all pair distances tagged with their
/// species-pair label, sorted. Constant on G-orbits and under translation.
struct PairSignature {
  std::vector<std::pair<std::string, double>> entries;
  bool matches(const PairSignature& other, double rtol) const;
};

PairSignature pair_distance_signature(const MoleculeSpec& spec, const Configuration& config);

}  // namespace molsym
