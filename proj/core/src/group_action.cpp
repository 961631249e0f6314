#include "molsym/group_action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace molsym {

OrthogonalMatrix3::OrthogonalMatrix3(const Eigen::Matrix3d& m) : m_(m) {
  const double ortho = (m.transpose() * m - Eigen::Matrix3d::Identity()).norm();
  if (ortho > 1e-12) throw DomainError("matrix is not orthogonal (residual " + std::to_string(ortho) + ")");
  det_ = m.determinant();
  if (std::abs(std::abs(det_) - 1.0) > 1e-12) throw DomainError("orthogonal matrix must have det +-1");
  det_ = det_ > 0 ? 1.0 : -1.0;
}

OrthogonalMatrix3 OrthogonalMatrix3::identity() {
  return OrthogonalMatrix3(Eigen::Matrix3d::Identity());
}

OrthogonalMatrix3 OrthogonalMatrix3::inversion() {
  return OrthogonalMatrix3(-Eigen::Matrix3d::Identity());
}

OrthogonalMatrix3 OrthogonalMatrix3::rotation(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (n < 1e-300) throw DomainError("rotation axis must be non-zero");
  return OrthogonalMatrix3(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
}

OrthogonalMatrix3 OrthogonalMatrix3::reflection(const Eigen::Vector3d& plane_normal) {
  const double n = plane_normal.norm();
  if (n < 1e-300) throw DomainError("plane normal must be non-zero");
  const Eigen::Vector3d u = plane_normal / n;
  return OrthogonalMatrix3(Eigen::Matrix3d::Identity() - 2.0 * u * u.transpose());
}

OrthogonalMatrix3 OrthogonalMatrix3::improper_rotation(const Eigen::Vector3d& axis, double angle) {
  const OrthogonalMatrix3 rot = rotation(axis, angle);
  const OrthogonalMatrix3 mirror = reflection(axis);
  return OrthogonalMatrix3(mirror.matrix() * rot.matrix());
}

SpeciesPermutation::SpeciesPermutation(const MoleculeSpec& spec, std::vector<int> image)
    : image_(std::move(image)) {
  const int n = spec.nucleus_count();
  if (static_cast<int>(image_.size()) != n)
    throw DimensionError("permutation size does not match nucleus count");
  preimage_.assign(n, -1);
  block_of_.resize(n);
  for (int j = 0; j < n; ++j) block_of_[j] = spec.species_of(j);
  for (int j = 0; j < n; ++j) {
    const int t = image_[j];
    if (t < 0 || t >= n) throw DimensionError("permutation image out of range");
    if (preimage_[t] != -1) throw DimensionError("permutation is not a bijection");
    if (block_of_[t] != block_of_[j]) throw DimensionError("permutation crosses species blocks");
    preimage_[t] = j;
  }
}

SpeciesPermutation SpeciesPermutation::identity(const MoleculeSpec& spec) {
  std::vector<int> image(spec.nucleus_count());
  std::iota(image.begin(), image.end(), 0);
  return SpeciesPermutation(spec, std::move(image));
}

bool SpeciesPermutation::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (image_[j] != j) return false;
  return true;
}

int SpeciesPermutation::fixed_count() const {
  int n = 0;
  for (int j = 0; j < size(); ++j)
    if (image_[j] == j) ++n;
  return n;
}

SpeciesPermutation SpeciesPermutation::compose(const SpeciesPermutation& other) const {
  if (size() != other.size()) throw DimensionError("permutation sizes differ");
  SpeciesPermutation out;
  out.image_.resize(size());
  out.preimage_.resize(size());
  out.block_of_ = block_of_;
  for (int j = 0; j < size(); ++j) out.image_[j] = image_[other.image_[j]];
  for (int j = 0; j < size(); ++j) out.preimage_[out.image_[j]] = j;
  return out;
}

SpeciesPermutation SpeciesPermutation::inverse() const {
  SpeciesPermutation out;
  out.image_ = preimage_;
  out.preimage_ = image_;
  out.block_of_ = block_of_;
  return out;
}

Configuration apply_group_element(const GroupElement& g, const Configuration& config) {
  if (g.perm.size() != config.size())
    throw DimensionError("group element does not match configuration size");
  Configuration out;
  out.positions.resize(config.size());
  for (int j = 0; j < config.size(); ++j)
    out.positions[j] = g.rotation.matrix() * config.positions[g.perm.preimage(j)];
  return out;
}

Configuration apply_rotation(const OrthogonalMatrix3& h, const Configuration& config) {
  Configuration out;
  out.positions.resize(config.size());
  for (int j = 0; j < config.size(); ++j) out.positions[j] = h.matrix() * config.positions[j];
  return out;
}

Configuration apply_translation(const Eigen::Vector3d& t, const Configuration& config) {
  Configuration out = config;
  for (auto& p : out.positions) p += t;
  return out;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return GroupElement{a.perm.compose(b.perm),
                      OrthogonalMatrix3(a.rotation.matrix() * b.rotation.matrix())};
}

GroupElement inverse(const GroupElement& g) {
  return GroupElement{g.perm.inverse(), OrthogonalMatrix3(g.rotation.matrix().transpose())};
}

bool PairSignature::matches(const PairSignature& other, double rtol) const {
  if (entries.size() != other.entries.size()) return false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != other.entries[i].first) return false;
    const double a = entries[i].second;
    const double b = other.entries[i].second;
    if (std::abs(a - b) > rtol * std::max({1.0, std::abs(a), std::abs(b)})) return false;
  }
  return true;
}

PairSignature pair_distance_signature(const MoleculeSpec& spec, const Configuration& config) {
  if (config.size() != spec.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  const double guard = 1e-12 * std::max(config.max_pair_distance(), 1.0);
  PairSignature sig;
  for (int j = 0; j < config.size(); ++j) {
    for (int l = j + 1; l < config.size(); ++l) {
      const double d = (config.positions[j] - config.positions[l]).norm();
      if (d < guard)
        throw DegenerateConfigurationError("coincident nuclei in pair_distance_signature");
      std::string a = spec.label_of(j);
      std::string b = spec.label_of(l);
      if (b < a) std::swap(a, b);
      sig.entries.emplace_back(a + "-" + b, d);
    }
  }
  std::sort(sig.entries.begin(), sig.entries.end());
  return sig;
}

}  // namespace molsym
