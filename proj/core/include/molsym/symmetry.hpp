#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "molsym/character_tables.hpp"
#include "molsym/group_action.hpp"
#include "molsym/molecule.hpp"

namespace molsym {

/// One point-group operation: the O(3) part h together with the permutation
/// of identical nuclei it induces on the reference configuration.
struct SymmetryElement {
  OrthogonalMatrix3 rotation;
  SpeciesPermutation permutation;
};

/// Detected point group of a centered configuration.
///
/// Finite groups list every element. Continuous groups (Cinfv/Dinfh) carry
/// the molecular axis, the horizontal-flip flag, and a sampled element set
/// (axis rotations plus the discrete generators) in `elements`.
struct PointGroupReport {
  std::string name;  // C1, Ci, Cs, C2, C2v, C3v, D3h, D4h, Td, Cinfv, Dinfh
  bool continuous = false;
  int order = 0;  // -1 for continuous groups
  std::vector<SymmetryElement> elements;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // continuous only
  bool horizontal_flip = false;                     // Dinfh
};

/// Permutation pi with |h R_j - R_{pi(j)}| <= tol for all j, species-local.
/// nullopt when some image has no match; AmbiguityError when two nuclei sit
/// within tol of one image.
std::optional<SpeciesPermutation> induced_permutation(const MoleculeSpec& spec,
                                                      const Configuration& config,
                                                      const OrthogonalMatrix3& h, double tol);

/// All catalog point-group operations fixing the centered configuration.
/// tol <= 0 selects 1e-8 x configuration scale.
PointGroupReport detect_point_group(const MoleculeSpec& spec, const Configuration& config,
                                    double tol = -1.0);

/// 3N x 3N matrix of P_N(h) (x) h: block (pi(j), j) equals h.
Eigen::MatrixXd dynamical_rep_matrix(const SpeciesPermutation& perm,
                                     const OrthogonalMatrix3& h);

struct CommutationReport {
  std::vector<double> residuals;  // per element: |gH - Hg|_F / |H|_F
  double tolerance = 0.0;
  bool pass = false;
};

CommutationReport verify_hessian_commutation(const Eigen::MatrixXd& hessian,
                                             const std::vector<SymmetryElement>& elements,
                                             double tol);

struct IrrepDecomposition {
  std::vector<std::pair<std::string, int>> multiplicities;  // table order
  int totally_symmetric = 0;

  int multiplicity(const std::string& irrep) const;
};

/// Multiplicities n_a = (1/|H|) sum_h chi_a(h) tr D(h) of the dynamical
/// representation. Finite catalog groups only; throws UnsupportedError for
/// continuous groups (use totally_symmetric_multiplicity instead).
IrrepDecomposition irrep_decomposition(const PointGroupReport& group, const MoleculeSpec& spec);

/// Projector onto the subspace fixed by the whole group. For continuous
/// groups the axis-rotation average uses 32 sampled angles, exact here since
/// the matrix elements are degree-1 trigonometric polynomials.
Eigen::MatrixXd totally_symmetric_projector(const PointGroupReport& group,
                                            const MoleculeSpec& spec,
                                            const Configuration& config);

/// Multiplicity of the totally symmetric irrep in the dynamical
/// representation; >= 1 for every non-zero configuration.
int totally_symmetric_multiplicity(const PointGroupReport& group, const MoleculeSpec& spec,
                                   const Configuration& config);

/// Character projectors P_a = (d_a/|H|) sum_h chi_a(h) D(h), table order.
/// Finite catalog groups only.
std::vector<std::pair<std::string, Eigen::MatrixXd>> irrep_projectors(
    const PointGroupReport& group, const MoleculeSpec& spec);

}  // namespace molsym
