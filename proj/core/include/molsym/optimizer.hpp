#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "molsym/group_action.hpp"
#include "molsym/potential.hpp"

namespace molsym {

struct OptimizerOptions {
  int max_iterations = 500;
  /// Absolute in reduced units; multiplied by the model's gradient scale in SI.
  double gradient_tolerance = 1e-10;
  /// <= 0 selects 0.25 x model length scale.
  double initial_trust_radius = 0.0;
  /// Relative to max |eigenvalue| when counting zero modes.
  double zero_mode_threshold = 1e-7;
  std::uint64_t seed = 0;
};

enum class StationaryKind { Minimum, Saddle, Maximum, Degenerate };
std::string to_string(StationaryKind kind);

struct StationaryPoint {
  Configuration configuration;  // center of mass at the origin
  double value = 0.0;
  double gradient_norm = 0.0;
  Eigen::VectorXd eigenvalues;  // full Hessian spectrum, ascending
  int zero_modes = 0;
  StationaryKind kind = StationaryKind::Degenerate;
  PairSignature signature;
  int iterations = 0;
};

/// Search did not reach the gradient tolerance; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, Configuration last)
      : Error(msg), last_iterate(std::move(last)) {}
  Configuration last_iterate;
};

/// The search walked into a near-coincident configuration.
class DegeneratePathError : public Error {
 public:
  using Error::Error;
};

/// 3 for a single nucleus, 5 for a collinear configuration, 6 otherwise.
int rigid_mode_count(const Configuration& config);

/// Orthonormal basis (3N x r) of the instantaneous rigid motions:
/// 3 translations plus rotation generators e_k x (R_j - centroid).
Eigen::MatrixXd rigid_motion_basis(const Configuration& config);

/// Orthonormal basis (3N x (3N - r)) of the complement of the rigid motions.
Eigen::MatrixXd rigid_complement_basis(const Configuration& config);

/// Newton search for grad V = 0, with the step restricted to the complement
/// of the rigid motions and globalized by a trust region on |grad V|^2.
/// Converges to stationary points of any index.
StationaryPoint find_stationary_point(const PotentialModel& model, const Configuration& init,
                                      const OptimizerOptions& opts = {});

struct ClassificationResult {
  StationaryKind kind;
  int zero_modes;
  Eigen::VectorXd eigenvalues;  // ascending
};

/// Classify an already-stationary configuration by its Hessian spectrum.
/// Throws NotStationaryError when the gradient is not small.
ClassificationResult classify_stationary_point(const PotentialModel& model,
                                               const Configuration& config,
                                               double zero_tol = 1e-7);

struct CatalogEntry {
  StationaryPoint point;
  int hits = 0;
};

struct StationaryCatalog {
  std::vector<CatalogEntry> entries;  // sorted by potential value
  int total_starts = 0;
  int failed_starts = 0;

  const CatalogEntry* find_kind(StationaryKind kind) const;
};

/// Deterministic multistart: starts drawn uniformly in a ball of radius
/// 3 x the model length scale, deduplicated by pair-distance signature
/// (1e-5 relative). Failed starts are counted, not fatal.
StationaryCatalog multistart_search(const PotentialModel& model, int n_starts,
                                    std::uint64_t seed, const OptimizerOptions& opts = {});

}  // namespace molsym
