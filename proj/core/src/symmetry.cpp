#include "molsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace molsym {

namespace {

constexpr double kPi = std::numbers::pi;

double matrix_distance(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return (a - b).norm();
}

bool contains_matrix(const std::vector<SymmetryElement>& elements, const Eigen::Matrix3d& m,
                     double tol = 1e-6) {
  return std::any_of(elements.begin(), elements.end(), [&](const SymmetryElement& e) {
    return matrix_distance(e.rotation.matrix(), m) < tol;
  });
}

// Rotation angle in [0, pi] of the proper part; improper elements are
// measured through -h (an improper h is -C_theta for some axis).
double rotation_angle(const OrthogonalMatrix3& h) {
  const double tr = h.matrix().trace();
  const double c = h.is_proper() ? (tr - 1.0) / 2.0 : (tr + 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

std::optional<SpeciesPermutation> induced_permutation(const MoleculeSpec& spec,
                                                      const Configuration& config,
                                                      const OrthogonalMatrix3& h, double tol) {
  if (config.size() != spec.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  const int n = config.size();
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    const Eigen::Vector3d target = h.matrix() * config.positions[j];
    int match = -1;
    for (int l = 0; l < n; ++l) {
      if (!spec.same_species(j, l)) continue;
      if ((target - config.positions[l]).norm() <= tol) {
        if (match != -1)
          throw AmbiguityError("two nuclei within tolerance of one symmetry image");
        match = l;
      }
    }
    if (match == -1) return std::nullopt;
    if (used[match]) return std::nullopt;  // not a bijection at this tolerance
    used[match] = true;
    image[j] = match;
  }
  return SpeciesPermutation(spec, std::move(image));
}

Eigen::MatrixXd dynamical_rep_matrix(const SpeciesPermutation& perm,
                                     const OrthogonalMatrix3& h) {
  const int n = perm.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  for (int j = 0; j < n; ++j) d.block<3, 3>(3 * perm.image(j), 3 * j) = h.matrix();
  return d;
}

namespace {

std::vector<Eigen::Vector3d> candidate_directions(const Configuration& config, double scale) {
  std::vector<Eigen::Vector3d> raw;
  const int n = config.size();
  for (int j = 0; j < n; ++j) raw.push_back(config.positions[j]);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      raw.push_back(config.positions[j] + config.positions[l]);
      raw.push_back(config.positions[j] - config.positions[l]);
      raw.push_back(config.positions[j].cross(config.positions[l]));
    }
  }
  Eigen::Matrix3d second_moment = Eigen::Matrix3d::Zero();
  for (const auto& p : config.positions) second_moment += p * p.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(second_moment);
  for (int k = 0; k < 3; ++k) raw.push_back(es.eigenvectors().col(k));

  std::vector<Eigen::Vector3d> dirs;
  for (auto& v : raw) {
    const double norm = v.norm();
    if (norm < 1e-6 * scale) continue;
    const Eigen::Vector3d u = v / norm;
    const bool dup = std::any_of(dirs.begin(), dirs.end(), [&](const Eigen::Vector3d& d) {
      return (d - u).norm() < 1e-6 || (d + u).norm() < 1e-6;
    });
    if (!dup) dirs.push_back(u);
  }
  return dirs;
}

std::vector<OrthogonalMatrix3> candidate_operations(const std::vector<Eigen::Vector3d>& dirs) {
  std::vector<OrthogonalMatrix3> ops;
  auto push = [&](const OrthogonalMatrix3& h) {
    const bool dup = std::any_of(ops.begin(), ops.end(), [&](const OrthogonalMatrix3& o) {
      return matrix_distance(o.matrix(), h.matrix()) < 1e-9;
    });
    if (!dup) ops.push_back(h);
  };
  push(OrthogonalMatrix3::identity());
  push(OrthogonalMatrix3::inversion());
  const int orders[] = {2, 3, 4, 6};
  for (const auto& dir : dirs) {
    push(OrthogonalMatrix3::reflection(dir));
    for (int k : orders)
      for (int m = 1; m < k; ++m) push(OrthogonalMatrix3::rotation(dir, 2.0 * kPi * m / k));
    for (int k : {3, 4, 6})
      for (int m = 1; m < k; ++m)
        push(OrthogonalMatrix3::improper_rotation(dir, 2.0 * kPi * m / k));
  }
  return ops;
}

std::string name_finite_group(const std::vector<SymmetryElement>& elements) {
  const int order = static_cast<int>(elements.size());
  int n_c2 = 0, n_c3 = 0, n_c4 = 0, n_c6 = 0;
  int n_sigma = 0, n_s3 = 0, n_s4 = 0, n_s6 = 0;
  bool has_inversion = false;
  for (const auto& e : elements) {
    const double angle = rotation_angle(e.rotation);
    const auto near = [&](double target) { return std::abs(angle - target) < 1e-6; };
    if (e.rotation.is_proper()) {
      if (near(kPi)) ++n_c2;
      else if (near(2.0 * kPi / 3.0)) ++n_c3;
      else if (near(kPi / 2.0)) ++n_c4;
      else if (near(kPi / 3.0)) ++n_c6;
    } else {
      if (near(0.0)) ++n_sigma;
      else if (near(kPi)) has_inversion = true;
      else if (near(2.0 * kPi / 3.0)) ++n_s3;
      else if (near(kPi / 2.0)) ++n_s4;
      else if (near(kPi / 3.0)) ++n_s6;
    }
  }
  if (order == 1) return "C1";
  if (order == 2) {
    if (has_inversion) return "Ci";
    if (n_sigma == 1) return "Cs";
    if (n_c2 == 1) return "C2";
  }
  if (order == 4 && n_c2 == 1 && n_sigma == 2 && !has_inversion) return "C2v";
  if (order == 6 && n_c3 == 2 && n_sigma == 3 && !has_inversion) return "C3v";
  if (order == 12 && n_c3 == 2 && n_c2 == 3 && n_sigma == 4 && n_s3 == 2 && !has_inversion)
    return "D3h";
  if (order == 16 && n_c4 == 2 && n_c2 == 5 && n_sigma == 5 && n_s4 == 2 && has_inversion)
    return "D4h";
  if (order == 24 && n_c3 == 8 && n_c2 == 3 && n_s4 == 6 && n_sigma == 6 && !has_inversion)
    return "Td";
  return "unrecognized(order=" + std::to_string(order) + ")";
}

// Orthonormal pair perpendicular to a unit vector.
std::pair<Eigen::Vector3d, Eigen::Vector3d> perpendicular_frame(const Eigen::Vector3d& axis) {
  Eigen::Vector3d seed = std::abs(axis.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                  : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d u = (seed - seed.dot(axis) * axis).normalized();
  return {u, axis.cross(u)};
}

SymmetryElement make_element(const MoleculeSpec& spec, const Configuration& config,
                             const OrthogonalMatrix3& h, double tol) {
  auto perm = induced_permutation(spec, config, h, tol);
  if (!perm) throw Error("internal: expected symmetry element does not fix the configuration");
  return SymmetryElement{h, std::move(*perm)};
}

PointGroupReport detect_continuous(const MoleculeSpec& spec, const Configuration& config,
                                   double tol) {
  Eigen::Matrix3d second_moment = Eigen::Matrix3d::Zero();
  for (const auto& p : config.positions) second_moment += p * p.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(second_moment);
  const Eigen::Vector3d axis = es.eigenvectors().col(2);
  const auto [u, v] = perpendicular_frame(axis);

  PointGroupReport report;
  report.continuous = true;
  report.order = -1;
  report.axis = axis;
  report.horizontal_flip =
      induced_permutation(spec, config, OrthogonalMatrix3::rotation(u, kPi), tol).has_value();
  report.name = report.horizontal_flip ? "Dinfh" : "Cinfv";

  const int samples = 8;
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * kPi * k / samples;
    const double phi = kPi * k / samples;  // mirrors/flip axes repeat with period pi
    const Eigen::Vector3d normal = std::cos(phi) * u + std::sin(phi) * v;
    report.elements.push_back(
        make_element(spec, config, OrthogonalMatrix3::rotation(axis, theta), tol));
    report.elements.push_back(
        make_element(spec, config, OrthogonalMatrix3::reflection(normal), tol));
    if (report.horizontal_flip) {
      report.elements.push_back(
          make_element(spec, config, OrthogonalMatrix3::improper_rotation(axis, theta), tol));
      report.elements.push_back(
          make_element(spec, config, OrthogonalMatrix3::rotation(normal, kPi), tol));
    }
  }
  return report;
}

}  // namespace

PointGroupReport detect_point_group(const MoleculeSpec& spec, const Configuration& config,
                                    double tol) {
  if (config.size() != spec.nucleus_count())
    throw DimensionError("configuration size does not match molecule spec");
  if (config.size() < 2) throw UnsupportedError("point-group detection needs N >= 2");

  const double scale = config.scale();
  if (scale < 1e-12) throw PreconditionError("configuration collapses to a point");
  if (config.min_pair_distance() <= 1e-9 * scale)
    throw DegenerateConfigurationError("coincident nuclei in point-group detection");
  if (center_of_mass(spec, config).norm() > 1e-6 * scale)
    throw PreconditionError("configuration must be centered (center of mass at the origin)");

  const double tol_eff = tol > 0.0 ? tol : 1e-8 * scale;

  if (is_collinear(config)) return detect_continuous(spec, config, tol_eff);

  PointGroupReport report;
  const auto dirs = candidate_directions(config, scale);
  for (const auto& h : candidate_operations(dirs)) {
    if (contains_matrix(report.elements, h.matrix())) continue;
    if (auto perm = induced_permutation(spec, config, h, tol_eff))
      report.elements.push_back(SymmetryElement{h, std::move(*perm)});
  }

  // Close under composition; the candidate generators can miss products
  // whose axes pass through no nucleus or midpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = report.elements.size();
    for (std::size_t a = 0; a < count && report.elements.size() <= 64; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        const Eigen::Matrix3d prod =
            report.elements[a].rotation.matrix() * report.elements[b].rotation.matrix();
        if (contains_matrix(report.elements, prod)) continue;
        report.elements.push_back(SymmetryElement{
            OrthogonalMatrix3(prod),
            report.elements[a].permutation.compose(report.elements[b].permutation)});
        grew = true;
      }
    }
    if (report.elements.size() > 64)
      throw UnsupportedError("detected symmetry order exceeds the supported catalog");
  }

  std::sort(report.elements.begin(), report.elements.end(),
            [](const SymmetryElement& x, const SymmetryElement& y) {
              if (x.rotation.determinant() != y.rotation.determinant())
                return x.rotation.determinant() > y.rotation.determinant();
              const double ax = rotation_angle(x.rotation);
              const double ay = rotation_angle(y.rotation);
              if (std::abs(ax - ay) > 1e-9) return ax < ay;
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                  const double dx = x.rotation.matrix()(i, j);
                  const double dy = y.rotation.matrix()(i, j);
                  if (std::abs(dx - dy) > 1e-9) return dx < dy;
                }
              return false;
            });
  report.order = static_cast<int>(report.elements.size());
  report.name = name_finite_group(report.elements);
  return report;
}

CommutationReport verify_hessian_commutation(const Eigen::MatrixXd& hessian,
                                             const std::vector<SymmetryElement>& elements,
                                             double tol) {
  const double h_norm = hessian.norm();
  CommutationReport report;
  report.tolerance = tol;
  report.pass = true;
  for (const auto& e : elements) {
    const Eigen::MatrixXd d = dynamical_rep_matrix(e.permutation, e.rotation);
    const double residual = (d * hessian - hessian * d).norm() / std::max(h_norm, 1e-300);
    report.residuals.push_back(residual);
    report.pass = report.pass && residual <= tol;
  }
  return report;
}

int IrrepDecomposition::multiplicity(const std::string& irrep) const {
  for (const auto& [label, n] : multiplicities)
    if (label == irrep) return n;
  return 0;
}

namespace {

struct FiniteGroupAnalysis {
  const CharacterTable* table = nullptr;
  std::vector<int> class_of_element;   // detected-class index per element
  std::vector<int> table_class_index;  // detected-class index -> table class index
};

FiniteGroupAnalysis analyze_finite_group(const PointGroupReport& group) {
  if (group.continuous)
    throw UnsupportedError("irrep decomposition is not defined for continuous groups here; "
                           "use totally_symmetric_multiplicity");
  const CharacterTable* table = find_character_table(group.name);
  if (table == nullptr)
    throw UnsupportedError("no character table for group '" + group.name + "'");

  const auto& elems = group.elements;
  const int n = static_cast<int>(elems.size());

  auto find_element = [&](const Eigen::Matrix3d& m) {
    for (int i = 0; i < n; ++i)
      if (matrix_distance(elems[i].rotation.matrix(), m) < 1e-6) return i;
    throw Error("detected group is not closed under conjugation");
  };

  FiniteGroupAnalysis out;
  out.table = table;
  out.class_of_element.assign(n, -1);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < n; ++i) {
    if (out.class_of_element[i] != -1) continue;
    const int cls = static_cast<int>(classes.size());
    classes.emplace_back();
    for (int g = 0; g < n; ++g) {
      const Eigen::Matrix3d conj = elems[g].rotation.matrix() * elems[i].rotation.matrix() *
                                   elems[g].rotation.matrix().transpose();
      const int j = find_element(conj);
      if (out.class_of_element[j] == -1) {
        out.class_of_element[j] = cls;
        classes[cls].push_back(j);
      }
    }
  }

  if (classes.size() != table->classes.size())
    throw Error("group '" + group.name + "': detected " + std::to_string(classes.size()) +
                " classes, table has " + std::to_string(table->classes.size()));

  // Match detected classes to table classes by (size, det, trace); ties are
  // broken by how many nuclei the class fixes (fixed_more classes fix more).
  struct Key {
    int size;
    int det;
    long trace_milli;
    bool operator<(const Key& o) const {
      return std::tie(size, det, trace_milli) < std::tie(o.size, o.det, o.trace_milli);
    }
  };
  std::map<Key, std::vector<int>> detected_by_key;
  std::map<Key, std::vector<int>> table_by_key;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& e = elems[classes[c][0]];
    detected_by_key[Key{static_cast<int>(classes[c].size()),
                        e.rotation.determinant() > 0 ? 1 : -1,
                        std::lround(e.rotation.matrix().trace() * 1000.0)}]
        .push_back(static_cast<int>(c));
  }
  for (std::size_t t = 0; t < table->classes.size(); ++t) {
    const auto& c = table->classes[t];
    table_by_key[Key{c.size, c.det, std::lround(c.trace * 1000.0)}].push_back(
        static_cast<int>(t));
  }

  out.table_class_index.assign(classes.size(), -1);
  for (auto& [key, table_indices] : table_by_key) {
    auto it = detected_by_key.find(key);
    if (it == detected_by_key.end() || it->second.size() != table_indices.size())
      throw Error("group '" + group.name + "': class structure does not match the table");
    auto detected = it->second;
    if (detected.size() > 1) {
      // Sort detected by fixed-nucleus count (descending) and table entries
      // fixed_more-first; equal counts would make the assignment arbitrary.
      std::sort(detected.begin(), detected.end(), [&](int a, int b) {
        return elems[classes[a][0]].permutation.fixed_count() >
               elems[classes[b][0]].permutation.fixed_count();
      });
      std::stable_sort(table_indices.begin(), table_indices.end(), [&](int a, int b) {
        return table->classes[a].fixed_more > table->classes[b].fixed_more;
      });
      for (std::size_t i = 0; i + 1 < detected.size(); ++i)
        if (elems[classes[detected[i]][0]].permutation.fixed_count() ==
            elems[classes[detected[i + 1]][0]].permutation.fixed_count())
          throw AmbiguityError("group '" + group.name +
                               "': tied classes fix equally many nuclei");
    }
    for (std::size_t i = 0; i < detected.size(); ++i)
      out.table_class_index[detected[i]] = table_indices[i];
  }
  return out;
}

}  // namespace

IrrepDecomposition irrep_decomposition(const PointGroupReport& group, const MoleculeSpec& spec) {
  const FiniteGroupAnalysis analysis = analyze_finite_group(group);
  const CharacterTable& table = *analysis.table;
  const int order = static_cast<int>(group.elements.size());

  // chi_dyn(h) = (#nuclei fixed by the induced permutation) * tr(h).
  std::vector<double> chi_dyn(table.classes.size(), 0.0);
  std::vector<bool> seen(table.classes.size(), false);
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    const int tc = analysis.table_class_index[analysis.class_of_element[i]];
    if (seen[tc]) continue;
    seen[tc] = true;
    chi_dyn[tc] = group.elements[i].permutation.fixed_count() *
                  group.elements[i].rotation.matrix().trace();
  }

  IrrepDecomposition out;
  int dim_sum = 0;
  for (const auto& irrep : table.irreps) {
    double acc = 0.0;
    for (std::size_t c = 0; c < table.classes.size(); ++c)
      acc += table.classes[c].size * irrep.characters[c] * chi_dyn[c];
    acc /= order;
    const long n = std::lround(acc);
    if (std::abs(acc - n) > 1e-6 || n < 0)
      throw Error("non-integer multiplicity " + std::to_string(acc) + " for irrep '" +
                  irrep.label + "'");
    out.multiplicities.emplace_back(irrep.label, static_cast<int>(n));
    dim_sum += static_cast<int>(n) * irrep.dim;
  }
  if (dim_sum != 3 * spec.nucleus_count())
    throw Error("irrep multiplicities do not sum to 3N");
  out.totally_symmetric = out.multiplicity(table.totally_symmetric().label);
  return out;
}

Eigen::MatrixXd totally_symmetric_projector(const PointGroupReport& group,
                                            const MoleculeSpec& spec,
                                            const Configuration& config) {
  const int dim = 3 * spec.nucleus_count();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);

  if (!group.continuous) {
    for (const auto& e : group.elements)
      acc += dynamical_rep_matrix(e.permutation, e.rotation);
    acc /= static_cast<double>(group.elements.size());
    return acc;
  }

  // Haar average over Cinfv (two cosets) or Dinfh (four cosets). The matrix
  // elements are trigonometric polynomials of degree <= 2 in the sampled
  // angle, so 32 equispaced samples integrate them exactly.
  const int samples = 32;
  const double tol = 1e-8 * config.scale();
  const auto [u, v] = perpendicular_frame(group.axis);
  int families = 0;
  auto accumulate = [&](const OrthogonalMatrix3& h) {
    acc += dynamical_rep_matrix(make_element(spec, config, h, tol).permutation, h);
  };
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * kPi * k / samples;
    const double phi = kPi * k / samples;
    const Eigen::Vector3d normal = std::cos(phi) * u + std::sin(phi) * v;
    accumulate(OrthogonalMatrix3::rotation(group.axis, theta));
    accumulate(OrthogonalMatrix3::reflection(normal));
    if (group.horizontal_flip) {
      accumulate(OrthogonalMatrix3::improper_rotation(group.axis, theta));
      accumulate(OrthogonalMatrix3::rotation(normal, kPi));
    }
  }
  families = group.horizontal_flip ? 4 : 2;
  acc /= static_cast<double>(families * samples);
  return acc;
}

int totally_symmetric_multiplicity(const PointGroupReport& group, const MoleculeSpec& spec,
                                   const Configuration& config) {
  if (!group.continuous && find_character_table(group.name) != nullptr)
    return irrep_decomposition(group, spec).totally_symmetric;
  const Eigen::MatrixXd p = totally_symmetric_projector(group, spec, config);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (p + p.transpose()));
  int rank = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++rank;
  return rank;
}

std::vector<std::pair<std::string, Eigen::MatrixXd>> irrep_projectors(
    const PointGroupReport& group, const MoleculeSpec& spec) {
  const FiniteGroupAnalysis analysis = analyze_finite_group(group);
  const CharacterTable& table = *analysis.table;
  const int dim = 3 * spec.nucleus_count();
  const int order = static_cast<int>(group.elements.size());

  std::vector<std::pair<std::string, Eigen::MatrixXd>> out;
  for (const auto& irrep : table.irreps)
    out.emplace_back(irrep.label, Eigen::MatrixXd::Zero(dim, dim));
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    const int tc = analysis.table_class_index[analysis.class_of_element[i]];
    const Eigen::MatrixXd d =
        dynamical_rep_matrix(group.elements[i].permutation, group.elements[i].rotation);
    for (std::size_t a = 0; a < table.irreps.size(); ++a)
      out[a].second += table.irreps[a].characters[tc] * d;
  }
  for (std::size_t a = 0; a < table.irreps.size(); ++a)
    out[a].second *= static_cast<double>(table.irreps[a].dim) / order;
  return out;
}

}  // namespace molsym
