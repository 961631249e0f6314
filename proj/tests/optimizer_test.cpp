#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "molsym/equilibria.hpp"
#include "molsym/molecule_io.hpp"
#include "molsym/optimizer.hpp"
#include "molsym/symmetry.hpp"
#include "test_support.hpp"

using namespace molsym;

TEST_CASE("rigid-motion basis and complement") {
  const Configuration bent = xy2_bent_configuration(1.0, 1.0);
  CHECK(rigid_mode_count(bent) == 6);
  const Eigen::MatrixXd basis = rigid_motion_basis(bent);
  CHECK(basis.cols() == 6);
  CHECK((basis.transpose() * basis - Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-12);

  const Configuration line = x3_linear_configuration(1.0);
  CHECK(rigid_mode_count(line) == 5);
  CHECK(rigid_motion_basis(line).cols() == 5);

  const Eigen::MatrixXd comp = rigid_complement_basis(bent);
  CHECK(comp.cols() == 3);
  CHECK((comp.transpose() * rigid_motion_basis(bent)).norm() <= 1e-10);
}

TEST_CASE("diatomic search lands on the analytic minimum") {
  const PotentialModel model = make_xy_model(1, 1, 0.5);
  const StationaryPoint sp = find_stationary_point(model, diatomic_configuration(2.0));
  CHECK(sp.kind == StationaryKind::Minimum);
  CHECK(sp.signature.entries[0].second == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sp.gradient_norm <= 1e-10);
  CHECK(center_of_mass(model.spec(), sp.configuration).norm() <= 1e-12);
}

TEST_CASE("starting at the analytic minimum returns immediately") {
  const PotentialModel model = make_xy_model(1, 1, 0.5);
  const StationaryPoint sp = find_stationary_point(model, diatomic_configuration(1.0));
  CHECK(sp.iterations <= 1);
}

TEST_CASE("perturbed X4 square converges back to the square saddle") {
  const PotentialModel model = make_x4_model(1, 0.5);

  // Oracle at the exact square: restricted 1-D stationarity via bisection,
  // then a pure-V finite-difference Hessian must show a negative direction.
  const double r_sq = testsupport::bisect_stationary(
      [&](double r) {
        return model.total_potential(x4_square_configuration(r * std::numbers::sqrt2));
      },
      0.4, 1.5);
  const Configuration square = x4_square_configuration(r_sq * std::numbers::sqrt2);
  CHECK(model.gradient(square).norm() <= 1e-8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(testsupport::fd2_hessian(model, square));
  CHECK(es.eigenvalues()(0) < -1e-4);

  std::mt19937_64 rng(71);
  Configuration init = square;
  for (auto& p : init.positions) p += 1e-3 * testsupport::random_unit(rng);
  const StationaryPoint sp = find_stationary_point(model, init);
  // Report which stationary point the search found; with this perturbation it
  // stays on the square.
  CHECK(sp.kind == StationaryKind::Saddle);
  CHECK(sp.signature.matches(pair_distance_signature(model.spec(), square), 1e-6));
}

TEST_CASE("classification by inertial spectrum") {
  const PotentialModel xy = make_xy_model(1, 1, 0.5);
  const auto xy_cls = classify_stationary_point(xy, diatomic_configuration(1.0));
  CHECK(xy_cls.kind == StationaryKind::Minimum);
  CHECK(xy_cls.zero_modes == 5);
  int positive = 0;
  for (int i = 0; i < 6; ++i)
    if (xy_cls.eigenvalues(i) > 1e-7 * xy_cls.eigenvalues.cwiseAbs().maxCoeff()) ++positive;
  CHECK(positive == 1);

  const PotentialModel xy2 = make_xy2_model(1, 1, 0.5, 0.5);
  const auto bent_cls = classify_stationary_point(xy2, xy2_bent_configuration(1.0, 1.0));
  CHECK(bent_cls.kind == StationaryKind::Minimum);
  CHECK(bent_cls.zero_modes == 6);
  positive = 0;
  for (int i = 0; i < 9; ++i)
    if (bent_cls.eigenvalues(i) > 1e-7 * bent_cls.eigenvalues.cwiseAbs().maxCoeff()) ++positive;
  CHECK(positive == 3);

  const PotentialModel x3 = make_x3_model(1, 0.5);
  const auto linear_cls =
      classify_stationary_point(x3, x3_linear_configuration(std::cbrt(5.0 / 12.0)));
  CHECK(linear_cls.kind == StationaryKind::Saddle);
  CHECK(linear_cls.eigenvalues(0) < 0.0);
  CHECK(linear_cls.zero_modes == 5);

  CHECK_THROWS_AS(classify_stationary_point(xy, diatomic_configuration(2.0)),
                  NotStationaryError);
}

TEST_CASE("multistart X3 finds both the equilateral minimum and the linear saddle") {
  const PotentialModel model = make_x3_model(1, 0.5);
  const StationaryCatalog catalog = multistart_search(model, 64, 2026);
  REQUIRE(!catalog.entries.empty());

  const CatalogEntry* minimum = catalog.find_kind(StationaryKind::Minimum);
  REQUIRE(minimum != nullptr);
  for (const auto& [label, d] : minimum->point.signature.entries)
    CHECK(d == doctest::Approx(1.0).epsilon(1e-7));

  const CatalogEntry* saddle = catalog.find_kind(StationaryKind::Saddle);
  REQUIRE(saddle != nullptr);
  // Signature of the collinear point: (d, d, 2d) with d = (5/12)^(1/3).
  const double d = std::cbrt(5.0 / 12.0);
  CHECK(saddle->point.signature.entries[0].second == doctest::Approx(d).epsilon(1e-6));
  CHECK(saddle->point.signature.entries[2].second == doctest::Approx(2 * d).epsilon(1e-6));

  // The minimum sits below the saddle.
  CHECK(catalog.entries[0].point.kind == StationaryKind::Minimum);
}

TEST_CASE("multistart XY has a single orbit of minima") {
  const PotentialModel model = make_xy_model(1, 1, 0.5);
  const StationaryCatalog catalog = multistart_search(model, 16, 7);
  CHECK(catalog.entries.size() == 1);
  CHECK(catalog.entries[0].hits + catalog.failed_starts == 16);
}

TEST_CASE("multistart is deterministic given the seed") {
  const PotentialModel model = make_x3_model(1, 0.5);
  const StationaryCatalog a = multistart_search(model, 24, 99);
  const StationaryCatalog b = multistart_search(model, 24, 99);
  REQUIRE(a.entries.size() == b.entries.size());
  CHECK(a.failed_starts == b.failed_starts);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].hits == b.entries[i].hits);
    CHECK(a.entries[i].point.value == b.entries[i].point.value);  // bitwise
    CHECK(a.entries[i].point.configuration.stacked() ==
          b.entries[i].point.configuration.stacked());
  }
}

TEST_CASE("gauge neutrality: rotated starts give the same catalog entry") {
  std::mt19937_64 rng(73);
  const PotentialModel model = make_xy2_model(1, 1, 0.5, 0.5);
  const Configuration init = testsupport::random_configuration(3, 2.0, 0.3, rng);
  const StationaryPoint base = find_stationary_point(model, init);
  for (int trial = 0; trial < 5; ++trial) {
    const GroupElement g{testsupport::random_permutation(model.spec(), rng),
                         testsupport::random_orthogonal(rng)};
    const StationaryPoint other =
        find_stationary_point(model, apply_group_element(g, init));
    CHECK(other.signature.matches(base.signature, 1e-8));
    CHECK(other.value ==
          doctest::Approx(base.value).epsilon(1e-8));
  }
}

TEST_CASE("catalog entries re-verify their gradient norm") {
  const PotentialModel model = make_xy3_model(1, 1, 0.5, 2.0);
  const StationaryCatalog catalog = multistart_search(model, 16, 3);
  for (const auto& entry : catalog.entries)
    CHECK(model.gradient(entry.point.configuration).norm() <= 1e-9);
}

TEST_CASE("zero-mode counts across stationary points") {
  const PotentialModel x3 = make_x3_model(1, 0.5);
  const StationaryCatalog catalog = multistart_search(x3, 48, 2026);
  for (const auto& entry : catalog.entries) {
    const int expected = is_collinear(entry.point.configuration) ? 5 : 6;
    CHECK(entry.point.zero_modes == expected);
  }
}

TEST_CASE("multistart X4 resolves the whole catalog of shapes") {
  const PotentialModel model = make_x4_model(1, 0.5);
  const StationaryCatalog catalog = multistart_search(model, 48, 1);
  REQUIRE(!catalog.entries.empty());

  // Global minimum: the regular tetrahedron at the decoupled per-pair value.
  const auto& best = catalog.entries[0];
  CHECK(best.point.kind == StationaryKind::Minimum);
  CHECK(best.point.value == doctest::Approx(9.0).epsilon(1e-10));
  for (const auto& [label, d] : best.point.signature.entries)
    CHECK(d == doctest::Approx(1.0).epsilon(1e-7));

  // Everything else the search found is a saddle.
  for (std::size_t i = 1; i < catalog.entries.size(); ++i)
    CHECK(catalog.entries[i].point.kind == StationaryKind::Saddle);
}

TEST_CASE("hessian commutes with the isotropy group at detected stationary points") {
  const PotentialModel model = make_x3_model(1, 0.5);
  const StationaryCatalog catalog = multistart_search(model, 32, 2026);
  REQUIRE(catalog.entries.size() >= 2);
  for (const auto& entry : catalog.entries) {
    const PointGroupReport group =
        detect_point_group(model.spec(), entry.point.configuration);
    const CommutationReport report = verify_hessian_commutation(
        model.hessian(entry.point.configuration), group.elements, 1e-8);
    CHECK(report.pass);
  }
}

TEST_CASE("optimizer error paths") {
  const PotentialModel model = make_xy_model(1, 1, 0.5);
  OptimizerOptions few;
  few.max_iterations = 1;
  CHECK_THROWS_AS(find_stationary_point(model, diatomic_configuration(3.0), few),
                  ConvergenceError);
  try {
    find_stationary_point(model, diatomic_configuration(3.0), few);
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate.size() == 2);  // carries the last iterate
  }
  CHECK_THROWS_AS(find_stationary_point(model, Configuration({{0, 0, 0}, {0, 0, 1e-12}})),
                  DegeneratePathError);
  CHECK_THROWS_AS(multistart_search(model, 0, 1), DomainError);
}
