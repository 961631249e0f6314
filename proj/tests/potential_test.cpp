#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "molsym/equilibria.hpp"
#include "molsym/molecule_io.hpp"
#include "molsym/potential.hpp"
#include "molsym/symmetry.hpp"
#include "test_support.hpp"

using namespace molsym;

TEST_CASE("coulomb energy on reference pairs") {
  const PotentialModel xy = make_xy_model(1.0, 1.0, 0.5);
  CHECK(xy.coulomb_energy(diatomic_configuration(1.0)) == doctest::Approx(1.0));
  CHECK(xy.coulomb_energy(diatomic_configuration(2.0)) == doctest::Approx(0.5));

  const PotentialModel x3 = make_x3_model(1.0, 0.5);
  CHECK(x3.coulomb_energy(x3_triangle_configuration(1.0)) == doctest::Approx(3.0));

  CHECK_THROWS_AS(xy.coulomb_energy(Configuration({{0, 0, 0}, {0, 0, 1e-15}})),
                  DegenerateConfigurationError);
}

TEST_CASE("model electronic energy reproduces the per-pair quadratic forms") {
  const PotentialModel xy = make_xy_model(1.0, 1.0, 0.5);
  CHECK(xy.model_electronic_energy(diatomic_configuration(1.0)) == doctest::Approx(0.5));

  const PotentialModel xy2 = make_xy2_model(1.0, 1.0, 1.0, 2.0);
  const Configuration r({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(xy2.model_electronic_energy(r) == doctest::Approx(6.0));  // 1*(1+1) + 2*2

  std::mt19937_64 rng(3);
  const Configuration shifted = apply_translation(testsupport::random_unit(rng), r);
  CHECK(xy2.model_electronic_energy(shifted) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("a present species pair without a coefficient is rejected") {
  MoleculeSpec spec({Species{"X", 1.0, 1.0, 1}, Species{"Y", 1.0, 1.0, 2}});
  ModelCoefficients coeffs;
  coeffs.set("X", "Y", 1.0);  // Y-Y missing
  CHECK_THROWS_AS(PotentialModel(spec, coeffs, UnitSystem::reduced()), DomainError);
  CHECK_THROWS_AS(coeffs.set("X", "X", 0.0), DomainError);
}

TEST_CASE("total potential at the diatomic reference point and scan oracle") {
  const PotentialModel xy = make_xy_model(1.0, 1.0, 0.5);
  CHECK(xy.total_potential(diatomic_configuration(1.0)) == doctest::Approx(1.5));

  // 1-D grid scan of V(d) over (0, 5]: the minimum sits at d = 1, V = 1.5.
  double best_d = 0.0, best_v = 1e300;
  for (int k = 1; k <= 5000; ++k) {
    const double d = 5.0 * k / 5000.0;
    const double v = xy.total_potential(diatomic_configuration(d));
    if (v < best_v) {
      best_v = v;
      best_d = d;
    }
  }
  CHECK(best_d == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(best_v == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(xy.total_potential(diatomic_configuration(1.0)) <= best_v + 1e-12);
}

TEST_CASE("G-invariance and translation invariance of V") {
  std::mt19937_64 rng(17);
  const std::vector<PotentialModel> models = {
      make_xy_model(1.0, 1.0, 0.5), make_x2_model(1.0, 0.5),
      make_xy2_model(1.0, 1.0, 0.5, 0.5), make_x3_model(1.0, 0.5),
      make_xy3_model(1.0, 1.0, 0.5, 2.0), make_x4_model(1.0, 0.5)};
  for (const auto& model : models) {
    const int n = model.spec().nucleus_count();
    for (int trial = 0; trial < 1000; ++trial) {
      const Configuration r = testsupport::random_configuration(n, 2.0, 0.05, rng);
      const double v = model.total_potential(r);
      const GroupElement g{testsupport::random_permutation(model.spec(), rng),
                           testsupport::random_orthogonal(rng)};
      const double bound = 1e-10 * std::max(1.0, std::abs(v));
      CHECK(std::abs(model.total_potential(apply_group_element(g, r)) - v) <= bound);
      CHECK(std::abs(model.total_potential(
                apply_translation(2.0 * testsupport::random_unit(rng), r)) -
                     v) <= bound);
    }
  }
}

TEST_CASE("gradient: stationarity, finite-difference oracle, sum rule") {
  const PotentialModel xy = make_xy_model(1.0, 1.0, 0.5);
  CHECK(xy.gradient(diatomic_configuration(1.0)).norm() <= 1e-10);

  std::mt19937_64 rng(23);
  const PotentialModel xy2 = make_xy2_model(1.0, 1.0, 0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration r = testsupport::random_configuration(3, 2.0, 0.35, rng);
    const Eigen::VectorXd g = xy2.gradient(r);
    const Eigen::VectorXd g_fd = testsupport::fd_gradient(xy2, r);
    CHECK((g - g_fd).norm() <= 1e-6 * std::max(1.0, g_fd.norm()));

    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int j = 0; j < 3; ++j) sum += g.segment<3>(3 * j);
    CHECK(sum.norm() <= 1e-12 * std::max(1.0, g.norm()));

    // Translating the configuration leaves the gradient unchanged.
    const Eigen::VectorXd g_t =
        xy2.gradient(apply_translation(testsupport::random_unit(rng), r));
    CHECK((g - g_t).norm() <= 1e-9 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("gradient and hessian transform covariantly under the group") {
  std::mt19937_64 rng(29);
  const PotentialModel model = make_xy3_model(1.0, 1.0, 0.5, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Configuration r = testsupport::random_configuration(4, 2.0, 0.2, rng);
    const GroupElement g{testsupport::random_permutation(model.spec(), rng),
                         testsupport::random_orthogonal(rng)};
    const Eigen::MatrixXd d = dynamical_rep_matrix(g.perm, g.rotation);
    const Configuration gr = apply_group_element(g, r);

    const Eigen::VectorXd lhs_g = model.gradient(gr);
    const Eigen::VectorXd rhs_g = d * model.gradient(r);
    CHECK((lhs_g - rhs_g).norm() <= 1e-9 * std::max(1.0, rhs_g.norm()));

    const Eigen::MatrixXd lhs_h = model.hessian(gr);
    const Eigen::MatrixXd rhs_h = d * model.hessian(r) * d.transpose();
    CHECK((lhs_h - rhs_h).norm() <= 1e-9 * std::max(1.0, rhs_h.norm()));
  }
}

TEST_CASE("hessian at the diatomic minimum: radial stiffness and spectrum") {
  const double a = 0.5;
  const PotentialModel xy = make_xy_model(1.0, 1.0, a);

  // Second derivative along the bond coordinate from a pure-V oracle; the
  // quadratic coefficient of the bond expansion doubled, 6a.
  const auto v_of_d = [&](double d) { return xy.total_potential(diatomic_configuration(d)); };
  const double h = 1e-5;
  const double radial_fd = (v_of_d(1.0 + h) - 2.0 * v_of_d(1.0) + v_of_d(1.0 - h)) / (h * h);
  CHECK(radial_fd == doctest::Approx(6.0 * a).epsilon(1e-6));

  // Full-Hessian oracle: second differences of V only. The unique non-zero
  // eigenvalue of the 6x6 Hessian is 2 * 6a.
  const Configuration min_config = diatomic_configuration(1.0);
  const Eigen::MatrixXd h_fd = testsupport::fd2_hessian(xy, min_config, 1e-4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_fd(h_fd);
  CHECK(es_fd.eigenvalues()(5) == doctest::Approx(12.0 * a).epsilon(1e-5));

  const Eigen::MatrixXd h_an = xy.hessian(min_config);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_an);
  CHECK(es.eigenvalues()(5) == doctest::Approx(12.0 * a).epsilon(1e-12));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(es.eigenvalues()(i)) <= 1e-12);  // collinear: 5
  CHECK((h_an - h_an.transpose()).norm() <= 1e-12);
}

TEST_CASE("hessian against the finite-difference-of-gradient oracle") {
  std::mt19937_64 rng(31);
  const PotentialModel x4 = make_x4_model(1.0, 0.5);
  for (int trial = 0; trial < 25; ++trial) {
    const Configuration r = testsupport::random_configuration(4, 2.0, 0.35, rng);
    const Eigen::MatrixXd h_an = x4.hessian(r);
    const Eigen::MatrixXd h_fd = testsupport::fd_hessian(x4, r);
    CHECK((h_an - h_fd).norm() <= 1e-6 * std::max(1.0, h_fd.norm()));
    CHECK((h_an - h_an.transpose()).norm() <= 1e-12 * std::max(1.0, h_an.norm()));

    // Row-blocks sum to zero over translations.
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXd t = Eigen::VectorXd::Zero(12);
      for (int j = 0; j < 4; ++j) t(3 * j + k) = 1.0;
      CHECK((h_an * t).norm() <= 1e-12 * std::max(1.0, h_an.norm()));
    }
  }
}

TEST_CASE("hessian at a non-collinear minimum has six zero modes") {
  const PotentialModel xy2 = make_xy2_model(1.0, 1.0, 0.5, 0.5);
  const Eigen::MatrixXd h = xy2.hessian(xy2_bent_configuration(1.0, 1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const double cut = 1e-7 * es.eigenvalues().cwiseAbs().maxCoeff();
  int zeros = 0;
  for (int i = 0; i < 9; ++i)
    if (std::abs(es.eigenvalues()(i)) <= cut) ++zeros;
  CHECK(zeros == 6);
}

TEST_CASE("inverse_norm_quadratic") {
  const Eigen::Vector3d rho(0, 0, 1);
  CHECK(inverse_norm_quadratic(rho, Eigen::Vector3d::Zero()) == doctest::Approx(1.0));
  CHECK(inverse_norm_quadratic(2.0 * rho, Eigen::Vector3d::Zero()) == doctest::Approx(0.5));

  // Orthogonal displacement: 1 - eps^2/2 exactly (third term only).
  const double eps = 1e-3;
  CHECK(inverse_norm_quadratic(rho, {eps, 0, 0}) ==
        doctest::Approx(1.0 - eps * eps / 2.0).epsilon(1e-15));

  // Axial displacement: halving the step shrinks the error by about 8.
  const auto error_at = [&](double t) {
    const Eigen::Vector3d d(0, 0, t);
    return std::abs(inverse_norm_quadratic(rho, d) - 1.0 / (rho + d).norm());
  };
  const double ratio = error_at(1e-2) / error_at(5e-3);
  CHECK(ratio > 7.0);
  CHECK(ratio < 9.0);

  CHECK_THROWS_AS(inverse_norm_quadratic(Eigen::Vector3d::Zero(), rho), DomainError);
}
