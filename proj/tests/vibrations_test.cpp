#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "molsym/equilibria.hpp"
#include "molsym/molecule_io.hpp"
#include "molsym/optimizer.hpp"
#include "molsym/vibrations.hpp"
#include "test_support.hpp"

using namespace molsym;

TEST_CASE("mass-weighted hessian") {
  const PotentialModel x2 = make_x2_model(1, 0.5);
  const Configuration pair = x2_configuration(1.0);
  const Eigen::MatrixXd h = x2.hessian(pair);

  // Unit masses: W = H.
  CHECK((mass_weighted_hessian(x2.spec(), h, x2.units()) - h).norm() <= 1e-14);

  // Unequal masses: the only non-zero eigenvalue is k (1/M1 + 1/M2) with
  // k = 6a the bond stiffness.
  const PotentialModel mixed =
      make_xy_model(1, 1, 0.5, UnitSystem::reduced(), 2.0, 3.0);
  const Configuration dia = diatomic_configuration(1.0);
  const Eigen::MatrixXd w =
      mass_weighted_hessian(mixed.spec(), mixed.hessian(dia), mixed.units());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
  CHECK(es.eigenvalues()(5) ==
        doctest::Approx(3.0 * (1.0 / 2.0 + 1.0 / 3.0)).epsilon(1e-12));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(es.eigenvalues()(i)) <= 1e-12);

  // trace(W) = sum_j H_jj / M_j.
  double expected_trace = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 3; ++k)
      expected_trace +=
          mixed.hessian(dia)(3 * j + k, 3 * j + k) / mixed.spec().mass_of(j);
  CHECK(w.trace() == doctest::Approx(expected_trace).epsilon(1e-12));

  CHECK_THROWS_AS(mass_weighted_hessian(x2.spec(), Eigen::MatrixXd::Zero(5, 5), x2.units()),
                  DimensionError);
}

TEST_CASE("diatomic normal mode: omega = sqrt(6) against the eigen oracle") {
  const PotentialModel model = make_xy_model(1, 1, 0.5);
  const Configuration minimum = centered(model.spec(), diatomic_configuration(1.0));
  const PointGroupReport group = detect_point_group(model.spec(), minimum);
  const NormalModeReport report = normal_modes(model, minimum, group);
  REQUIRE(report.modes.size() == 1);
  CHECK(report.zero_modes == 5);
  CHECK(report.modes[0].omega == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK(report.modes[0].omega == doctest::Approx(2.4495).epsilon(1e-4));

  // Independent oracle: eigenvalues of the pure-V finite-difference Hessian.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      testsupport::fd2_hessian(model, minimum));
  CHECK(std::sqrt(es.eigenvalues()(5)) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-5));
}

TEST_CASE("the X2 stretch lies in the totally symmetric subspace") {
  const PotentialModel model = make_x2_model(1, 0.5);
  const Configuration minimum = x2_configuration(1.0);
  const PointGroupReport group = detect_point_group(model.spec(), minimum);
  const NormalModeReport report = normal_modes(model, minimum, group);
  REQUIRE(report.modes.size() == 1);
  CHECK(report.modes[0].irrep == "unassigned");  // continuous group

  const Eigen::MatrixXd proj =
      totally_symmetric_projector(group, model.spec(), minimum);
  CHECK((proj * report.modes[0].vector - report.modes[0].vector).norm() <= 1e-9);
}

TEST_CASE("bent XY2 modes carry {A1, A1, B2}") {
  const PotentialModel model = make_xy2_model(1, 1, 0.5, 0.5);
  const Configuration minimum =
      centered(model.spec(), xy2_bent_configuration(1.0, 1.0));
  const PointGroupReport group = detect_point_group(model.spec(), minimum);
  REQUIRE(group.name == "C2v");
  const NormalModeReport report = normal_modes(model, minimum, group);
  REQUIRE(report.modes.size() == 3);
  CHECK(report.zero_modes == 6);

  std::multiset<std::string> labels;
  for (const auto& mode : report.modes) labels.insert(mode.irrep);
  CHECK(labels == std::multiset<std::string>{"A1", "A1", "B2"});

  // Character-projector oracle: each mode is fixed by its irrep projector.
  for (const auto& [label, projector] : irrep_projectors(group, model.spec())) {
    for (const auto& mode : report.modes) {
      const double overlap = (projector * mode.vector).norm();
      if (mode.irrep == label) CHECK(overlap == doctest::Approx(1.0).epsilon(1e-9));
      else CHECK(overlap <= 1e-9);
    }
  }
}

TEST_CASE("mode vectors are orthonormal and span the complement of rigid motions") {
  const PotentialModel model = make_xy3_model(1, 1, 0.5, 2.0);
  const Configuration minimum =
      centered(model.spec(), xy3_pyramidal_configuration(1.0, std::cbrt(0.25)));
  const PointGroupReport group = detect_point_group(model.spec(), minimum);
  const NormalModeReport report = normal_modes(model, minimum, group);
  REQUIRE(report.modes.size() == 6);  // 3N - 6 = 6

  // Equal masses here, so rigid motions look the same in mass-weighted
  // coordinates.
  const Eigen::MatrixXd rigid = rigid_motion_basis(minimum);
  for (std::size_t i = 0; i < report.modes.size(); ++i) {
    CHECK(report.modes[i].vector.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((rigid.transpose() * report.modes[i].vector).norm() <= 1e-9);
    for (std::size_t j = i + 1; j < report.modes.size(); ++j)
      CHECK(std::abs(report.modes[i].vector.dot(report.modes[j].vector)) <= 1e-9);
  }
}

TEST_CASE("degenerate E' frequencies agree pairwise") {
  const PotentialModel model = make_x3_model(1, 0.5);
  const Configuration minimum = x3_triangle_configuration(1.0);
  const PointGroupReport group = detect_point_group(model.spec(), minimum);
  const NormalModeReport report = normal_modes(model, minimum, group);
  REQUIRE(report.modes.size() == 3);  // A1' + E'
  std::vector<double> e_prime;
  for (const auto& mode : report.modes)
    if (mode.irrep == "E'") e_prime.push_back(mode.omega);
  REQUIRE(e_prime.size() == 2);
  CHECK(std::abs(e_prime[0] - e_prime[1]) <= 1e-8 * e_prime[0]);
}

TEST_CASE("normal modes refuse saddle points") {
  const PotentialModel model = make_x3_model(1, 0.5);
  const Configuration saddle = x3_linear_configuration(std::cbrt(5.0 / 12.0));
  const PointGroupReport group = detect_point_group(model.spec(), saddle);
  CHECK_THROWS_AS(normal_modes(model, saddle, group), NotAMinimumError);
}

TEST_CASE("diatomic frequency formula") {
  const UnitSystem red = UnitSystem::reduced();
  CHECK(diatomic_frequency({1, 1, 1, 1, 1}, red) == doctest::Approx(std::sqrt(6.0)));

  // Doubling both masses divides omega by sqrt(2).
  const double base = diatomic_frequency({1, 1, 1, 1, 1}, red);
  const double heavy = diatomic_frequency({1, 1, 2, 2, 1}, red);
  CHECK(heavy == doctest::Approx(base / std::numbers::sqrt2).epsilon(1e-12));

  // H2 at the reference bond length: about 7566 cm^-1 within 0.5%.
  const UnitSystem si = UnitSystem::si();
  const double omega = diatomic_frequency({1, 1, 1.007276, 1.007276, 0.07414e-9}, si);
  const double wavenumber = angular_frequency_to_wavenumber(omega, si);
  CHECK(std::abs(wavenumber - 7566.0) / 7566.0 <= 0.005);

  // Negative control: a 5% mass perturbation pushes the value out of the
  // 0.5% acceptance band, so the check is sensitive to the constants.
  const double perturbed = angular_frequency_to_wavenumber(
      diatomic_frequency({1, 1, 1.05 * 1.007276, 1.05 * 1.007276, 0.07414e-9}, si), si);
  CHECK(std::abs(perturbed - 7566.0) / 7566.0 > 0.005);

  CHECK_THROWS_AS(diatomic_frequency({1, 1, 1, -1, 1}, red), DomainError);
}

TEST_CASE("wavenumber conversion") {
  const UnitSystem si = UnitSystem::si();
  const double c_cm = si.constants().speed_of_light * 100.0;
  CHECK(angular_frequency_to_wavenumber(2.0 * std::numbers::pi * c_cm * 1000.0, si) ==
        doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(angular_frequency_to_wavenumber(0.0, si) == 0.0);
  CHECK_THROWS_AS(angular_frequency_to_wavenumber(1.0, UnitSystem::reduced()), UnitError);
}

TEST_CASE("eigen-consistency: formula equals the full pipeline") {
  // Reduced-unit diatomic with unequal masses.
  {
    const double a = 0.8, q1 = 2.0, q2 = 3.0;
    const PotentialModel model =
        make_xy_model(q1, q2, a, UnitSystem::reduced(), 1.5, 4.0);
    const double d0 = diatomic_bond_length(q1, q2, a, model.units());
    const Configuration minimum = centered(model.spec(), diatomic_configuration(d0));
    const PointGroupReport group = detect_point_group(model.spec(), minimum);
    const NormalModeReport report = normal_modes(model, minimum, group);
    REQUIRE(report.modes.size() == 1);
    const double formula = diatomic_frequency({q1, q2, 1.5, 4.0, d0}, model.units());
    CHECK(report.modes[0].omega == doctest::Approx(formula).epsilon(1e-9));
  }
  // SI H2: the built-in spec's minimum reproduces the wavenumber.
  {
    const ParsedSpec spec = builtin_spec("h2-si");
    const PotentialModel model = spec.model();
    const Configuration minimum = x2_configuration(0.07414e-9);
    const PointGroupReport group = detect_point_group(model.spec(), minimum);
    const NormalModeReport report = normal_modes(model, minimum, group);
    REQUIRE(report.modes.size() == 1);
    REQUIRE(report.modes[0].wavenumber.has_value());
    const double formula =
        diatomic_frequency({1, 1, 1.007276, 1.007276, 0.07414e-9}, model.units());
    CHECK(report.modes[0].omega == doctest::Approx(formula).epsilon(1e-9));
    CHECK(*report.modes[0].wavenumber == doctest::Approx(7565.3).epsilon(1e-3));
  }
}
