#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "molsym/equilibria.hpp"
#include "molsym/molecule_io.hpp"
#include "molsym/verify.hpp"

using namespace molsym;

namespace {

const char* kX3Spec = R"({
  "species": [{"label": "X", "charge": 1.0, "mass": 1.0, "count": 3}],
  "units": "reduced",
  "coefficients": [{"pair": ["X", "X"], "value": 0.5}]
})";

}  // namespace

TEST_CASE("spec file parsing honors the published field names") {
  const ParsedSpec spec = parse_spec_json(kX3Spec);
  CHECK(spec.species.size() == 1);
  CHECK(spec.species[0].label == "X");
  CHECK(spec.species[0].count == 3);
  CHECK_FALSE(spec.units.is_si());
  CHECK(spec.coefficients.get("X", "X") == 0.5);
  CHECK(*classify_molecule_type(spec.molecule()) == MoleculeType::X3);
}

TEST_CASE("spec parsing errors carry field context") {
  CHECK_THROWS_AS(parse_spec_json("{"), ParseError);
  CHECK_THROWS_AS(parse_spec_json("[]"), ParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"species": []})"), ParseError);
  CHECK_THROWS_AS(
      parse_spec_json(R"({"species":[{"label":"X","charge":1,"mass":1}],"coefficients":[]})"),
      ParseError);  // missing count
  CHECK_THROWS_AS(
      parse_spec_json(
          R"({"species":[{"label":"X","charge":1,"mass":1,"count":2}],"units":"cgs","coefficients":[{"pair":["X","X"],"value":1}]})"),
      ParseError);
  // Missing coefficient for a present pair fails at model validation.
  CHECK_THROWS_AS(
      parse_spec_json(
          R"({"species":[{"label":"X","charge":1,"mass":1,"count":2}],"coefficients":[]})"),
      Error);

  try {
    parse_spec_json(R"({"species":[{"label":"X","charge":"one","mass":1,"count":2}]})");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("species[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("charge") != std::string::npos);
  }
}

TEST_CASE("initial configuration must match the nucleus count") {
  const std::string text = R"({
    "species": [{"label": "X", "charge": 1.0, "mass": 1.0, "count": 3}],
    "coefficients": [{"pair": ["X", "X"], "value": 0.5}],
    "initial_configuration": [[0,0,0],[0,0,1]]
  })";
  CHECK_THROWS_AS(parse_spec_json(text), ParseError);
}

TEST_CASE("spec round-trips through JSON") {
  ParsedSpec spec = parse_spec_json(kX3Spec);
  spec.initial_configuration = Configuration({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  const ParsedSpec again = parse_spec_json(spec_to_json(spec));
  CHECK(again.species[0].label == spec.species[0].label);
  CHECK(again.species[0].mass == spec.species[0].mass);
  CHECK(again.coefficients.get("X", "X") == spec.coefficients.get("X", "X"));
  REQUIRE(again.initial_configuration.has_value());
  CHECK(again.initial_configuration->positions[2].y() == 1.0);
}

TEST_CASE("configuration files accept both accepted shapes") {
  const Configuration bare = parse_configuration_json("[[0,0,0],[0,0,1.5]]");
  CHECK(bare.size() == 2);
  CHECK(bare.positions[1].z() == 1.5);
  const Configuration wrapped =
      parse_configuration_json(R"({"positions": [[1,2,3]]})");
  CHECK(wrapped.positions[0].y() == 2.0);
  CHECK_THROWS_AS(parse_configuration_json("[[0,0]]"), ParseError);
}

TEST_CASE("builtin specs all construct valid models") {
  for (const auto& name : builtin_spec_names()) {
    const ParsedSpec spec = builtin_spec(name);
    const PotentialModel model = spec.model();
    CHECK(model.spec().nucleus_count() >= 2);
  }
  CHECK_THROWS_AS(builtin_spec("nope"), ParseError);

  // The SI H2 spec has its analytic minimum at the reference H2 bond length.
  const ParsedSpec h2 = builtin_spec("h2-si");
  const double a = h2.coefficients.get("X", "X");
  const double d0 = diatomic_bond_length(1.0, 1.0, a, h2.units);
  CHECK(d0 == doctest::Approx(0.07414e-9).epsilon(1e-12));
}

TEST_CASE("builtin check registry") {
  CHECK(builtin_check_names().size() == 15);
  VerifyOptions opts;
  opts.only = "h2";
  const auto results = run_builtin_checks(opts);
  REQUIRE(results.size() == 1);
  CHECK(results[0].name == "h2_frequency");
  CHECK(results[0].pass);
}
