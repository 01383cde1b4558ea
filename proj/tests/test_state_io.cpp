#include <doctest.h>

#include <random>

#include "qcat/builtin.hpp"
#include "qcat/random.hpp"
#include "qcat/state_io.hpp"
#include "test_helpers.hpp"

using namespace qcat;
using namespace qcat::testing;

TEST_CASE("pure state documents round trip") {
  std::mt19937_64 rng(151);
  const PureState psi = random_pure_state(three_qubits(), rng);
  const LoadedState loaded = read_state_json(write_state_json(psi));
  const auto* back = std::get_if<PureState>(&loaded);
  REQUIRE(back != nullptr);
  CHECK(back->layout() == psi.layout());
  CHECK((back->amplitudes() - psi.amplitudes()).norm() < 1e-15);
}

TEST_CASE("density documents round trip") {
  std::mt19937_64 rng(157);
  const DensityOperator rho = random_density_operator(qubit_pair(), rng);
  const LoadedState loaded = read_state_json(write_state_json(rho));
  const auto* back = std::get_if<DensityOperator>(&loaded);
  REQUIRE(back != nullptr);
  CHECK(back->layout() == rho.layout());
  CHECK(max_abs_diff(*back, rho) < 1e-15);
}

TEST_CASE("malformed documents name the offending field") {
  CHECK_THROWS_AS(read_state_json("not json at all"), ParseError);
  CHECK_THROWS_WITH_AS(read_state_json(R"({"kind": "pure", "data": []})"),
                       doctest::Contains("layout"), ParseError);
  CHECK_THROWS_WITH_AS(
      read_state_json(
          R"({"layout": [{"label": "A", "dim": 2, "party": "Nobody"}], "kind": "pure", "data": []})"),
      doctest::Contains("party"), ParseError);
  CHECK_THROWS_WITH_AS(
      read_state_json(
          R"({"layout": [{"label": "A", "dim": 2, "party": "Alice"}], "kind": "pure", "data": [[1, 0]]})"),
      doctest::Contains("data"), ParseError);
  CHECK_THROWS_WITH_AS(
      read_state_json(
          R"({"layout": [{"label": "A", "dim": 2, "party": "Alice"}], "kind": "blurry", "data": []})"),
      doctest::Contains("kind"), ParseError);
}

TEST_CASE("non-normalized data is rejected with the measured deviation") {
  const std::string doc =
      R"({"layout": [{"label": "A", "dim": 2, "party": "Alice"}], "kind": "pure", "data": [[1, 0], [1, 0]]})";
  CHECK_THROWS_WITH_AS(read_state_json(doc), doctest::Contains("normalized"), ParseError);
}

TEST_CASE("density documents are checked for positivity") {
  const std::string doc =
      R"({"layout": [{"label": "A", "dim": 2, "party": "Alice"}],
          "kind": "density",
          "data": [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]})";
  CHECK_THROWS_WITH_AS(read_state_json(doc), doctest::Contains("eigenvalue"), ParseError);
}

TEST_CASE("built-in states resolve by name") {
  CHECK(builtin_state("bell").has_value());
  CHECK(builtin_state("ghz").has_value());
  CHECK(builtin_state("w").has_value());
  CHECK(builtin_state("jp-psi").has_value());
  CHECK(builtin_state("jp-phi").has_value());
  CHECK_FALSE(builtin_state("nonesuch").has_value());

  const auto bell = builtin_state("bell");
  const auto* pure = std::get_if<PureState>(&*bell);
  REQUIRE(pure != nullptr);
  CHECK(pure->layout().labels_of(Party::Alice) == std::vector<std::string>{"A"});
}

TEST_CASE("missing files raise parse errors") {
  CHECK_THROWS_AS(load_state_file("/nonexistent/state.json"), ParseError);
}

TEST_CASE("ledger documents round trip") {
  ResourceLedger ledger;
  ledger.conditional_entropy = -0.75;
  ledger.ledger_case = LedgerCase::NegativeYieldsResource;
  ledger.resource_entropy = 0.75;
  ledger.resource_spectrum = ProbabilityVector({0.8, 0.2});
  ledger.direction = MergeDirection::CToA;

  const ResourceLedger back = ledger_from_json(ledger_to_json(ledger));
  CHECK(back.conditional_entropy == ledger.conditional_entropy);
  CHECK(back.ledger_case == ledger.ledger_case);
  CHECK(back.resource_entropy == ledger.resource_entropy);
  CHECK(back.resource_spectrum.entries() == ledger.resource_spectrum.entries());
  REQUIRE(back.direction.has_value());
  CHECK(*back.direction == MergeDirection::CToA);
}
