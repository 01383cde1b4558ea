#include <doctest.h>

#include <random>

#include "qcat/builtin.hpp"
#include "qcat/channel.hpp"
#include "qcat/measures.hpp"
#include "qcat/random.hpp"
#include "test_helpers.hpp"

using namespace qcat;
using namespace qcat::testing;

TEST_CASE("channel construction checks trace preservation") {
  std::vector<Eigen::MatrixXcd> bad{0.5 * Eigen::MatrixXcd::Identity(2, 2)};
  CHECK_THROWS_AS(QuantumChannel(bad, {"A"}, {"A"}), std::invalid_argument);
}

TEST_CASE("identity channel leaves the state unchanged") {
  std::mt19937_64 rng(3);
  const DensityOperator rho = random_density_operator(qubit_pair(), rng);
  const auto id = QuantumChannel::identity(2, {"A"});
  CHECK(max_abs_diff(apply_channel(rho, id, std::vector<std::string>{"A"}), rho) < 1e-14);
}

TEST_CASE("depolarizing channel outputs the maximally mixed state") {
  std::mt19937_64 rng(5);
  const DensityOperator rho = random_density_operator(qubit_pair(), rng);
  const auto dep = QuantumChannel::depolarizing(2, {"A"});
  const DensityOperator out = apply_channel(rho, dep, std::vector<std::string>{"A"});
  const DensityOperator marginal_a = partial_trace(out, std::vector<std::string>{"B"});
  CHECK(max_abs_diff(marginal_a.matrix(), Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-12);
  // The untouched side keeps its marginal.
  CHECK(max_abs_diff(partial_trace(out, std::vector<std::string>{"A"}),
                     partial_trace(rho, std::vector<std::string>{"A"})) < 1e-12);
}

TEST_CASE("swap channel exchanges the two factors") {
  std::mt19937_64 rng(7);
  SystemLayout l1({Subsystem{"S1", 2, Party::Alice}});
  SystemLayout l2({Subsystem{"S2", 2, Party::Alice}});
  const DensityOperator rho = random_density_operator(l1, rng);
  const DensityOperator sigma = random_density_operator(l2, rng);

  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) swap(b * 2 + a, a * 2 + b) = 1.0;
  const auto channel = QuantumChannel::from_unitary(swap, {"S1", "S2"});

  const DensityOperator swapped =
      apply_channel(tensor(rho, sigma), channel, std::vector<std::string>{"S1", "S2"});
  auto rename = [](const DensityOperator& r, const std::string& to) {
    return relabel(r, std::vector<std::pair<std::string, std::string>>{
                          {r.layout().at(0).label, to}});
  };
  CHECK(max_abs_diff(swapped, tensor(rename(sigma, "S1"), rename(rho, "S2"))) < 1e-14);
}

TEST_CASE("replace channel reprepares its target on any input") {
  std::mt19937_64 rng(9);
  const DensityOperator gamma = random_density_operator(qubit_pair(), rng);
  const DensityOperator input = random_density_operator(qubit_pair(), rng);
  const auto channel = QuantumChannel::replace_with(gamma);
  const DensityOperator out =
      apply_channel(input, channel, std::vector<std::string>{"A", "B"});
  CHECK(max_abs_diff(out, gamma) < 1e-12);
}

TEST_CASE("channel application preserves trace within 1e-9") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho = random_density_operator(three_qubits(), rng);
    const QuantumChannel channel = random_channel(2, 3, {"A"}, rng);
    const DensityOperator out = apply_channel(rho, channel, std::vector<std::string>{"A"});
    CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-9);
  }
}

TEST_CASE("channel outputs stay positive on random inputs") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator rho = random_density_operator(qubit_pair(), rng);
    const QuantumChannel channel = random_channel(4, 5, {"A", "B"}, rng);
    const DensityOperator out = apply_channel(rho, channel, std::vector<std::string>{"A", "B"});
    const Eigen::VectorXd eigs = eigenvalues_descending(out);
    CHECK(eigs.minCoeff() >= -1e-9);
  }
}

TEST_CASE("channel dimension mismatch is rejected") {
  const DensityOperator rho = maximally_mixed(qubit_pair());
  const auto id3 = QuantumChannel::identity(3, {"A"});
  CHECK_THROWS_AS(apply_channel(rho, id3, std::vector<std::string>{"A"}), std::invalid_argument);
}

TEST_CASE("local unitaries preserve purity and reject non-unitaries") {
  std::mt19937_64 rng(17);
  const PureState psi = random_pure_state(qubit_pair(), rng);
  const Eigen::MatrixXcd u = random_unitary(2, rng);
  const PureState evolved = apply_local_unitary(psi, u, std::vector<std::string>{"A"});
  CHECK(std::abs(evolved.amplitudes().norm() - 1.0) < 1e-12);

  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Ones(2, 2);
  CHECK_THROWS_AS(apply_local_unitary(psi, not_unitary, std::vector<std::string>{"A"}),
                  std::invalid_argument);
}

TEST_CASE("identity unitary is a no-op") {
  std::mt19937_64 rng(19);
  const DensityOperator rho = random_density_operator(qubit_pair(), rng);
  const DensityOperator out =
      apply_local_unitary(rho, Eigen::MatrixXcd::Identity(2, 2), std::vector<std::string>{"B"});
  CHECK(max_abs_diff(out, rho) < 1e-14);
}

TEST_CASE("the register shift has order n") {
  const Eigen::MatrixXcd shift = cyclic_shift_matrix(2);
  CHECK(max_abs_diff(shift * shift, Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

  std::mt19937_64 rng(23);
  SystemLayout reg({Subsystem{"K", 3, Party::Alice}});
  const DensityOperator rho = random_density_operator(reg, rng);
  DensityOperator cycled = rho;
  for (int i = 0; i < 3; ++i)
    cycled = apply_local_unitary(cycled, cyclic_shift_matrix(3), std::vector<std::string>{"K"});
  CHECK(max_abs_diff(cycled, rho) < 1e-14);
}

TEST_CASE("SWAP unitary exchanges |01> and |10>") {
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const PureState in = basis_state(qubit_pair(), 1);  // |01>
  const PureState out = apply_local_unitary(in, swap, std::vector<std::string>{"A", "B"});
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
  expected(2) = 1.0;  // |10>
  CHECK((out.amplitudes() - expected).norm() == 0.0);
}

TEST_CASE("computational measurement of |0> is deterministic") {
  SystemLayout qubit({Subsystem{"A", 2, Party::Alice}});
  const DensityOperator zero = to_density(basis_state(qubit, 0));
  std::vector<Eigen::VectorXcd> basis(2);
  basis[0] = Eigen::VectorXcd::Zero(2);
  basis[0](0) = 1.0;
  basis[1] = Eigen::VectorXcd::Zero(2);
  basis[1](1) = 1.0;

  const auto outcomes = projective_measure(zero, basis, "A");
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(outcomes[0].post_state.has_value());
  CHECK(outcomes[1].probability == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(outcomes[1].post_state.has_value());
}

TEST_CASE("measuring the maximally mixed qubit is uniform") {
  SystemLayout qubit({Subsystem{"A", 2, Party::Alice}});
  const DensityOperator mixed = maximally_mixed(qubit);
  std::vector<Eigen::VectorXcd> basis(2);
  basis[0] = Eigen::VectorXcd::Zero(2);
  basis[0](0) = 1.0;
  basis[1] = Eigen::VectorXcd::Zero(2);
  basis[1](1) = 1.0;

  const auto outcomes = projective_measure(mixed, basis, "A");
  double total = 0.0;
  for (const auto& o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.5).epsilon(1e-12));
    total += o.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measurement rejects a non-orthonormal basis") {
  SystemLayout qubit({Subsystem{"A", 2, Party::Alice}});
  const DensityOperator mixed = maximally_mixed(qubit);
  std::vector<Eigen::VectorXcd> bad(2);
  bad[0] = Eigen::VectorXcd::Zero(2);
  bad[0](0) = 1.0;
  bad[1] = bad[0];
  CHECK_THROWS_AS(projective_measure(mixed, bad, "A"), std::invalid_argument);
}
