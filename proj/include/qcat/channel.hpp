#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcat/state.hpp"

namespace qcat {

// Completely positive trace-preserving map in operator-sum form. The Kraus
// operators are square; input and output label lists name the subsystems the
// map expects (positional, matching the targets passed to apply_channel).
class QuantumChannel {
public:
  QuantumChannel(std::vector<Eigen::MatrixXcd> kraus_ops, std::vector<std::string> input_labels,
                 std::vector<std::string> output_labels);

  const std::vector<Eigen::MatrixXcd>& kraus_ops() const { return kraus_; }
  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const { return output_labels_; }
  std::size_t dimension() const { return static_cast<std::size_t>(kraus_.front().rows()); }

  static QuantumChannel identity(std::size_t dim, std::vector<std::string> labels);
  static QuantumChannel from_unitary(const Eigen::MatrixXcd& u, std::vector<std::string> labels);
  // Maps every input to I/dim.
  static QuantumChannel depolarizing(std::size_t dim, std::vector<std::string> labels);
  // Measure-and-reprepare map whose output is `gamma` for every input. The
  // Kraus rank is dim * rank(gamma), which is minimal for this map.
  static QuantumChannel replace_with(const DensityOperator& gamma);

private:
  std::vector<Eigen::MatrixXcd> kraus_;
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;
};

// Applies the channel on the named target subsystems (identity elsewhere).
// Targets are matched positionally against the channel's input labels.
DensityOperator apply_channel(const DensityOperator& rho, const QuantumChannel& channel,
                              std::span<const std::string> targets);

// Conjugates by a unitary embedded on the target subsystems.
PureState apply_local_unitary(const PureState& psi, const Eigen::MatrixXcd& u,
                              std::span<const std::string> targets);
DensityOperator apply_local_unitary(const DensityOperator& rho, const Eigen::MatrixXcd& u,
                                    std::span<const std::string> targets);

struct MeasurementOutcome {
  double probability = 0.0;
  // Absent for zero-probability outcomes.
  std::optional<DensityOperator> post_state;
};

// Rank-1 projective measurement of one subsystem in the supplied orthonormal
// basis. Outcomes follow the basis order; post states are renormalized.
std::vector<MeasurementOutcome> projective_measure(const DensityOperator& rho,
                                                   std::span<const Eigen::VectorXcd> basis,
                                                   const std::string& target);

// Permutation matrix |i> -> |i+1>, |n-1> -> |0> on an n-dimensional register
// (the register shift of the catalysis protocol, with 0-based indexing).
Eigen::MatrixXcd cyclic_shift_matrix(std::size_t n);

}  // namespace qcat
