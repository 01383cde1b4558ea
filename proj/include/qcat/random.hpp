#pragma once

#include <Eigen/Dense>
#include <random>

#include "qcat/channel.hpp"
#include "qcat/measures.hpp"
#include "qcat/state.hpp"

namespace qcat {

// Seeded generators for property checks; all draws are deterministic for a
// given engine state.

Eigen::VectorXcd random_unit_vector(std::size_t dim, std::mt19937_64& rng);
PureState random_pure_state(SystemLayout layout, std::mt19937_64& rng);
// rank = 0 draws a full-rank state.
DensityOperator random_density_operator(SystemLayout layout, std::mt19937_64& rng,
                                        std::size_t rank = 0);
Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng);
QuantumChannel random_channel(std::size_t dim, std::size_t kraus_count,
                              std::vector<std::string> labels, std::mt19937_64& rng);
ProbabilityVector random_probability_vector(std::size_t length, std::mt19937_64& rng);

}  // namespace qcat
