#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "qcat/state.hpp"

namespace qcat {

// Bipartite normal form sum_i c_i |l_i>|r_i> with nonnegative coefficients
// sorted in decreasing order. Left basis vectors live on the cut subsystems in
// the order given to schmidt(); right basis vectors on the remaining
// subsystems in original layout order.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  std::vector<Eigen::VectorXcd> left_basis;
  std::vector<Eigen::VectorXcd> right_basis;
};

SchmidtDecomposition schmidt(const PureState& psi, std::span<const std::string> cut_left);

// Canonical purification on layout ⊗ T with dim(T) = dim(rho): the Schmidt
// coefficients across the original|T cut are the square roots of rho's
// eigenvalues in decreasing order. T is assigned to the Referee.
PureState purify(const DensityOperator& rho);

}  // namespace qcat
