#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcat/layout.hpp"

namespace qcat {

// Normalized amplitude vector over a layout.
class PureState {
public:
  PureState(SystemLayout layout, Eigen::VectorXcd amplitudes);

  const SystemLayout& layout() const { return layout_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

private:
  SystemLayout layout_;
  Eigen::VectorXcd amplitudes_;
};

// Hermitian, unit-trace operator over a layout. The matrix is symmetrized on
// construction to suppress round-off drift; positivity is checked lazily via
// validate() since it requires a spectral decomposition.
class DensityOperator {
public:
  DensityOperator(SystemLayout layout, Eigen::MatrixXcd matrix);

  const SystemLayout& layout() const { return layout_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

  double purity() const;  // Tr[rho^2]
  // Full invariant check including the spectrum: eigenvalues >= -1e-10.
  void validate() const;

private:
  SystemLayout layout_;
  Eigen::MatrixXcd matrix_;
};

// The trivial state on the empty layout; stands in for absent tensor factors.
DensityOperator scalar_state();

DensityOperator to_density(const PureState& psi);

PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Discards the given subsystems; the remaining labels keep their original order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> discard);

// Moves the content of subsystem `from` into subsystem `to` for every listed
// pair (identity elsewhere). The moves must form a bijection on the covered
// labels and may only connect subsystems of equal dimension. The layout is
// unchanged; amplitudes/matrix entries are re-indexed exactly.
PureState permute_subsystems(const PureState& psi,
                             std::span<const std::pair<std::string, std::string>> moves);
DensityOperator permute_subsystems(const DensityOperator& rho,
                                   std::span<const std::pair<std::string, std::string>> moves);

// Renames subsystems without touching the data.
PureState relabel(const PureState& psi,
                  std::span<const std::pair<std::string, std::string>> renames);
DensityOperator relabel(const DensityOperator& rho,
                        std::span<const std::pair<std::string, std::string>> renames);
DensityOperator with_party(const DensityOperator& rho, std::span<const std::string> labels,
                           Party party);

// Classical mixture sum_i w_i rho_i; weights must be nonnegative and sum to 1.
DensityOperator mix(std::span<const std::pair<double, DensityOperator>> terms);

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double max_abs_diff(const DensityOperator& a, const DensityOperator& b);

namespace detail {
// Permutation taking the current layout order to `front` followed by the rest
// in original order. Returns (reordered layout, old position of each new slot).
std::pair<SystemLayout, std::vector<std::size_t>> front_order(
    const SystemLayout& layout, std::span<const std::string> front);

// Reorders tensor factors of a vector/matrix: slot i of the result is fed from
// source position `source_of[i]` of the input layout.
Eigen::VectorXcd reorder_vector(const SystemLayout& layout, const Eigen::VectorXcd& v,
                                std::span<const std::size_t> source_of);
Eigen::MatrixXcd reorder_matrix(const SystemLayout& layout, const Eigen::MatrixXcd& m,
                                std::span<const std::size_t> source_of);
}  // namespace detail

}  // namespace qcat
