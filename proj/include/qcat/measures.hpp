#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "qcat/state.hpp"

namespace qcat {

// All entropies are in bits (log base 2).

// Nonnegative entries summing to 1; the numerical currency of majorization
// checks and resource ledgers (squared Schmidt spectra, catalyst spectra).
class ProbabilityVector {
public:
  explicit ProbabilityVector(std::vector<double> entries);
  static ProbabilityVector uniform(std::size_t n);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_.at(i); }

  std::vector<double> sorted_descending() const;
  double entropy_bits() const;  // Shannon entropy, 0 log 0 := 0

private:
  std::vector<double> entries_;
};

// Flattened tensor product of two spectra (all pairwise products).
ProbabilityVector outer(const ProbabilityVector& a, const ProbabilityVector& b);

// Returns true iff p is majorized by q (p ≺ q): every sorted partial sum of q
// dominates the corresponding partial sum of p within 1e-10, after zero
// padding to equal length. In LOCC terms, a pure state with squared Schmidt
// spectrum p converts to one with spectrum q.
bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q);
// Same check, reporting the 1-based length of the first violated partial sum
// (0 when p ≺ q holds).
std::size_t first_majorization_violation(const ProbabilityVector& p, const ProbabilityVector& q);

// Eigenvalues of the (hermitized) operator sorted in decreasing order with
// small negative round-off clamped to zero.
Eigen::VectorXd eigenvalues_descending(const DensityOperator& rho);

// Squared Schmidt coefficients across the cut, in decreasing order.
ProbabilityVector schmidt_spectrum(const PureState& psi, std::span<const std::string> cut_left);

// sum_i sqrt(p_i) |i>|i> over two subsystems of dimension spectrum.size().
PureState pure_from_spectrum(const ProbabilityVector& spectrum,
                             const std::string& label_a = "A", Party party_a = Party::Alice,
                             const std::string& label_b = "B", Party party_b = Party::Bob);

double von_neumann_entropy(const DensityOperator& rho);

// Entropy of the reduced state on either side of the cut; cut_left names one
// side, the complement forms the other.
double entanglement_entropy(const PureState& psi, std::span<const std::string> cut_left);

// H(A|B) = H(AB) - H(B) on the reduced state over a ∪ b; an empty b is the
// trivial subsystem with H(B) = 0. May be negative.
double conditional_entropy(const DensityOperator& rho, std::span<const std::string> a_labels,
                           std::span<const std::string> b_labels);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// sqrt(1 - F^2) - D; nonnegative up to round-off for all state pairs.
double fuchs_van_de_graaf_gap(const DensityOperator& rho, const DensityOperator& sigma);

// Squashed entanglement evaluated on a pure state, where it coincides with
// the entanglement entropy across the cut. The general mixed-state infimum is
// not computable here; the DensityOperator overload insists on purity
// Tr[rho^2] > 1 - 1e-8 and rejects anything else.
double squashed_entanglement_pure(const PureState& psi, std::span<const std::string> cut_left);
double squashed_entanglement_pure(const DensityOperator& rho,
                                  std::span<const std::string> cut_left);

}  // namespace qcat
