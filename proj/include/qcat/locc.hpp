#pragma once

#include <optional>
#include <span>
#include <string>

#include "qcat/measures.hpp"

namespace qcat {

struct ConvertibilityReport {
  bool direct = false;
  // A spectrum known to enable the conversion; the trivial one-dimensional
  // catalyst when the conversion is already direct.
  std::optional<ProbabilityVector> catalyst_spectrum;
  // 1-based length of the first violated partial sum when direct is false.
  std::optional<std::size_t> violated_index;
};

// Single-copy LOCC convertibility psi -> phi across the cut: holds iff the
// squared Schmidt spectrum of phi majorizes that of psi.
ConvertibilityReport nielsen_convertible(const PureState& psi, const PureState& phi,
                                         std::span<const std::string> cut_left);

// Convertibility of spectrum psi -> phi with the given catalyst attached:
// majorization of the flattened products sorted in decreasing order.
bool check_catalyzed(const ProbabilityVector& psi_spectrum, const ProbabilityVector& phi_spectrum,
                     const ProbabilityVector& catalyst_spectrum);

// Exhaustive simplex-grid search for a catalyst spectrum. Candidates have
// entries i/grid_steps sorted in decreasing order. The degenerate spectrum
// (1, 0, ...) is checked first (it is the no-catalyst case); the remaining
// tuples are scanned in ascending lexicographic order of their grid indices,
// i.e. from the uniform spectrum towards the degenerate one. Returns the
// first success, or nothing when the grid is exhausted.
std::optional<ProbabilityVector> catalyst_search(const ProbabilityVector& psi_spectrum,
                                                 const ProbabilityVector& phi_spectrum,
                                                 std::size_t catalyst_dim,
                                                 std::size_t grid_steps);

}  // namespace qcat
