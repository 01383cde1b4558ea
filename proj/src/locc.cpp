#include "qcat/locc.hpp"

#include <stdexcept>

#include "qcat/decompositions.hpp"

namespace qcat {

ConvertibilityReport nielsen_convertible(const PureState& psi, const PureState& phi,
                                         std::span<const std::string> cut_left) {
  const ProbabilityVector p = schmidt_spectrum(psi, cut_left);
  const ProbabilityVector q = schmidt_spectrum(phi, cut_left);

  ConvertibilityReport report;
  const std::size_t violation = first_majorization_violation(p, q);
  report.direct = (violation == 0);
  if (report.direct) {
    report.catalyst_spectrum = ProbabilityVector({1.0});
  } else {
    report.violated_index = violation;
  }
  return report;
}

bool check_catalyzed(const ProbabilityVector& psi_spectrum, const ProbabilityVector& phi_spectrum,
                     const ProbabilityVector& catalyst_spectrum) {
  return majorizes(outer(psi_spectrum, catalyst_spectrum),
                   outer(phi_spectrum, catalyst_spectrum));
}

namespace {

ProbabilityVector grid_point(std::span<const std::size_t> indices, std::size_t grid_steps) {
  std::vector<double> entries(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j)
    entries[j] = static_cast<double>(indices[j]) / static_cast<double>(grid_steps);
  return ProbabilityVector(std::move(entries));
}

// Visits all tuples i_1 >= i_2 >= ... >= i_d >= 0 with sum grid_steps in
// ascending lexicographic order; stops early when the visitor returns true.
bool scan_simplex(std::vector<std::size_t>& indices, std::size_t slot, std::size_t remaining,
                  std::size_t prev, const auto& visit) {
  const std::size_t slots_left = indices.size() - slot;
  if (slots_left == 1) {
    if (remaining > prev) return false;
    indices[slot] = remaining;
    return visit(indices);
  }
  const std::size_t lower = (remaining + slots_left - 1) / slots_left;  // ceil
  const std::size_t upper = std::min(prev, remaining);
  for (std::size_t v = lower; v <= upper; ++v) {
    indices[slot] = v;
    if (scan_simplex(indices, slot + 1, remaining - v, v, visit)) return true;
  }
  return false;
}

}  // namespace

std::optional<ProbabilityVector> catalyst_search(const ProbabilityVector& psi_spectrum,
                                                 const ProbabilityVector& phi_spectrum,
                                                 std::size_t catalyst_dim,
                                                 std::size_t grid_steps) {
  if (catalyst_dim < 2) throw std::invalid_argument("catalyst dimension must be at least 2");
  if (grid_steps < 2) throw std::invalid_argument("grid resolution must be at least 2");

  std::vector<std::size_t> degenerate(catalyst_dim, 0);
  degenerate[0] = grid_steps;
  const ProbabilityVector trivial = grid_point(degenerate, grid_steps);
  if (check_catalyzed(psi_spectrum, phi_spectrum, trivial)) return trivial;

  std::optional<ProbabilityVector> found;
  std::vector<std::size_t> indices(catalyst_dim, 0);
  scan_simplex(indices, 0, grid_steps, grid_steps, [&](const std::vector<std::size_t>& idx) {
    if (idx == degenerate) return false;  // already checked
    ProbabilityVector candidate = grid_point(idx, grid_steps);
    if (check_catalyzed(psi_spectrum, phi_spectrum, candidate)) {
      found = std::move(candidate);
      return true;
    }
    return false;
  });
  return found;
}

}  // namespace qcat
