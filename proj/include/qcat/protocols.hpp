#pragma once

#include <optional>

#include "qcat/measures.hpp"

namespace qcat {

enum class LedgerCase { Zero, PositiveNeedsResource, NegativeYieldsResource };
enum class MergeDirection { CToA, CToB };

const char* ledger_case_name(LedgerCase c);
const char* merge_direction_name(MergeDirection d);

// Signed entanglement-entropy accounting for a catalytic protocol run:
// conditional_entropy is the ebit balance (positive: the protocol consumes a
// resource state of that entanglement entropy, negative: it yields one), and
// resource_spectrum is a concrete Schmidt spectrum realizing |balance|.
struct ResourceLedger {
  double conditional_entropy = 0.0;
  LedgerCase ledger_case = LedgerCase::Zero;
  ProbabilityVector resource_spectrum{std::vector<double>{1.0}};
  double resource_entropy = 0.0;
  std::optional<MergeDirection> direction;  // distillation only
};

// State merging of Alice's share into Bob's lab for a pure state shared by
// Alice, Bob, and a referee (parties taken from the layout). Classified by
// the sign of H(A|B) with a 1e-9 dead band around zero.
ResourceLedger merging_ledger(const PureState& psi);

// Minimal-length spectrum whose Shannon entropy equals the target: two
// entries solving the binary entropy for targets up to one bit, otherwise
// ceil(2^target) entries with a uniform block and one adjusted entry, both
// found by bisection.
ProbabilityVector entropy_to_spectrum(double target_entropy);

// Verifies the ledger's entropy bookkeeping against the monotonicity of
// squashed entanglement: assembles the initial and final product states,
// evaluates the squashed entanglement between Bob's side and the rest on
// both, checks the closed-form values, and confirms the claimed resource does
// not beat the H(A|B) balance.
bool merging_optimality_audit(const PureState& psi, const ResourceLedger& ledger);

// Entanglement a helper party can steer to the Alice-Bob pair out of a pure
// tripartite state: min{H(psi^A), H(psi^B)}, achieved by merging the helper
// into the lab holding the larger marginal entropy (ties go to Bob).
ResourceLedger distillation_ledger(const PureState& psi);

// True iff the claimed distilled entropy does not exceed
// min{H(psi^A), H(psi^B)} within 1e-9.
bool distillation_converse_audit(const PureState& psi, double claimed_entropy);

}  // namespace qcat
