#include "qcat/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcat {

namespace {

constexpr double kDeadBand = 1e-9;
constexpr double kAssembledTol = 1e-8;  // tolerance for assembled squashed values

void require_pure_parties(const PureState& psi) {
  const auto alice = psi.layout().labels_of(Party::Alice);
  const auto bob = psi.layout().labels_of(Party::Bob);
  if (alice.empty() && bob.empty())
    throw std::invalid_argument("state assigns no subsystem to Alice or Bob");
}

double marginal_entropy(const DensityOperator& rho, std::span<const std::string> keep) {
  if (keep.empty()) return 0.0;
  const auto discard = rho.layout().labels_excluding(keep);
  return von_neumann_entropy(discard.empty() ? rho : partial_trace(rho, discard));
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 1e-15) h -= p * std::log2(p);
  if (1.0 - p > 1e-15) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

const char* ledger_case_name(LedgerCase c) {
  switch (c) {
    case LedgerCase::Zero: return "zero";
    case LedgerCase::PositiveNeedsResource: return "positive_needs_resource";
    case LedgerCase::NegativeYieldsResource: return "negative_yields_resource";
  }
  throw std::logic_error("unknown ledger case");
}

const char* merge_direction_name(MergeDirection d) {
  switch (d) {
    case MergeDirection::CToA: return "merge_C_to_A";
    case MergeDirection::CToB: return "merge_C_to_B";
  }
  throw std::logic_error("unknown merge direction");
}

ResourceLedger merging_ledger(const PureState& psi) {
  require_pure_parties(psi);
  const DensityOperator rho = to_density(psi);
  const auto alice = psi.layout().labels_of(Party::Alice);
  const auto bob = psi.layout().labels_of(Party::Bob);
  const double h = conditional_entropy(rho, alice, bob);

  ResourceLedger ledger;
  ledger.conditional_entropy = h;
  if (std::abs(h) < kDeadBand) {
    ledger.ledger_case = LedgerCase::Zero;
    ledger.resource_entropy = 0.0;
  } else if (h > 0.0) {
    ledger.ledger_case = LedgerCase::PositiveNeedsResource;
    ledger.resource_entropy = h;
  } else {
    ledger.ledger_case = LedgerCase::NegativeYieldsResource;
    ledger.resource_entropy = -h;
  }
  ledger.resource_spectrum = entropy_to_spectrum(ledger.resource_entropy);
  return ledger;
}

ProbabilityVector entropy_to_spectrum(double target_entropy) {
  if (target_entropy < -1e-12)
    throw std::invalid_argument("target entropy must be nonnegative");
  if (target_entropy < 1e-12) return ProbabilityVector({1.0});

  if (target_entropy <= 1.0) {
    // Two entries (p, 1-p) with p >= 1/2 solving h(p) = target.
    double lo = 0.5, hi = 1.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (binary_entropy(mid) > target_entropy)
        lo = mid;
      else
        hi = mid;
    }
    const double p = 0.5 * (lo + hi);
    return ProbabilityVector({p, 1.0 - p});
  }

  // A uniform block of d = ceil(2^target) entries with the leading entry
  // adjusted; the entropy decreases monotonically as the leading entry grows.
  const auto d = static_cast<std::size_t>(std::ceil(std::exp2(target_entropy)));
  auto block_entropy = [d](double p) {
    const double q = (1.0 - p) / static_cast<double>(d - 1);
    double h = 0.0;
    if (p > 1e-15) h -= p * std::log2(p);
    if (q > 1e-15) h -= static_cast<double>(d - 1) * q * std::log2(q);
    return h;
  };
  double lo = 1.0 / static_cast<double>(d), hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (block_entropy(mid) > target_entropy)
      lo = mid;
    else
      hi = mid;
  }
  const double p = 0.5 * (lo + hi);
  std::vector<double> entries(d, (1.0 - p) / static_cast<double>(d - 1));
  entries[0] = p;
  return ProbabilityVector(std::move(entries));
}

namespace {

// psi with Alice's share relabeled into Bob's lab (the merged target state).
PureState merged_state(const PureState& psi) {
  const auto alice = psi.layout().labels_of(Party::Alice);
  std::vector<std::pair<std::string, std::string>> renames;
  SystemLayout layout = psi.layout();
  for (const auto& label : alice) renames.emplace_back(label, unique_label(layout, label + "'"));
  layout = layout.relabeled(renames);
  std::vector<std::string> primed;
  for (const auto& [from, to] : renames) primed.push_back(to);
  layout = layout.with_party(primed, Party::Bob);
  return PureState(std::move(layout), psi.amplitudes());
}

PureState resource_state(const PureState& base_a, const PureState& base_b,
                         const ProbabilityVector& spectrum) {
  auto fresh = [&](std::string label) {
    while (base_a.layout().has_label(label) || base_b.layout().has_label(label)) label += "'";
    return label;
  };
  return pure_from_spectrum(spectrum, fresh("A~"), Party::Alice, fresh("B~"), Party::Bob);
}

double bob_side_squashed(const PureState& state) {
  const auto bob = state.layout().labels_of(Party::Bob);
  if (bob.empty() || bob.size() == state.layout().size()) return 0.0;
  return squashed_entanglement_pure(state, bob);
}

}  // namespace

bool merging_optimality_audit(const PureState& psi, const ResourceLedger& ledger) {
  require_pure_parties(psi);
  if (ledger.resource_entropy < -kDeadBand) return false;
  if (std::abs(ledger.resource_spectrum.entropy_bits() - ledger.resource_entropy) > kDeadBand)
    return false;

  const DensityOperator rho = to_density(psi);
  const auto alice = psi.layout().labels_of(Party::Alice);
  const auto bob = psi.layout().labels_of(Party::Bob);
  std::vector<std::string> ab = alice;
  ab.insert(ab.end(), bob.begin(), bob.end());
  const double h_ab = marginal_entropy(rho, ab);
  const double h_b = marginal_entropy(rho, bob);

  const PureState merged = merged_state(psi);
  const PureState resource = resource_state(psi, merged, ledger.resource_spectrum);

  switch (ledger.ledger_case) {
    case LedgerCase::PositiveNeedsResource: {
      if (h_b + ledger.resource_entropy < h_ab - kDeadBand) return false;
      // E_sq between Bob's side and the rest: initial psi ⊗ phi_1, final merged.
      const double initial = bob_side_squashed(tensor(psi, resource));
      const double final_value = bob_side_squashed(merged);
      return std::abs(initial - (h_b + ledger.resource_entropy)) <= kAssembledTol &&
             std::abs(final_value - h_ab) <= kAssembledTol;
    }
    case LedgerCase::NegativeYieldsResource:
    case LedgerCase::Zero: {
      if (ledger.ledger_case == LedgerCase::Zero &&
          (std::abs(h_ab - h_b) > kDeadBand || ledger.resource_entropy > kDeadBand))
        return false;
      if (h_ab + ledger.resource_entropy > h_b + kDeadBand) return false;
      // Initial psi, final merged ⊗ phi_2.
      const double initial = bob_side_squashed(psi);
      const double final_value = bob_side_squashed(tensor(merged, resource));
      return std::abs(initial - h_b) <= kAssembledTol &&
             std::abs(final_value - (h_ab + ledger.resource_entropy)) <= kAssembledTol;
    }
  }
  throw std::logic_error("unknown ledger case");
}

ResourceLedger distillation_ledger(const PureState& psi) {
  const auto alice = psi.layout().labels_of(Party::Alice);
  const auto bob = psi.layout().labels_of(Party::Bob);
  if (alice.empty() || bob.empty())
    throw std::invalid_argument("distillation needs subsystems for both Alice and Bob");

  const DensityOperator rho = to_density(psi);
  const double h_a = marginal_entropy(rho, alice);
  const double h_b = marginal_entropy(rho, bob);
  const double yield = std::min(h_a, h_b);

  ResourceLedger ledger;
  // Signed balance of the task: the distilled pair is a gained resource.
  ledger.conditional_entropy = -yield;
  ledger.resource_entropy = yield;
  ledger.ledger_case = yield < kDeadBand ? LedgerCase::Zero : LedgerCase::NegativeYieldsResource;
  ledger.resource_spectrum = entropy_to_spectrum(yield);
  ledger.direction =
      (h_b < h_a - kDeadBand) ? MergeDirection::CToA : MergeDirection::CToB;
  return ledger;
}

bool distillation_converse_audit(const PureState& psi, double claimed_entropy) {
  const auto alice = psi.layout().labels_of(Party::Alice);
  const auto bob = psi.layout().labels_of(Party::Bob);
  if (alice.empty() || bob.empty())
    throw std::invalid_argument("distillation needs subsystems for both Alice and Bob");
  const DensityOperator rho = to_density(psi);
  const double bound = std::min(marginal_entropy(rho, alice), marginal_entropy(rho, bob));
  return claimed_entropy <= bound + kDeadBand;
}

}  // namespace qcat
