#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcat/channel.hpp"
#include "qcat/state.hpp"

namespace qcat {

// Label of base subsystem `base` in the k-th system copy (1-based).
std::string copy_label(const std::string& base, int copy_index);
std::vector<std::string> copy_labels(const SystemLayout& base, int copy_index);
// Layout of copies from_copy..to_copy of the base system, in copy order.
SystemLayout copies_layout(const SystemLayout& base, int from_copy, int to_copy);

// The explicit catalyst construction: a block of n-1 system copies plus an
// n-dimensional register K held by Alice, loaded with the mixture
//   tau = (1/n) sum_k rho^(k-1) ⊗ Gamma_(n-k) ⊗ |k><k|,
// where Gamma_i is the reduced state of gamma on the first i copies and
// Gamma_0 is the trivial factor.
struct CatalystConstruction {
  int n = 1;
  DensityOperator rho;    // input state on the base system
  PureState target;       // the pure state the protocol should emit
  DensityOperator gamma;  // n-copy state with trace_distance(gamma, target^n) <= epsilon
  double epsilon = 0.0;   // certified accuracy of gamma
  DensityOperator tau;    // catalyst state on copies 2..n ⊗ K
  std::string register_label;
};

CatalystConstruction build_catalyst(const DensityOperator& rho, const DensityOperator& gamma,
                                    int n, const PureState& target, double epsilon);

// Convex perturbation gamma = (1-delta) target^n + delta * noise with delta
// solved so that trace_distance(gamma, target^n) equals epsilon exactly.
// The two-argument form mixes with the maximally mixed state; the overload
// taking noise_state mixes with noise_state^n.
DensityOperator make_synthetic_gamma(const PureState& target, int n, double epsilon);
DensityOperator make_synthetic_gamma(const PureState& target, int n, double epsilon,
                                     const DensityOperator& noise_state);

struct ProtocolRunReport {
  DensityOperator final_joint;  // on copies 1..n ⊗ K
  DensityOperator tau;          // reference catalyst state
  PureState target;             // target relabeled onto copy 1
  std::vector<std::string> system_labels;  // the copy-1 labels (system|catalyst cut)
  double catalyst_deviation = 0.0;  // D(Tr_S[mu], tau)
  double output_error = 0.0;        // D(Tr_C[mu], |phi><phi|)
  double decoupling_error = 0.0;    // D(mu, Tr_C[mu] ⊗ tau)
  double epsilon_bound = 0.0;
  double decoupling_bound = 0.0;    // epsilon + 3 sqrt(epsilon)
};

struct ProtocolIntermediates {
  std::optional<DensityOperator> after_measurement;     // state after step (i)
  std::optional<DensityOperator> after_register_shift;  // state after step (ii)
};

// Runs the three-step protocol: (i) measure K and apply the channel on
// outcome n, remixing classically; (ii) cyclically shift the register;
// (iii) cyclically permute the system copies. The channel must reproduce
// gamma on rho^n within 1e-8 (checked).
ProtocolRunReport run_protocol(const CatalystConstruction& construction,
                               const QuantumChannel& protocol_channel,
                               ProtocolIntermediates* capture = nullptr);

// Checks the decoupling certificate: the measured decoupling error stays
// below epsilon + 3 sqrt(epsilon), the system marginal has fidelity with the
// target above sqrt(1 - epsilon), and the leading Schmidt coefficient of the
// purified marginal exceeds sqrt(1 - epsilon).
bool certify_decoupling(const ProtocolRunReport& report);

class ResourceLimitError : public std::runtime_error {
public:
  ResourceLimitError(const std::string& what, std::size_t required, std::size_t allowed);
  std::size_t required() const { return required_; }
  std::size_t allowed() const { return allowed_; }

private:
  std::size_t required_;
  std::size_t allowed_;
};

struct ResourceLimits {
  std::size_t dim_cap = 4096;                            // joint dimension d^n * n
  std::size_t kraus_bytes_cap = 1ull << 30;              // backing storage for the channel
};

struct SweepPoint {
  int n = 1;
  double epsilon = 0.0;
};

struct SweepRow {
  SweepPoint point;
  ProtocolRunReport report;
  bool pass = false;
};

// Builds the synthetic gamma (maximally mixed noise), the matching
// measure-and-reprepare channel, and the catalyst for one parameter point,
// enforcing the resource limits.
struct SyntheticRunSetup {
  CatalystConstruction construction;
  QuantumChannel channel;
};
SyntheticRunSetup prepare_synthetic_run(const DensityOperator& rho, const PureState& target,
                                        int n, double epsilon, const ResourceLimits& limits = {});

// One protocol run per parameter point, reported in input order.
std::vector<SweepRow> sweep(const DensityOperator& rho, const PureState& target,
                            std::span<const SweepPoint> points,
                            const ResourceLimits& limits = {});

// Delimiter-separated table:
// n, epsilon, output_error, catalyst_deviation, decoupling_error, decoupling_bound, pass
void write_sweep_table(std::ostream& os, std::span<const SweepRow> rows);

}  // namespace qcat
