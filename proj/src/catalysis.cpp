#include "qcat/catalysis.hpp"

#include <cmath>
#include <utility>

#include "qcat/decompositions.hpp"
#include "qcat/format.hpp"
#include "qcat/measures.hpp"

namespace qcat {

std::string copy_label(const std::string& base, int copy_index) {
  return base + "_" + std::to_string(copy_index);
}

std::vector<std::string> copy_labels(const SystemLayout& base, int copy_index) {
  std::vector<std::string> out;
  out.reserve(base.size());
  for (const auto& s : base.subsystems()) out.push_back(copy_label(s.label, copy_index));
  return out;
}

SystemLayout copies_layout(const SystemLayout& base, int from_copy, int to_copy) {
  std::vector<Subsystem> subs;
  for (int k = from_copy; k <= to_copy; ++k) {
    for (const auto& s : base.subsystems())
      subs.push_back(Subsystem{copy_label(s.label, k), s.dim, s.party});
  }
  return SystemLayout(std::move(subs));
}

namespace {

DensityOperator on_copy(const DensityOperator& rho, int copy_index) {
  std::vector<std::pair<std::string, std::string>> renames;
  for (const auto& s : rho.layout().subsystems())
    renames.emplace_back(s.label, copy_label(s.label, copy_index));
  return relabel(rho, renames);
}

PureState on_copy(const PureState& psi, int copy_index) {
  std::vector<std::pair<std::string, std::string>> renames;
  for (const auto& s : psi.layout().subsystems())
    renames.emplace_back(s.label, copy_label(s.label, copy_index));
  return relabel(psi, renames);
}

DensityOperator ketbra_on_register(const std::string& label, std::size_t dim, std::size_t k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityOperator(SystemLayout({Subsystem{label, dim, Party::Alice}}), std::move(m));
}

PureState n_copy_target(const PureState& target, int n) {
  PureState out = on_copy(target, 1);
  for (int k = 2; k <= n; ++k) out = tensor(out, on_copy(target, k));
  return out;
}

DensityOperator n_copy_state(const DensityOperator& rho, int n) {
  DensityOperator out = on_copy(rho, 1);
  for (int k = 2; k <= n; ++k) out = tensor(out, on_copy(rho, k));
  return out;
}

// For convex mixtures the distance to the ideal scales linearly with the
// mixing weight, so the weight solving D(gamma, ideal) = epsilon is
// epsilon / D(noise, ideal).
DensityOperator mix_to_distance(const DensityOperator& ideal, const DensityOperator& noise,
                                double epsilon) {
  const double full_distance = trace_distance(noise, ideal);
  if (full_distance < 1e-12)
    throw std::invalid_argument("noise state coincides with the target; epsilon is unreachable");
  const double delta = epsilon / full_distance;
  if (delta > 1.0)
    throw std::invalid_argument("epsilon " + format_real(epsilon) +
                                " is unreachable with this noise (max " +
                                format_real(full_distance) + ")");
  return mix(std::vector<std::pair<double, DensityOperator>>{{1.0 - delta, ideal},
                                                             {delta, noise}});
}

}  // namespace

CatalystConstruction build_catalyst(const DensityOperator& rho, const DensityOperator& gamma,
                                    int n, const PureState& target, double epsilon) {
  if (n < 1) throw std::invalid_argument("number of copies must be at least 1");
  if (rho.layout().size() == 0)
    throw std::invalid_argument("the base system needs at least one subsystem");
  if (!(target.layout() == rho.layout()))
    throw std::invalid_argument("target state must live on the same layout as rho");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");

  const SystemLayout gamma_layout = copies_layout(rho.layout(), 1, n);
  if (gamma.dimension() != gamma_layout.total_dimension())
    throw std::invalid_argument("gamma dimension does not match " + std::to_string(n) +
                                " copies of rho's layout");
  for (std::size_t i = 0; i < gamma_layout.size(); ++i) {
    if (gamma.layout().at(i).dim != gamma_layout.at(i).dim)
      throw std::invalid_argument("gamma subsystem dimensions do not match rho's copies");
  }
  DensityOperator canonical_gamma(gamma_layout, gamma.matrix());

  const double gamma_accuracy =
      trace_distance(canonical_gamma, to_density(n_copy_target(target, n)));
  if (gamma_accuracy > epsilon + 1e-9)
    throw std::invalid_argument("gamma is " + format_real(gamma_accuracy) +
                                " from target^n, above the certified epsilon " +
                                format_real(epsilon));

  const std::string register_label = unique_label(gamma_layout, "K");
  const auto register_dim = static_cast<std::size_t>(n);

  // tau = (1/n) sum_k rho^(k-1) on copies 2..k ⊗ Gamma_(n-k) on copies k+1..n ⊗ |k><k|.
  std::vector<std::pair<double, DensityOperator>> terms;
  const double weight = 1.0 / static_cast<double>(n);
  for (int k = 1; k <= n; ++k) {
    DensityOperator block = scalar_state();
    for (int j = 2; j <= k; ++j) block = tensor(block, on_copy(rho, j));
    const int gamma_copies = n - k;
    if (gamma_copies > 0) {
      std::vector<std::string> discard;
      for (int j = gamma_copies + 1; j <= n; ++j)
        for (const auto& label : copy_labels(rho.layout(), j)) discard.push_back(label);
      DensityOperator reduced = partial_trace(canonical_gamma, discard);
      std::vector<std::pair<std::string, std::string>> shift;
      for (int j = 1; j <= gamma_copies; ++j)
        for (const auto& s : rho.layout().subsystems())
          shift.emplace_back(copy_label(s.label, j), copy_label(s.label, j + k));
      block = tensor(block, relabel(reduced, shift));
    }
    terms.emplace_back(weight,
                       tensor(block, ketbra_on_register(register_label, register_dim,
                                                        static_cast<std::size_t>(k - 1))));
  }

  CatalystConstruction construction{
      n, rho, target, std::move(canonical_gamma), epsilon, mix(terms), register_label};
  return construction;
}

DensityOperator make_synthetic_gamma(const PureState& target, int n, double epsilon) {
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  DensityOperator ideal = to_density(n_copy_target(target, n));
  if (epsilon == 0.0) return ideal;

  const std::size_t dim = ideal.dimension();
  DensityOperator noise(ideal.layout(),
                        Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
  return mix_to_distance(ideal, noise, epsilon);
}

DensityOperator make_synthetic_gamma(const PureState& target, int n, double epsilon,
                                     const DensityOperator& noise_state) {
  if (!(noise_state.layout() == target.layout()))
    throw std::invalid_argument("noise state must live on the target's layout");
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  DensityOperator ideal = to_density(n_copy_target(target, n));
  if (epsilon == 0.0) return ideal;
  return mix_to_distance(ideal, n_copy_state(noise_state, n), epsilon);
}

ProtocolRunReport run_protocol(const CatalystConstruction& construction,
                               const QuantumChannel& protocol_channel,
                               ProtocolIntermediates* capture) {
  const int n = construction.n;
  const SystemLayout& base = construction.rho.layout();
  std::vector<std::string> all_copy_labels;
  for (int k = 1; k <= n; ++k)
    for (const auto& label : copy_labels(base, k)) all_copy_labels.push_back(label);

  // The channel has to realize gamma on rho^n before it is trusted.
  const DensityOperator reproduced =
      apply_channel(n_copy_state(construction.rho, n), protocol_channel, all_copy_labels);
  const double channel_deviation = trace_distance(reproduced, construction.gamma);
  if (channel_deviation > 1e-8)
    throw std::invalid_argument("channel does not reproduce gamma on rho^n (trace distance " +
                                format_real(channel_deviation) + ")");

  const DensityOperator initial = tensor(on_copy(construction.rho, 1), construction.tau);
  const std::string& reg = construction.register_label;
  const auto reg_dim = static_cast<std::size_t>(n);

  // Step (i): measure the register, run the channel on outcome n, remix.
  std::vector<Eigen::VectorXcd> basis(reg_dim);
  for (std::size_t k = 0; k < reg_dim; ++k) {
    basis[k] = Eigen::VectorXcd::Zero(reg_dim);
    basis[k](k) = 1.0;
  }
  const auto outcomes = projective_measure(initial, basis, reg);
  std::vector<std::pair<double, DensityOperator>> branches;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k].post_state) continue;
    if (k + 1 == reg_dim) {
      // The register factor is pure after the collapse, so the channel can
      // act on the system block alone.
      DensityOperator block = partial_trace(*outcomes[k].post_state, std::vector<std::string>{reg});
      block = apply_channel(block, protocol_channel, all_copy_labels);
      branches.emplace_back(outcomes[k].probability,
                            tensor(block, ketbra_on_register(reg, reg_dim, k)));
    } else {
      branches.emplace_back(outcomes[k].probability, *outcomes[k].post_state);
    }
  }
  DensityOperator state = mix(branches);
  if (capture) capture->after_measurement = state;

  // Step (ii): cyclic shift |k> -> |k+1>, |n> -> |1> on the register.
  state = apply_local_unitary(state, cyclic_shift_matrix(reg_dim), std::vector<std::string>{reg});
  if (capture) capture->after_register_shift = state;

  // Step (iii): every party shifts its copy content S_i -> S_{i+1}, S_n -> S_1.
  std::vector<std::pair<std::string, std::string>> moves;
  for (int k = 1; k <= n; ++k) {
    const int next = (k % n) + 1;
    for (const auto& s : base.subsystems())
      moves.emplace_back(copy_label(s.label, k), copy_label(s.label, next));
  }
  state = permute_subsystems(state, moves);

  const std::vector<std::string> system_labels = copy_labels(base, 1);
  const DensityOperator catalyst_marginal = partial_trace(state, system_labels);
  const DensityOperator system_marginal =
      partial_trace(state, state.layout().labels_excluding(system_labels));
  const PureState target_copy1 = on_copy(construction.target, 1);

  ProtocolRunReport report{state,
                           construction.tau,
                           target_copy1,
                           system_labels,
                           trace_distance(catalyst_marginal, construction.tau),
                           trace_distance(system_marginal, to_density(target_copy1)),
                           trace_distance(state, tensor(system_marginal, construction.tau)),
                           construction.epsilon,
                           construction.epsilon + 3.0 * std::sqrt(construction.epsilon)};
  return report;
}

bool certify_decoupling(const ProtocolRunReport& report) {
  constexpr double tol = 1e-9;
  if (report.decoupling_error >= report.decoupling_bound + tol) return false;

  const double threshold = std::sqrt(std::max(1.0 - report.epsilon_bound, 0.0)) - tol;
  const DensityOperator system_marginal = partial_trace(
      report.final_joint, report.final_joint.layout().labels_excluding(report.system_labels));
  if (fidelity(system_marginal, to_density(report.target)) < threshold) return false;

  const PureState purified = purify(system_marginal);
  const SchmidtDecomposition sd = schmidt(purified, report.system_labels);
  return sd.coefficients(0) >= threshold;
}

ResourceLimitError::ResourceLimitError(const std::string& what, std::size_t required,
                                       std::size_t allowed)
    : std::runtime_error(what + ": requires " + std::to_string(required) + ", allowed " +
                         std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

SyntheticRunSetup prepare_synthetic_run(const DensityOperator& rho, const PureState& target,
                                        int n, double epsilon, const ResourceLimits& limits) {
  if (n < 1) throw std::invalid_argument("number of copies must be at least 1");
  const std::size_t base_dim = rho.layout().total_dimension();
  std::size_t block_dim = 1;
  for (int k = 0; k < n; ++k) {
    block_dim *= base_dim;
    if (block_dim > limits.dim_cap)
      throw ResourceLimitError("joint dimension exceeds the cap", block_dim * n, limits.dim_cap);
  }
  const std::size_t joint_dim = block_dim * static_cast<std::size_t>(n);
  if (joint_dim > limits.dim_cap)
    throw ResourceLimitError("joint dimension exceeds the cap", joint_dim, limits.dim_cap);

  DensityOperator gamma = make_synthetic_gamma(target, n, epsilon);

  // The measure-and-reprepare channel needs dim * rank Kraus operators; guard
  // the quadratic storage before allocating it.
  const Eigen::VectorXd spectrum = eigenvalues_descending(gamma);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    if (spectrum(i) > 1e-14) ++rank;
  const std::size_t kraus_bytes = rank * block_dim * block_dim * block_dim * 16;
  if (kraus_bytes > limits.kraus_bytes_cap)
    throw ResourceLimitError("channel storage exceeds the cap", kraus_bytes,
                             limits.kraus_bytes_cap);

  QuantumChannel channel = QuantumChannel::replace_with(gamma);
  CatalystConstruction construction = build_catalyst(rho, gamma, n, target, epsilon);
  return SyntheticRunSetup{std::move(construction), std::move(channel)};
}

std::vector<SweepRow> sweep(const DensityOperator& rho, const PureState& target,
                            std::span<const SweepPoint> points, const ResourceLimits& limits) {
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const SweepPoint& point : points) {
    SyntheticRunSetup setup = prepare_synthetic_run(rho, target, point.n, point.epsilon, limits);
    ProtocolRunReport report = run_protocol(setup.construction, setup.channel);
    const bool pass = certify_decoupling(report);
    rows.push_back(SweepRow{point, std::move(report), pass});
  }
  return rows;
}

void write_sweep_table(std::ostream& os, std::span<const SweepRow> rows) {
  os << "n, epsilon, output_error, catalyst_deviation, decoupling_error, decoupling_bound, pass\n";
  for (const SweepRow& row : rows) {
    os << row.point.n << ", " << format_real(row.point.epsilon) << ", "
       << format_real(row.report.output_error) << ", "
       << format_real(row.report.catalyst_deviation) << ", "
       << format_real(row.report.decoupling_error) << ", "
       << format_real(row.report.decoupling_bound) << ", " << (row.pass ? "PASS" : "FAIL")
       << "\n";
  }
}

}  // namespace qcat
