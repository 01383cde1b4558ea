#include "qcat/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcat {

namespace {

constexpr double kCptpTol = 1e-8;
constexpr double kUnitaryTol = 1e-8;

std::string describe(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void check_targets(const SystemLayout& layout, std::span<const std::string> targets,
                   std::size_t op_dim) {
  std::size_t dim = 1;
  for (const auto& label : targets) dim *= layout.dim_of(label);
  if (dim != op_dim)
    throw std::invalid_argument("operator dimension " + std::to_string(op_dim) +
                                " does not match target dimension " + std::to_string(dim));
}

// Conjugates rho by op acting on the leading `targets` after reordering;
// restores the original subsystem order afterwards.
Eigen::MatrixXcd conjugate_on_targets(const DensityOperator& rho,
                                      std::span<const std::string> targets,
                                      const Eigen::MatrixXcd& op) {
  const auto [front_layout, order] = detail::front_order(rho.layout(), targets);
  Eigen::MatrixXcd m = detail::reorder_matrix(rho.layout(), rho.matrix(), order);

  const std::size_t rest_dim = rho.layout().total_dimension() / op.rows();
  Eigen::MatrixXcd embedded =
      Eigen::kroneckerProduct(op, Eigen::MatrixXcd::Identity(rest_dim, rest_dim));
  m = embedded * m * embedded.adjoint();

  std::vector<std::size_t> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = i;
  return detail::reorder_matrix(front_layout, m, inverse);
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<Eigen::MatrixXcd> kraus_ops,
                               std::vector<std::string> input_labels,
                               std::vector<std::string> output_labels)
    : kraus_(std::move(kraus_ops)),
      input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  const Eigen::Index dim = kraus_.front().rows();
  for (const auto& k : kraus_) {
    if (k.rows() != dim || k.cols() != dim)
      throw std::invalid_argument("Kraus operators must be square and equally sized");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  const double dev = (sum - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > kCptpTol)
    throw std::invalid_argument("channel is not trace preserving: |sum K'K - I| = " +
                                describe(dev));
  if (output_labels_.size() != input_labels_.size())
    throw std::invalid_argument("channel input/output label counts differ");
}

QuantumChannel QuantumChannel::identity(std::size_t dim, std::vector<std::string> labels) {
  std::vector<Eigen::MatrixXcd> kraus{Eigen::MatrixXcd::Identity(dim, dim)};
  auto outputs = labels;
  return QuantumChannel(std::move(kraus), std::move(labels), std::move(outputs));
}

QuantumChannel QuantumChannel::from_unitary(const Eigen::MatrixXcd& u,
                                            std::vector<std::string> labels) {
  std::vector<Eigen::MatrixXcd> kraus{u};
  auto outputs = labels;
  return QuantumChannel(std::move(kraus), std::move(labels), std::move(outputs));
}

QuantumChannel QuantumChannel::depolarizing(std::size_t dim, std::vector<std::string> labels) {
  // Kraus set {|i><j| / sqrt(dim)} sends every state to I/dim.
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(dim * dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
      k(i, j) = scale;
      kraus.push_back(std::move(k));
    }
  }
  auto outputs = labels;
  return QuantumChannel(std::move(kraus), std::move(labels), std::move(outputs));
}

QuantumChannel QuantumChannel::replace_with(const DensityOperator& gamma) {
  const std::size_t dim = gamma.dimension();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gamma.matrix());
  std::vector<Eigen::MatrixXcd> kraus;
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    const double q = solver.eigenvalues()(j);
    if (q <= 1e-14) continue;
    const Eigen::VectorXcd target = std::sqrt(q) * solver.eigenvectors().col(j);
    for (std::size_t i = 0; i < dim; ++i) {
      Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
      k.col(i) = target;
      kraus.push_back(std::move(k));
    }
  }
  auto labels = gamma.layout().labels();
  auto outputs = labels;
  return QuantumChannel(std::move(kraus), std::move(labels), std::move(outputs));
}

DensityOperator apply_channel(const DensityOperator& rho, const QuantumChannel& channel,
                              std::span<const std::string> targets) {
  if (targets.size() != channel.input_labels().size())
    throw std::invalid_argument("target count does not match channel input labels");
  check_targets(rho.layout(), targets, channel.dimension());

  const auto [front_layout, order] = detail::front_order(rho.layout(), targets);
  const Eigen::MatrixXcd m = detail::reorder_matrix(rho.layout(), rho.matrix(), order);
  const std::size_t rest_dim = rho.layout().total_dimension() / channel.dimension();

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
  if (rest_dim == 1) {
    for (const auto& k : channel.kraus_ops()) acc += k * m * k.adjoint();
  } else {
    const Eigen::MatrixXcd rest_id = Eigen::MatrixXcd::Identity(rest_dim, rest_dim);
    for (const auto& k : channel.kraus_ops()) {
      const Eigen::MatrixXcd embedded = Eigen::kroneckerProduct(k, rest_id);
      acc += embedded * m * embedded.adjoint();
    }
  }

  std::vector<std::size_t> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = i;
  Eigen::MatrixXcd restored = detail::reorder_matrix(front_layout, acc, inverse);
  return DensityOperator(rho.layout(), std::move(restored));
}

namespace {

void check_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
  const double dev =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol)
    throw std::invalid_argument("matrix is not unitary: |U'U - I| = " + describe(dev));
}

}  // namespace

PureState apply_local_unitary(const PureState& psi, const Eigen::MatrixXcd& u,
                              std::span<const std::string> targets) {
  check_unitary(u);
  check_targets(psi.layout(), targets, static_cast<std::size_t>(u.rows()));

  const auto [front_layout, order] = detail::front_order(psi.layout(), targets);
  Eigen::VectorXcd v = detail::reorder_vector(psi.layout(), psi.amplitudes(), order);

  // With the targets leading, the vector reshapes to (target_dim x rest_dim).
  const std::size_t t = static_cast<std::size_t>(u.rows());
  const std::size_t r = psi.layout().total_dimension() / t;
  Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      block(v.data(), t, r);
  block = (u * block).eval();

  std::vector<std::size_t> inverse(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inverse[order[i]] = i;
  Eigen::VectorXcd restored = detail::reorder_vector(front_layout, v, inverse);
  return PureState(psi.layout(), std::move(restored));
}

DensityOperator apply_local_unitary(const DensityOperator& rho, const Eigen::MatrixXcd& u,
                                    std::span<const std::string> targets) {
  check_unitary(u);
  check_targets(rho.layout(), targets, static_cast<std::size_t>(u.rows()));
  return DensityOperator(rho.layout(), conjugate_on_targets(rho, targets, u));
}

std::vector<MeasurementOutcome> projective_measure(const DensityOperator& rho,
                                                   std::span<const Eigen::VectorXcd> basis,
                                                   const std::string& target) {
  const std::size_t dim = rho.layout().dim_of(target);
  if (basis.size() != dim)
    throw std::invalid_argument("measurement basis must span the target subsystem (expected " +
                                std::to_string(dim) + " vectors, got " +
                                std::to_string(basis.size()) + ")");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (static_cast<std::size_t>(basis[i].size()) != dim)
      throw std::invalid_argument("basis vector length does not match target dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      const std::complex<double> overlap = basis[j].dot(basis[i]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-8)
        throw std::invalid_argument("measurement basis is not orthonormal");
    }
  }

  const std::vector<std::string> targets{target};
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(dim);
  double total = 0.0;
  for (const auto& b : basis) {
    const Eigen::MatrixXcd projector = b * b.adjoint();
    Eigen::MatrixXcd projected = conjugate_on_targets(rho, targets, projector);
    const double p = projected.trace().real();
    MeasurementOutcome outcome;
    outcome.probability = std::max(p, 0.0);
    if (p > 1e-12) {
      outcome.post_state = DensityOperator(rho.layout(), projected / p);
    }
    total += outcome.probability;
    outcomes.push_back(std::move(outcome));
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("measurement probabilities sum to " + describe(total));
  return outcomes;
}

Eigen::MatrixXcd cyclic_shift_matrix(std::size_t n) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) u((j + 1) % n, j) = 1.0;
  return u;
}

}  // namespace qcat
