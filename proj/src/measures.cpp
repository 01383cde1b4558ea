#include "qcat/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcat/decompositions.hpp"

namespace qcat {

namespace {

constexpr double kMajorizationTol = 1e-10;

double clamp_probability(double x) {
  if (x < -1e-8)
    throw std::invalid_argument("probability-like value is negative: " + std::to_string(x));
  return std::max(x, 0.0);
}

double shannon_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("probability vector must be nonempty");
  double sum = 0.0;
  for (double& e : entries_) {
    e = clamp_probability(e);
    sum += e;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("probability vector sums to " + std::to_string(sum));
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("probability vector must be nonempty");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<double> ProbabilityVector::sorted_descending() const {
  std::vector<double> out = entries_;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double ProbabilityVector::entropy_bits() const { return shannon_bits(entries_); }

ProbabilityVector outer(const ProbabilityVector& a, const ProbabilityVector& b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a.entries())
    for (double y : b.entries()) out.push_back(x * y);
  return ProbabilityVector(std::move(out));
}

std::size_t first_majorization_violation(const ProbabilityVector& p, const ProbabilityVector& q) {
  std::vector<double> ps = p.sorted_descending();
  std::vector<double> qs = q.sorted_descending();
  const std::size_t n = std::max(ps.size(), qs.size());
  ps.resize(n, 0.0);
  qs.resize(n, 0.0);
  double sp = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sp += ps[k];
    sq += qs[k];
    if (sp > sq + kMajorizationTol) return k + 1;
  }
  return 0;
}

bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q) {
  return first_majorization_violation(p, q) == 0;
}

Eigen::VectorXd eigenvalues_descending(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd out(solver.eigenvalues().size());
  const Eigen::Index n = out.size();
  for (Eigen::Index i = 0; i < n; ++i) out(i) = clamp_probability(solver.eigenvalues()(n - 1 - i));
  return out;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const Eigen::VectorXd eigs = eigenvalues_descending(rho);
  return shannon_bits(std::span<const double>(eigs.data(), eigs.size()));
}

ProbabilityVector schmidt_spectrum(const PureState& psi, std::span<const std::string> cut_left) {
  const SchmidtDecomposition sd = schmidt(psi, cut_left);
  std::vector<double> probs(sd.coefficients.size());
  for (Eigen::Index i = 0; i < sd.coefficients.size(); ++i)
    probs[i] = sd.coefficients(i) * sd.coefficients(i);
  return ProbabilityVector(std::move(probs));
}

PureState pure_from_spectrum(const ProbabilityVector& spectrum, const std::string& label_a,
                             Party party_a, const std::string& label_b, Party party_b) {
  const std::size_t d = spectrum.size();
  SystemLayout layout({Subsystem{label_a, d, party_a}, Subsystem{label_b, d, party_b}});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d * d);
  for (std::size_t i = 0; i < d; ++i) amps(i * d + i) = std::sqrt(spectrum[i]);
  amps /= amps.norm();
  return PureState(std::move(layout), std::move(amps));
}

double entanglement_entropy(const PureState& psi, std::span<const std::string> cut_left) {
  return schmidt_spectrum(psi, cut_left).entropy_bits();
}

double conditional_entropy(const DensityOperator& rho, std::span<const std::string> a_labels,
                           std::span<const std::string> b_labels) {
  for (const auto& a : a_labels) {
    rho.layout().position_of(a);
    if (std::find(b_labels.begin(), b_labels.end(), a) != b_labels.end())
      throw std::invalid_argument("label '" + a + "' appears on both sides of H(A|B)");
  }
  for (const auto& b : b_labels) rho.layout().position_of(b);
  if (a_labels.empty() && b_labels.empty())
    throw std::invalid_argument("H(A|B) needs at least one nonempty label set");

  std::vector<std::string> ab(a_labels.begin(), a_labels.end());
  ab.insert(ab.end(), b_labels.begin(), b_labels.end());

  const auto discard_ab = rho.layout().labels_excluding(ab);
  const double h_ab =
      von_neumann_entropy(discard_ab.empty() ? rho : partial_trace(rho, discard_ab));

  double h_b = 0.0;
  if (!b_labels.empty()) {
    const auto discard_b = rho.layout().labels_excluding(b_labels);
    h_b = von_neumann_entropy(discard_b.empty() ? rho : partial_trace(rho, discard_b));
  }
  return h_ab - h_b;
}

namespace {

void require_same_layout(const DensityOperator& rho, const DensityOperator& sigma) {
  if (!(rho.layout() == sigma.layout()))
    throw std::invalid_argument("states live on different layouts");
}

}  // namespace

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_layout(rho, sigma);
  Eigen::MatrixXcd diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

namespace {

// F against a (numerically) pure second argument: sqrt(<phi|rho|phi>).
// Avoids the square-root amplification of eigenvalue round-off at zero that
// the general spectral route suffers from on rank-deficient inputs.
double fidelity_with_pure(const DensityOperator& rho, const DensityOperator& pure) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pure.matrix());
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  Eigen::VectorXcd phi = solver.eigenvectors().col(top);
  phi /= phi.norm();
  const double weight = std::max(solver.eigenvalues()(top), 0.0);
  const double overlap = std::max(std::real(phi.dot(rho.matrix() * phi)), 0.0);
  return std::min(std::sqrt(weight * overlap), 1.0);
}

}  // namespace

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_layout(rho, sigma);
  if (sigma.purity() > 1.0 - 1e-12) return fidelity_with_pure(rho, sigma);
  if (rho.purity() > 1.0 - 1e-12) return fidelity_with_pure(sigma, rho);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rho_solver(rho.matrix());
  Eigen::VectorXd roots = rho_solver.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots(i) = std::sqrt(clamp_probability(roots(i)));
  const Eigen::MatrixXcd sqrt_rho = rho_solver.eigenvectors() * roots.asDiagonal() *
                                    rho_solver.eigenvectors().adjoint();

  Eigen::MatrixXcd inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_solver(inner, Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < inner_solver.eigenvalues().size(); ++i)
    f += std::sqrt(std::max(inner_solver.eigenvalues()(i), 0.0));
  return std::min(f, 1.0);
}

double fuchs_van_de_graaf_gap(const DensityOperator& rho, const DensityOperator& sigma) {
  const double f = fidelity(rho, sigma);
  const double d = trace_distance(rho, sigma);
  return std::sqrt(std::max(1.0 - f * f, 0.0)) - d;
}

double squashed_entanglement_pure(const PureState& psi, std::span<const std::string> cut_left) {
  return entanglement_entropy(psi, cut_left);
}

double squashed_entanglement_pure(const DensityOperator& rho,
                                  std::span<const std::string> cut_left) {
  const double purity = rho.purity();
  if (purity <= 1.0 - 1e-8)
    throw std::invalid_argument(
        "squashed entanglement is only evaluated on pure states here; Tr[rho^2] = " +
        std::to_string(purity));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
  Eigen::VectorXcd dominant = solver.eigenvectors().col(solver.eigenvectors().cols() - 1);
  dominant /= dominant.norm();
  return entanglement_entropy(PureState(rho.layout(), std::move(dominant)), cut_left);
}

}  // namespace qcat
