#include "qcat/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcat {

namespace {

// Rotates the pair so the first nonvanishing left component is real positive;
// the opposite rotation on the right vector keeps the summand invariant.
void fix_phase(Eigen::VectorXcd& left, Eigen::VectorXcd& right) {
  for (Eigen::Index i = 0; i < left.size(); ++i) {
    if (std::abs(left(i)) > 1e-12) {
      const std::complex<double> phase = left(i) / std::abs(left(i));
      left /= phase;
      right *= phase;
      return;
    }
  }
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

SchmidtDecomposition schmidt(const PureState& psi, std::span<const std::string> cut_left) {
  if (cut_left.empty())
    throw std::invalid_argument("cut must keep at least one subsystem on each side");
  const auto [front_layout, order] = detail::front_order(psi.layout(), cut_left);
  if (cut_left.size() == psi.layout().size())
    throw std::invalid_argument("cut must keep at least one subsystem on each side");

  Eigen::VectorXcd v = detail::reorder_vector(psi.layout(), psi.amplitudes(), order);
  std::size_t left_dim = 1;
  for (const auto& label : cut_left) left_dim *= psi.layout().dim_of(label);
  const std::size_t right_dim = psi.layout().total_dimension() / left_dim;

  Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(v.data(), left_dim, right_dim);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const std::size_t rank = std::min(left_dim, right_dim);
  std::vector<Eigen::VectorXcd> left(rank), right(rank);
  Eigen::VectorXd coeffs(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    coeffs(k) = svd.singularValues()(k);
    left[k] = svd.matrixU().col(k);
    right[k] = svd.matrixV().col(k).conjugate();
    fix_phase(left[k], right[k]);
  }

  // Singular values arrive sorted; order degenerate groups deterministically.
  std::vector<std::size_t> idx(rank);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(coeffs(a) - coeffs(b)) > 1e-12) return coeffs(a) > coeffs(b);
    return lex_less(left[a], left[b]);
  });

  SchmidtDecomposition out;
  out.coefficients.resize(rank);
  out.left_basis.reserve(rank);
  out.right_basis.reserve(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    out.coefficients(k) = coeffs(idx[k]);
    out.left_basis.push_back(std::move(left[idx[k]]));
    out.right_basis.push_back(std::move(right[idx[k]]));
  }
  return out;
}

PureState purify(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
  const std::size_t dim = rho.dimension();

  // Eigenvalues arrive ascending; flip to decreasing and clamp round-off.
  std::vector<double> eigs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double value = solver.eigenvalues()(static_cast<Eigen::Index>(dim - 1 - i));
    if (value < -1e-8)
      throw std::invalid_argument("cannot purify: eigenvalue " + std::to_string(value));
    eigs[i] = std::max(value, 0.0);
  }

  SystemLayout reference_layout({Subsystem{unique_label(rho.layout(), "T"), dim, Party::Referee}});
  SystemLayout combined = rho.layout().concatenated(reference_layout);

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (eigs[i] == 0.0) continue;
    const double root = std::sqrt(eigs[i]);
    const Eigen::VectorXcd vec = solver.eigenvectors().col(static_cast<Eigen::Index>(dim - 1 - i));
    for (std::size_t a = 0; a < dim; ++a) amps(a * dim + i) = root * vec(a);
  }
  amps /= amps.norm();
  return PureState(std::move(combined), std::move(amps));
}

}  // namespace qcat
