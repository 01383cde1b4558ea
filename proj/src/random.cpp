#include "qcat/random.hpp"

#include <cmath>

namespace qcat {

namespace {

Eigen::MatrixXcd ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  return m;
}

}  // namespace

Eigen::VectorXcd random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
  Eigen::VectorXcd v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

PureState random_pure_state(SystemLayout layout, std::mt19937_64& rng) {
  const std::size_t dim = layout.total_dimension();
  return PureState(std::move(layout), random_unit_vector(dim, rng));
}

DensityOperator random_density_operator(SystemLayout layout, std::mt19937_64& rng,
                                        std::size_t rank) {
  const std::size_t dim = layout.total_dimension();
  if (rank == 0 || rank > dim) rank = dim;
  const Eigen::MatrixXcd g = ginibre(dim, rank, rng);
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(layout), std::move(m));
}

Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases so the distribution is Haar.
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const std::complex<double> d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

QuantumChannel random_channel(std::size_t dim, std::size_t kraus_count,
                              std::vector<std::string> labels, std::mt19937_64& rng) {
  if (kraus_count == 0) throw std::invalid_argument("channel needs at least one Kraus operator");
  // A Haar-random isometry from the system into system ⊗ environment, sliced
  // into Kraus blocks.
  const Eigen::MatrixXcd g = ginibre(dim * kraus_count, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd q =
      Eigen::MatrixXcd(qr.householderQ()).leftCols(static_cast<Eigen::Index>(dim));
  std::vector<Eigen::MatrixXcd> kraus;
  kraus.reserve(kraus_count);
  for (std::size_t k = 0; k < kraus_count; ++k)
    kraus.push_back(q.middleRows(static_cast<Eigen::Index>(k * dim), static_cast<Eigen::Index>(dim)));
  auto outputs = labels;
  return QuantumChannel(std::move(kraus), std::move(labels), std::move(outputs));
}

ProbabilityVector random_probability_vector(std::size_t length, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> entries(length);
  double sum = 0.0;
  for (double& e : entries) {
    // Exponential draws normalize to a flat Dirichlet sample.
    e = -std::log(1.0 - uniform(rng));
    sum += e;
  }
  for (double& e : entries) e /= sum;
  return ProbabilityVector(std::move(entries));
}

}  // namespace qcat
