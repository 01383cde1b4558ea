#include "qcat/state.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcat {

namespace {

constexpr double kStateTol = 1e-9;

std::string describe(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

PureState::PureState(SystemLayout layout, Eigen::VectorXcd amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dimension())
    throw std::invalid_argument("amplitude vector length " +
                                std::to_string(amplitudes_.size()) +
                                " does not match layout dimension " +
                                std::to_string(layout_.total_dimension()));
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kStateTol)
    throw std::invalid_argument("pure state is not normalized: |norm - 1| = " +
                                describe(std::abs(norm - 1.0)));
}

DensityOperator::DensityOperator(SystemLayout layout, Eigen::MatrixXcd matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const auto dim = static_cast<Eigen::Index>(layout_.total_dimension());
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw std::invalid_argument("density matrix shape does not match layout dimension " +
                                std::to_string(dim));
  const double herm_dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kStateTol)
    throw std::invalid_argument("density matrix is not Hermitian: max deviation " +
                                describe(herm_dev));
  const double trace_dev = std::abs(matrix_.trace().real() - 1.0) + std::abs(matrix_.trace().imag());
  if (trace_dev > kStateTol)
    throw std::invalid_argument("density matrix trace deviates from 1 by " +
                                describe(trace_dev));
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
}

double DensityOperator::purity() const {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return matrix_.squaredNorm();
}

void DensityOperator::validate() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -1e-10)
    throw std::invalid_argument("density matrix has negative eigenvalue " + describe(min_eig));
}

DensityOperator scalar_state() {
  Eigen::MatrixXcd one(1, 1);
  one(0, 0) = 1.0;
  return DensityOperator(SystemLayout(), std::move(one));
}

DensityOperator to_density(const PureState& psi) {
  return DensityOperator(psi.layout(), psi.amplitudes() * psi.amplitudes().adjoint());
}

PureState tensor(const PureState& a, const PureState& b) {
  SystemLayout combined = a.layout().concatenated(b.layout());
  Eigen::VectorXcd amps = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return PureState(std::move(combined), std::move(amps));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SystemLayout combined = a.layout().concatenated(b.layout());
  Eigen::MatrixXcd m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityOperator(std::move(combined), std::move(m));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::span<const std::string> discard) {
  const SystemLayout& layout = rho.layout();
  std::vector<std::size_t> traced_pos;
  for (const auto& label : discard) {
    const std::size_t pos = layout.position_of(label);
    if (std::find(traced_pos.begin(), traced_pos.end(), pos) == traced_pos.end())
      traced_pos.push_back(pos);
  }
  if (traced_pos.empty()) return rho;
  if (traced_pos.size() == layout.size())
    throw std::invalid_argument("partial trace would discard every subsystem");

  std::vector<std::size_t> kept_pos;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (std::find(traced_pos.begin(), traced_pos.end(), i) == traced_pos.end())
      kept_pos.push_back(i);

  auto offsets = [&](const std::vector<std::size_t>& positions) {
    std::size_t count = 1;
    for (std::size_t p : positions) count *= layout.at(p).dim;
    std::vector<std::size_t> out(count, 0);
    std::vector<std::size_t> digits(positions.size(), 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t off = 0;
      for (std::size_t j = 0; j < positions.size(); ++j)
        off += digits[j] * layout.stride(positions[j]);
      out[flat] = off;
      for (std::size_t j = positions.size(); j-- > 0;) {
        if (++digits[j] < layout.at(positions[j]).dim) break;
        digits[j] = 0;
      }
    }
    return out;
  };

  const std::vector<std::size_t> kept_offset = offsets(kept_pos);
  const std::vector<std::size_t> traced_offset = offsets(traced_pos);
  const std::size_t kept_dim = kept_offset.size();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  const Eigen::MatrixXcd& m = rho.matrix();
  for (std::size_t r = 0; r < kept_dim; ++r) {
    for (std::size_t c = 0; c < kept_dim; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t t : traced_offset) acc += m(kept_offset[r] + t, kept_offset[c] + t);
      out(r, c) = acc;
    }
  }

  std::vector<std::string> kept_labels;
  for (std::size_t p : kept_pos) kept_labels.push_back(layout.at(p).label);
  return DensityOperator(layout.subset(kept_labels), std::move(out));
}

namespace {

// source_digit_of[i] = input position whose digit feeds output position i.
std::vector<std::size_t> content_move_map(
    const SystemLayout& layout,
    std::span<const std::pair<std::string, std::string>> moves) {
  std::vector<std::size_t> source_digit_of(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) source_digit_of[i] = i;

  std::vector<std::size_t> froms, tos;
  for (const auto& [from, to] : moves) {
    const std::size_t from_pos = layout.position_of(from);
    const std::size_t to_pos = layout.position_of(to);
    if (layout.at(from_pos).dim != layout.at(to_pos).dim)
      throw std::invalid_argument("subsystem permutation would move '" + from + "' (dim " +
                                  std::to_string(layout.at(from_pos).dim) + ") into '" + to +
                                  "' (dim " + std::to_string(layout.at(to_pos).dim) + ")");
    froms.push_back(from_pos);
    tos.push_back(to_pos);
    source_digit_of[to_pos] = from_pos;
  }
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  auto froms_sorted = sorted(froms);
  auto tos_sorted = sorted(tos);
  if (std::adjacent_find(froms_sorted.begin(), froms_sorted.end()) != froms_sorted.end() ||
      std::adjacent_find(tos_sorted.begin(), tos_sorted.end()) != tos_sorted.end() ||
      froms_sorted != tos_sorted)
    throw std::invalid_argument("subsystem moves must form a permutation of the covered labels");
  return source_digit_of;
}

std::vector<std::size_t> index_map(const SystemLayout& layout,
                                   std::span<const std::size_t> source_digit_of) {
  const std::size_t dim = layout.total_dimension();
  std::vector<std::size_t> map(dim);
  for (std::size_t flat = 0; flat < dim; ++flat) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const std::size_t src = source_digit_of[i];
      const std::size_t digit = (flat / layout.stride(src)) % layout.at(src).dim;
      out += digit * layout.stride(i);
    }
    map[flat] = out;
  }
  return map;
}

}  // namespace

PureState permute_subsystems(const PureState& psi,
                             std::span<const std::pair<std::string, std::string>> moves) {
  const auto source_digit_of = content_move_map(psi.layout(), moves);
  const auto map = index_map(psi.layout(), source_digit_of);
  Eigen::VectorXcd out(psi.amplitudes().size());
  for (std::size_t flat = 0; flat < map.size(); ++flat)
    out(map[flat]) = psi.amplitudes()(flat);
  return PureState(psi.layout(), std::move(out));
}

DensityOperator permute_subsystems(
    const DensityOperator& rho, std::span<const std::pair<std::string, std::string>> moves) {
  const auto source_digit_of = content_move_map(rho.layout(), moves);
  const auto map = index_map(rho.layout(), source_digit_of);
  Eigen::MatrixXcd out(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t r = 0; r < map.size(); ++r)
    for (std::size_t c = 0; c < map.size(); ++c) out(map[r], map[c]) = rho.matrix()(r, c);
  return DensityOperator(rho.layout(), std::move(out));
}

PureState relabel(const PureState& psi,
                  std::span<const std::pair<std::string, std::string>> renames) {
  return PureState(psi.layout().relabeled(renames), psi.amplitudes());
}

DensityOperator relabel(const DensityOperator& rho,
                        std::span<const std::pair<std::string, std::string>> renames) {
  return DensityOperator(rho.layout().relabeled(renames), rho.matrix());
}

DensityOperator with_party(const DensityOperator& rho, std::span<const std::string> labels,
                           Party party) {
  return DensityOperator(rho.layout().with_party(labels, party), rho.matrix());
}

DensityOperator mix(std::span<const std::pair<double, DensityOperator>> terms) {
  if (terms.empty()) throw std::invalid_argument("cannot mix an empty list of states");
  double total = 0.0;
  for (const auto& [w, rho] : terms) {
    if (w < -1e-12) throw std::invalid_argument("mixture weight is negative");
    if (!(rho.layout() == terms.front().second.layout()))
      throw std::invalid_argument("mixture terms live on different layouts");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("mixture weights sum to " + describe(total));
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(terms.front().second.dimension(), terms.front().second.dimension());
  for (const auto& [w, rho] : terms) acc += w * rho.matrix();
  return DensityOperator(terms.front().second.layout(), std::move(acc));
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shapes differ");
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const DensityOperator& a, const DensityOperator& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

namespace detail {

std::pair<SystemLayout, std::vector<std::size_t>> front_order(
    const SystemLayout& layout, std::span<const std::string> front) {
  std::vector<std::size_t> order;
  for (const auto& label : front) {
    const std::size_t pos = layout.position_of(label);
    if (std::find(order.begin(), order.end(), pos) != order.end())
      throw std::invalid_argument("label '" + label + "' listed twice");
    order.push_back(pos);
  }
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);

  std::vector<Subsystem> subs;
  for (std::size_t p : order) subs.push_back(layout.at(p));
  return {SystemLayout(std::move(subs)), std::move(order)};
}

Eigen::VectorXcd reorder_vector(const SystemLayout& layout, const Eigen::VectorXcd& v,
                                std::span<const std::size_t> source_of) {
  const std::size_t m = layout.size();
  std::vector<std::size_t> new_stride(m, 1);
  std::size_t acc = 1;
  for (std::size_t i = m; i-- > 0;) {
    new_stride[i] = acc;
    acc *= layout.at(source_of[i]).dim;
  }
  Eigen::VectorXcd out(v.size());
  for (std::size_t flat = 0; flat < static_cast<std::size_t>(v.size()); ++flat) {
    std::size_t nf = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = source_of[i];
      nf += ((flat / layout.stride(j)) % layout.at(j).dim) * new_stride[i];
    }
    out(nf) = v(flat);
  }
  return out;
}

Eigen::MatrixXcd reorder_matrix(const SystemLayout& layout, const Eigen::MatrixXcd& mat,
                                std::span<const std::size_t> source_of) {
  const std::size_t m = layout.size();
  std::vector<std::size_t> new_stride(m, 1);
  std::size_t acc = 1;
  for (std::size_t i = m; i-- > 0;) {
    new_stride[i] = acc;
    acc *= layout.at(source_of[i]).dim;
  }
  const std::size_t dim = layout.total_dimension();
  std::vector<std::size_t> map(dim);
  for (std::size_t flat = 0; flat < dim; ++flat) {
    std::size_t nf = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = source_of[i];
      nf += ((flat / layout.stride(j)) % layout.at(j).dim) * new_stride[i];
    }
    map[flat] = nf;
  }
  Eigen::MatrixXcd out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(map[r], map[c]) = mat(r, c);
  return out;
}

}  // namespace detail

}  // namespace qcat
