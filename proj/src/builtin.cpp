#include "qcat/builtin.hpp"

#include <cmath>

#include "qcat/measures.hpp"

namespace qcat {

PureState bell_state() {
  SystemLayout layout({Subsystem{"A", 2, Party::Alice}, Subsystem{"B", 2, Party::Bob}});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(layout), std::move(amps));
}

PureState ghz_state() {
  SystemLayout layout({Subsystem{"R", 2, Party::Referee}, Subsystem{"A", 2, Party::Alice},
                       Subsystem{"B", 2, Party::Bob}});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps(0) = amps(7) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(layout), std::move(amps));
}

PureState w_state() {
  SystemLayout layout({Subsystem{"R", 2, Party::Referee}, Subsystem{"A", 2, Party::Alice},
                       Subsystem{"B", 2, Party::Bob}});
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps(1) = amps(2) = amps(4) = 1.0 / std::sqrt(3.0);
  return PureState(std::move(layout), std::move(amps));
}

PureState jp_psi_state() {
  return pure_from_spectrum(ProbabilityVector({0.4, 0.4, 0.1, 0.1}));
}

PureState jp_phi_state() {
  return pure_from_spectrum(ProbabilityVector({0.5, 0.25, 0.25}));
}

std::optional<LoadedState> builtin_state(std::string_view name) {
  if (name == "bell") return LoadedState(bell_state());
  if (name == "ghz") return LoadedState(ghz_state());
  if (name == "w") return LoadedState(w_state());
  if (name == "jp-psi") return LoadedState(jp_psi_state());
  if (name == "jp-phi") return LoadedState(jp_phi_state());
  return std::nullopt;
}

}  // namespace qcat
