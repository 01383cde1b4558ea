#pragma once

#include <optional>
#include <string_view>

#include "qcat/state_io.hpp"

namespace qcat {

// Named states accepted by the CLI in place of file paths.
//   bell    maximally entangled qubit pair on A(Alice), B(Bob)
//   ghz     three-qubit GHZ on R(Referee), A(Alice), B(Bob)
//   w       three-qubit W on R(Referee), A(Alice), B(Bob)
//   jp-psi  Schmidt spectrum (0.4, 0.4, 0.1, 0.1) on A|B
//   jp-phi  Schmidt spectrum (0.5, 0.25, 0.25) on A|B
std::optional<LoadedState> builtin_state(std::string_view name);

PureState bell_state();
PureState ghz_state();
PureState w_state();
PureState jp_psi_state();
PureState jp_phi_state();

}  // namespace qcat
