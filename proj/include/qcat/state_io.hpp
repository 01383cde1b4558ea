#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "qcat/protocols.hpp"
#include "qcat/state.hpp"

namespace qcat {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using LoadedState = std::variant<PureState, DensityOperator>;

// State document format (JSON):
//   {
//     "layout": [{"label": "A", "dim": 2, "party": "Alice"}, ...],
//     "kind": "pure" | "density",
//     "data": pure:    [[re, im], ...]                  (length = total dimension)
//             density: [[[re, im], ...], ...]           (row-major rows)
//   }
// Numbers are written in full precision. Loading re-checks the state
// invariants (normalization, Hermiticity, positivity) and reports the field
// at fault.
LoadedState read_state_json(const std::string& text);
LoadedState load_state_file(const std::string& path);
std::string write_state_json(const PureState& psi);
std::string write_state_json(const DensityOperator& rho);
std::string write_state_json(const LoadedState& state);
void save_state_file(const std::string& path, const LoadedState& state);

std::string ledger_to_json(const ResourceLedger& ledger);
ResourceLedger ledger_from_json(const std::string& text);

}  // namespace qcat
