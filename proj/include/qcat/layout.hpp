#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcat {

enum class Party { Alice, Bob, Referee, Charlie, Catalyst, Register };

std::string_view party_name(Party party);
std::optional<Party> party_from_name(std::string_view name);

struct Subsystem {
  std::string label;
  std::size_t dim = 1;
  Party party = Party::Alice;
};

// Ordered registry of subsystems. Flat indices are row-major over the order,
// so the first subsystem is the most significant digit; this matches the
// Kronecker product convention A ⊗ B -> index i_A * dim_B + i_B.
class SystemLayout {
public:
  SystemLayout() = default;  // scalar layout: no subsystems, total dimension 1
  explicit SystemLayout(std::vector<Subsystem> subsystems);

  std::size_t size() const { return subsystems_.size(); }
  std::size_t total_dimension() const { return total_dim_; }
  const Subsystem& at(std::size_t position) const;
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }

  bool has_label(std::string_view label) const;
  std::size_t position_of(std::string_view label) const;  // throws on unknown label
  std::size_t dim_of(std::string_view label) const;

  std::vector<std::string> labels() const;
  std::vector<std::string> labels_of(Party party) const;
  std::vector<std::string> labels_excluding(std::span<const std::string> removed) const;

  // Row-major digit arithmetic.
  std::size_t stride(std::size_t position) const;
  std::vector<std::size_t> digits_of(std::size_t flat) const;
  std::size_t flat_of(std::span<const std::size_t> digits) const;

  SystemLayout concatenated(const SystemLayout& other) const;  // throws on label collision
  // Kept labels in original layout order (the argument's order does not matter).
  SystemLayout subset(std::span<const std::string> kept) const;
  SystemLayout relabeled(std::span<const std::pair<std::string, std::string>> renames) const;
  SystemLayout with_party(std::span<const std::string> labels, Party party) const;

  bool operator==(const SystemLayout& other) const;

private:
  std::vector<Subsystem> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

// Picks `base` if free in the layout, otherwise appends primes until unique.
std::string unique_label(const SystemLayout& layout, std::string base);

}  // namespace qcat
