#include "qcat/layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace qcat {

std::string_view party_name(Party party) {
  switch (party) {
    case Party::Alice: return "Alice";
    case Party::Bob: return "Bob";
    case Party::Referee: return "Referee";
    case Party::Charlie: return "Charlie";
    case Party::Catalyst: return "Catalyst";
    case Party::Register: return "Register";
  }
  throw std::logic_error("unknown party enum value");
}

std::optional<Party> party_from_name(std::string_view name) {
  for (Party p : {Party::Alice, Party::Bob, Party::Referee, Party::Charlie,
                  Party::Catalyst, Party::Register}) {
    if (party_name(p) == name) return p;
  }
  return std::nullopt;
}

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.label.empty()) throw std::invalid_argument("subsystem label must be nonempty");
    if (s.dim < 1) throw std::invalid_argument("subsystem '" + s.label + "' has dimension 0");
    if (!seen.insert(s.label).second)
      throw std::invalid_argument("duplicate subsystem label '" + s.label + "'");
  }
  strides_.assign(subsystems_.size(), 1);
  total_dim_ = 1;
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= subsystems_[i].dim;
  }
}

const Subsystem& SystemLayout::at(std::size_t position) const {
  if (position >= subsystems_.size())
    throw std::out_of_range("subsystem position out of range");
  return subsystems_[position];
}

bool SystemLayout::has_label(std::string_view label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::position_of(std::string_view label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i)
    if (subsystems_[i].label == label) return i;
  throw std::invalid_argument("unknown subsystem label '" + std::string(label) + "'");
}

std::size_t SystemLayout::dim_of(std::string_view label) const {
  return subsystems_[position_of(label)].dim;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(subsystems_.size());
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

std::vector<std::string> SystemLayout::labels_of(Party party) const {
  std::vector<std::string> out;
  for (const auto& s : subsystems_)
    if (s.party == party) out.push_back(s.label);
  return out;
}

std::vector<std::string> SystemLayout::labels_excluding(
    std::span<const std::string> removed) const {
  std::vector<std::string> out;
  for (const auto& s : subsystems_) {
    if (std::find(removed.begin(), removed.end(), s.label) == removed.end())
      out.push_back(s.label);
  }
  return out;
}

std::size_t SystemLayout::stride(std::size_t position) const {
  if (position >= strides_.size()) throw std::out_of_range("stride position out of range");
  return strides_[position];
}

std::vector<std::size_t> SystemLayout::digits_of(std::size_t flat) const {
  std::vector<std::size_t> digits(subsystems_.size());
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    digits[i] = (flat / strides_[i]) % subsystems_[i].dim;
  }
  return digits;
}

std::size_t SystemLayout::flat_of(std::span<const std::size_t> digits) const {
  if (digits.size() != subsystems_.size())
    throw std::invalid_argument("digit count does not match subsystem count");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= subsystems_[i].dim)
      throw std::out_of_range("digit exceeds subsystem dimension");
    flat += digits[i] * strides_[i];
  }
  return flat;
}

SystemLayout SystemLayout::concatenated(const SystemLayout& other) const {
  std::vector<Subsystem> combined = subsystems_;
  for (const auto& s : other.subsystems_) {
    if (has_label(s.label))
      throw std::invalid_argument("label collision on '" + s.label + "' while combining layouts");
    combined.push_back(s);
  }
  return SystemLayout(std::move(combined));
}

SystemLayout SystemLayout::subset(std::span<const std::string> kept) const {
  for (const auto& label : kept) position_of(label);  // validate
  std::vector<Subsystem> out;
  for (const auto& s : subsystems_) {
    if (std::find(kept.begin(), kept.end(), s.label) != kept.end()) out.push_back(s);
  }
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::relabeled(
    std::span<const std::pair<std::string, std::string>> renames) const {
  std::vector<Subsystem> out = subsystems_;
  for (const auto& [from, to] : renames) {
    out[position_of(from)].label = to;
  }
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::with_party(std::span<const std::string> labels, Party party) const {
  std::vector<Subsystem> out = subsystems_;
  for (const auto& label : labels) out[position_of(label)].party = party;
  return SystemLayout(std::move(out));
}

bool SystemLayout::operator==(const SystemLayout& other) const {
  if (subsystems_.size() != other.subsystems_.size()) return false;
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    const auto& a = subsystems_[i];
    const auto& b = other.subsystems_[i];
    if (a.label != b.label || a.dim != b.dim || a.party != b.party) return false;
  }
  return true;
}

std::string unique_label(const SystemLayout& layout, std::string base) {
  while (layout.has_label(base)) base += "'";
  return base;
}

}  // namespace qcat
