#pragma once

#include <map>
#include <variant>
#include <vector>

#include "thermo/models.hpp"
#include "thermo/system.hpp"

namespace thermo {

struct ReservoirState {
  double E = 0.0;

  friend bool operator==(const ReservoirState&, const ReservoirState&) = default;
};

struct AbstractState {
  std::vector<double> coords;

  friend bool operator==(const AbstractState&, const AbstractState&) = default;
};

using StateValue = std::variant<GasState, ReservoirState, AbstractState>;

/// A state tagged with its atom: state spaces of distinct atoms never overlap.
struct AtomState {
  AtomId atom;
  StateValue value;
};

/// Component-wise comparison with |a-b| <= tol * max(1,|a|,|b|). States of
/// different alternatives never compare equal.
bool same_state(const StateValue& a, const StateValue& b, double tol);

/// Flattened numeric payload (p,V), (E) or the abstract coordinates.
std::vector<double> coordinates(const StateValue& v);

/// State of a composite system: one part per atom.
class JointState {
 public:
  JointState() = default;
  JointState(std::initializer_list<std::pair<const AtomId, StateValue>> parts) : parts_(parts) {}
  explicit JointState(std::map<AtomId, StateValue> parts) : parts_(std::move(parts)) {}

  const std::map<AtomId, StateValue>& parts() const noexcept { return parts_; }
  bool covers(const System& s) const;
  bool empty() const noexcept { return parts_.empty(); }

  const StateValue& at(AtomId a) const;
  void set(AtomId a, StateValue v) { parts_.insert_or_assign(a, std::move(v)); }

  /// Restriction to the atoms of s. Throws InvalidArgument if some atom is missing.
  JointState restrict_to(const System& s) const;

  /// Union of two joint states on disjoint supports.
  friend JointState merge(const JointState& a, const JointState& b);

 private:
  std::map<AtomId, StateValue> parts_;
};

bool same_joint_state(const JointState& a, const JointState& b, double tol);

}  // namespace thermo
