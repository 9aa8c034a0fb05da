#include "thermo/state.hpp"

#include <algorithm>
#include <cmath>

#include "thermo/errors.hpp"
#include "thermo/tolerance.hpp"

namespace thermo {

std::vector<double> coordinates(const StateValue& v) {
  return std::visit(
      [](const auto& s) -> std::vector<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GasState>) return {s.p, s.V};
        else if constexpr (std::is_same_v<T, ReservoirState>) return {s.E};
        else return s.coords;
      },
      v);
}

bool same_state(const StateValue& a, const StateValue& b, double tol) {
  if (a.index() != b.index()) return false;
  const auto ca = coordinates(a);
  const auto cb = coordinates(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!nearly_equal(ca[i], cb[i], tol)) return false;
  }
  return true;
}

bool JointState::covers(const System& s) const {
  return std::all_of(s.atoms().begin(), s.atoms().end(),
                     [&](AtomId a) { return parts_.count(a) != 0; });
}

const StateValue& JointState::at(AtomId a) const {
  auto it = parts_.find(a);
  if (it == parts_.end()) fail(ErrorKind::InvalidArgument, "joint state has no part for atom");
  return it->second;
}

JointState JointState::restrict_to(const System& s) const {
  std::map<AtomId, StateValue> out;
  for (auto a : s.atoms()) out.emplace(a, at(a));
  return JointState(std::move(out));
}

JointState merge(const JointState& a, const JointState& b) {
  auto out = a.parts_;
  for (const auto& [atom, v] : b.parts_) {
    if (!out.emplace(atom, v).second) fail(ErrorKind::Overlap, "joint states share an atom");
  }
  return JointState(std::move(out));
}

bool same_joint_state(const JointState& a, const JointState& b, double tol) {
  if (a.parts().size() != b.parts().size()) return false;
  auto ib = b.parts().begin();
  for (const auto& [atom, v] : a.parts()) {
    if (!(ib->first == atom) || !same_state(v, ib->second, tol)) return false;
    ++ib;
  }
  return true;
}

}  // namespace thermo
