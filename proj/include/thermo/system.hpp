#pragma once

// Finite-set algebra of thermodynamic systems and the world registry that
// hands out atoms.

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thermo/models.hpp"

namespace thermo {

enum class AtomKind { IdealGas, Reservoir, Abstract };

std::string_view to_string(AtomKind kind) noexcept;
std::optional<AtomKind> atom_kind_from_string(std::string_view name) noexcept;

/// World-scoped atom identifier. Equality and ordering use the id only; the
/// kind travels along so footprints can be inspected without a World.
struct AtomId {
  std::uint64_t id = 0;
  AtomKind kind = AtomKind::Abstract;

  friend bool operator==(const AtomId& a, const AtomId& b) noexcept { return a.id == b.id; }
  friend std::strong_ordering operator<=>(const AtomId& a, const AtomId& b) noexcept {
    return a.id <=> b.id;
  }
};

/// A finite nonempty set of atoms, stored sorted. Immutable.
class System {
 public:
  System(std::initializer_list<AtomId> atoms);
  explicit System(std::vector<AtomId> atoms);
  explicit System(AtomId atom) : System({atom}) {}

  const std::vector<AtomId>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool contains(AtomId a) const;
  bool is_subsystem_of(const System& whole) const;
  bool is_atomic() const noexcept { return atoms_.size() == 1; }

  friend bool operator==(const System&, const System&) = default;
  friend auto operator<=>(const System& a, const System& b) { return a.atoms_ <=> b.atoms_; }

 private:
  std::vector<AtomId> atoms_;
};

/// S1 ∨ S2: set union.
System compose(const System& a, const System& b);

/// S1 ∧ S2: the intersection, or nullopt as the Disjoint marker (the empty set
/// is not a system).
std::optional<System> intersect(const System& a, const System& b);

inline bool disjoint(const System& a, const System& b) { return !intersect(a, b).has_value(); }

inline constexpr std::size_t kMaxEnumeratedAtoms = 16;

/// All 2^n - 1 nonempty subsets. Throws SizeLimit above 16 atoms; use
/// is_subsystem for larger systems.
std::vector<System> subsystems(const System& s);
inline bool is_subsystem(const System& part, const System& whole) { return part.is_subsystem_of(whole); }

std::vector<System> atoms_of(const System& s);

/// whole \ part. Throws NotProperSubsystem unless part ⊊ whole.
System disjoint_complement(const System& whole, const System& part);

/// Registry of all atoms and their model bindings. Allocation is the only
/// mutating operation and is internally serialized; lookups may run
/// concurrently.
class World {
 public:
  World() = default;
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  AtomId add_gas(const GasModel& model);
  AtomId add_reservoir(const ReservoirModel& model);
  AtomId add_abstract(int dim = 1);
  AtomId add(const ModelBinding& binding);

  bool contains(AtomId a) const;
  ModelBinding binding(AtomId a) const;
  const GasModel& gas_model(AtomId a) const;
  double reservoir_theta(AtomId a) const;
  int abstract_dim(AtomId a) const;

  std::vector<AtomId> registry() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::atomic<std::uint64_t> next_{1};
  std::unordered_map<std::uint64_t, ModelBinding> bindings_;
};

using AtomMap = std::map<AtomId, AtomId>;

/// Allocates fresh atoms of identical kind and model for every atom of s.
/// Returns the copy together with the bijection original -> clone.
std::pair<System, AtomMap> clone_system(World& world, const System& s);

}  // namespace thermo

template <>
struct std::hash<thermo::AtomId> {
  std::size_t operator()(const thermo::AtomId& a) const noexcept {
    return std::hash<std::uint64_t>{}(a.id);
  }
};
