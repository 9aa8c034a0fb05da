#include "thermo/system.hpp"

#include <algorithm>
#include <iterator>
#include <mutex>
#include <string>

#include "thermo/errors.hpp"

namespace thermo {

std::string_view to_string(AtomKind kind) noexcept {
  switch (kind) {
    case AtomKind::IdealGas: return "ideal-gas";
    case AtomKind::Reservoir: return "reservoir";
    case AtomKind::Abstract: return "abstract";
  }
  return "abstract";
}

std::optional<AtomKind> atom_kind_from_string(std::string_view name) noexcept {
  if (name == "ideal-gas") return AtomKind::IdealGas;
  if (name == "reservoir") return AtomKind::Reservoir;
  if (name == "abstract") return AtomKind::Abstract;
  return std::nullopt;
}

System::System(std::initializer_list<AtomId> atoms) : System(std::vector<AtomId>(atoms)) {}

System::System(std::vector<AtomId> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  if (atoms_.empty()) fail(ErrorKind::InvalidArgument, "a system needs at least one atom");
}

bool System::contains(AtomId a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

bool System::is_subsystem_of(const System& whole) const {
  return std::includes(whole.atoms_.begin(), whole.atoms_.end(), atoms_.begin(), atoms_.end());
}

System compose(const System& a, const System& b) {
  std::vector<AtomId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
                 std::back_inserter(out));
  return System(std::move(out));
}

std::optional<System> intersect(const System& a, const System& b) {
  std::vector<AtomId> out;
  std::set_intersection(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
                        std::back_inserter(out));
  if (out.empty()) return std::nullopt;
  return System(std::move(out));
}

std::vector<System> subsystems(const System& s) {
  const auto n = s.size();
  if (n > kMaxEnumeratedAtoms) {
    fail(ErrorKind::SizeLimit, "refusing to enumerate subsystems of " + std::to_string(n) + " atoms");
  }
  std::vector<System> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<AtomId> part;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) part.push_back(s.atoms()[i]);
    }
    out.emplace_back(std::move(part));
  }
  return out;
}

std::vector<System> atoms_of(const System& s) {
  std::vector<System> out;
  out.reserve(s.size());
  for (auto a : s.atoms()) out.emplace_back(a);
  return out;
}

System disjoint_complement(const System& whole, const System& part) {
  if (!part.is_subsystem_of(whole) || part == whole) {
    fail(ErrorKind::NotProperSubsystem, "part is not a proper subsystem of whole");
  }
  std::vector<AtomId> out;
  std::set_difference(whole.atoms().begin(), whole.atoms().end(), part.atoms().begin(),
                      part.atoms().end(), std::back_inserter(out));
  return System(std::move(out));
}

// -- World -----------------------------------------------------------------

namespace {

AtomKind kind_of(const ModelBinding& b) {
  if (std::holds_alternative<GasModel>(b)) return AtomKind::IdealGas;
  if (std::holds_alternative<ReservoirModel>(b)) return AtomKind::Reservoir;
  return AtomKind::Abstract;
}

}  // namespace

AtomId World::add(const ModelBinding& binding) {
  if (const auto* g = std::get_if<GasModel>(&binding)) {
    if (!(g->n > 0 && g->R > 0 && g->gamma > 1 && g->sigma0.p > 0 && g->sigma0.V > 0)) {
      fail(ErrorKind::InvalidArgument, "gas model needs n > 0, R > 0, gamma > 1, positive sigma0");
    }
  } else if (const auto* r = std::get_if<ReservoirModel>(&binding)) {
    if (!(r->theta > 0)) fail(ErrorKind::InvalidArgument, "reservoir theta must be positive");
  } else if (std::get<AbstractModel>(binding).dim < 1) {
    fail(ErrorKind::InvalidArgument, "abstract atoms need dim >= 1");
  }
  std::unique_lock lock(mutex_);
  const AtomId id{next_.fetch_add(1), kind_of(binding)};
  bindings_.emplace(id.id, binding);
  return id;
}

AtomId World::add_gas(const GasModel& model) { return add(model); }
AtomId World::add_reservoir(const ReservoirModel& model) { return add(model); }
AtomId World::add_abstract(int dim) { return add(AbstractModel{dim}); }

bool World::contains(AtomId a) const {
  std::shared_lock lock(mutex_);
  return bindings_.count(a.id) != 0;
}

ModelBinding World::binding(AtomId a) const {
  std::shared_lock lock(mutex_);
  auto it = bindings_.find(a.id);
  if (it == bindings_.end()) fail(ErrorKind::InvalidArgument, "atom not registered in this world");
  return it->second;
}

const GasModel& World::gas_model(AtomId a) const {
  std::shared_lock lock(mutex_);
  auto it = bindings_.find(a.id);
  if (it == bindings_.end()) fail(ErrorKind::InvalidArgument, "atom not registered in this world");
  const auto* g = std::get_if<GasModel>(&it->second);
  if (!g) fail(ErrorKind::InvalidArgument, "atom is not an ideal gas");
  // unordered_map references stay valid across rehashing and nothing is erased.
  return *g;
}

double World::reservoir_theta(AtomId a) const {
  const auto b = binding(a);
  const auto* r = std::get_if<ReservoirModel>(&b);
  if (!r) fail(ErrorKind::InvalidArgument, "atom is not a reservoir");
  return r->theta;
}

int World::abstract_dim(AtomId a) const {
  const auto b = binding(a);
  const auto* m = std::get_if<AbstractModel>(&b);
  if (!m) fail(ErrorKind::InvalidArgument, "atom is not abstract");
  return m->dim;
}

std::vector<AtomId> World::registry() const {
  std::shared_lock lock(mutex_);
  std::vector<AtomId> out;
  out.reserve(bindings_.size());
  for (const auto& [id, b] : bindings_) out.push_back(AtomId{id, kind_of(b)});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t World::size() const {
  std::shared_lock lock(mutex_);
  return bindings_.size();
}

std::pair<System, AtomMap> clone_system(World& world, const System& s) {
  AtomMap mapping;
  std::vector<AtomId> fresh;
  fresh.reserve(s.size());
  for (auto a : s.atoms()) {
    const auto copy = world.add(world.binding(a));
    mapping.emplace(a, copy);
    fresh.push_back(copy);
  }
  return {System(std::move(fresh)), std::move(mapping)};
}

}  // namespace thermo
