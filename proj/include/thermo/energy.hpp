#pragma once

// First-law layer: reachability through a catalog of work processes, the
// internal energy built from connecting works, heat as ΔU − W, and the
// first-law conformance checker.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "thermo/ideal_gas.hpp"
#include "thermo/process.hpp"
#include "thermo/system.hpp"

namespace thermo {

/// One candidate step of a work process on a single atom. `build` is only
/// called once a full path to the target has been found.
struct Move {
  StateValue end;
  std::function<Process()> build;
  std::string label;
};

/// The work processes available on one atom, offered as moves aimed at a
/// target state.
class WorkCatalog {
 public:
  virtual ~WorkCatalog() = default;
  virtual std::vector<Move> moves(const StateValue& from, const StateValue& target) const = 0;
};

/// Type-1 and type-2 processes on a gas atom. Candidate moves: adiabat to the
/// target volume, adiabat to the target pressure, pressure rise to the target
/// pressure, pressure rise onto the target's adiabat.
class GasCatalog final : public WorkCatalog {
 public:
  explicit GasCatalog(Gas gas) : gas_(std::move(gas)) {}
  std::vector<Move> moves(const StateValue& from, const StateValue& target) const override;

 private:
  Gas gas_;
};

/// Friction on a reservoir: raises E by ΔE at work cost ΔE.
class ReservoirCatalog final : public WorkCatalog {
 public:
  explicit ReservoirCatalog(Reservoir r) : r_(r) {}
  std::vector<Move> moves(const StateValue& from, const StateValue& target) const override;

 private:
  Reservoir r_;
};

using CatalogFactory = std::function<std::shared_ptr<const WorkCatalog>(AtomId)>;

/// Gas and reservoir catalogs from the world's model bindings; nullptr for
/// abstract atoms.
CatalogFactory default_catalogs(const World& world);

struct SearchOptions {
  int max_depth = 4;
  /// Relative tolerance for "arrived at the target".
  double arrival_tol = 1e-9;
  /// Upper bound on paths collected by find_paths.
  std::size_t max_paths = 32;
};

/// A sequence of moves from one state to another, with its concatenated process.
struct WorkPath {
  std::vector<std::string> labels;
  std::vector<std::function<Process()>> steps;
  Process build() const;
};

/// All move sequences of length <= max_depth from `from` to `to`, shortest
/// first. The identity path (empty) is returned when from == to.
struct PathSearch {
  std::vector<WorkPath> paths;
  /// True when some branch was cut at max_depth.
  bool truncated = false;
};
PathSearch find_paths(const WorkCatalog& catalog, const StateValue& from, const StateValue& to,
                      const SearchOptions& opts = {}, bool first_only = false);

/// Whether the catalog holds a work process on the atom from σ1 to σ2.
/// Throws DepthExceeded when no path was found but the search was truncated.
bool reaches(const WorkCatalog& catalog, const StateValue& s1, const StateValue& s2,
             const SearchOptions& opts = {});

/// Internal energy per atom: U(σ) = U_ref + W(σ_ref → σ) or U_ref − W(σ → σ_ref),
/// with W found by path search in the atom's catalog. Composite systems sum
/// their atoms. Memoized; queries may run concurrently.
class EnergyLedger {
 public:
  explicit EnergyLedger(const World& world, SearchOptions opts = {});
  EnergyLedger(const World& world, CatalogFactory factory, SearchOptions opts = {});

  /// Overrides the default reference for an atom (gas: σ0 of its model with
  /// U = U0 + p0V0/(γ−1); reservoir: E = 0 with U = 0).
  void set_reference(AtomId atom, StateValue sigma0, double u0);
  std::pair<StateValue, double> reference(AtomId atom) const;

  double internal_energy(AtomId atom, const StateValue& sigma) const;
  double internal_energy(const System& s, const JointState& sigma) const;

  /// ΔU_S(p), summed over the atoms of s that p involves.
  double delta(const System& s, const Process& p) const;

  const World& world() const noexcept { return *world_; }
  const SearchOptions& options() const noexcept { return opts_; }
  std::shared_ptr<const WorkCatalog> catalog(AtomId atom) const;

 private:
  struct Key {
    AtomId atom;
    std::vector<double> coords;
    friend bool operator<(const Key& a, const Key& b) {
      return a.atom != b.atom ? a.atom < b.atom : a.coords < b.coords;
    }
  };

  const World* world_;
  CatalogFactory factory_;
  SearchOptions opts_;
  mutable std::shared_mutex mutex_;
  std::map<AtomId, std::pair<StateValue, double>> references_;
  mutable std::map<AtomId, std::shared_ptr<const WorkCatalog>> catalogs_;
  mutable std::map<Key, double> memo_;
};

/// Q_S(p) = ΔU_S(p) − W_S(p).
double heat_of(const EnergyLedger& ledger, const System& s, const Process& p);

struct FirstLawViolation {
  StateValue s1, s2;
  std::vector<std::string> paths;
  std::vector<double> works;
  /// "unreachable" or "path-dependent".
  std::string reason;
};

struct FirstLawReport {
  std::size_t pairs_checked = 0;
  std::size_t inconclusive = 0;
  std::vector<FirstLawViolation> violations;
};

/// For every pair: reachable in at least one direction, and every connecting
/// path found agrees on W within max(rel·|W|, abs).
FirstLawReport check_first_law(const WorkCatalog& catalog,
                               const std::vector<std::pair<StateValue, StateValue>>& pairs,
                               const SearchOptions& opts = {},
                               double rel = default_tolerances().first_law_rel,
                               double abs = default_tolerances().first_law_abs);

}  // namespace thermo
