#pragma once

// Processes as thermodynamic footprints: per-atom initial state, final state
// and work, plus an identity and an optional reverse witness.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thermo/state.hpp"
#include "thermo/tolerance.hpp"

namespace thermo {

struct ProcessEntry {
  AtomState initial;
  AtomState final;
  double work = 0.0;
};

using ProcessId = std::uint64_t;

class Process {
 public:
  /// Constructs the reverse process on demand. Attached by model constructors.
  using Witness = std::function<Process()>;

  /// Throws InvalidArgument for an empty entry list, duplicate atoms, or an
  /// entry whose states are tagged with a different atom.
  explicit Process(std::vector<ProcessEntry> entries, std::vector<std::string> tags = {},
                   Witness reverse = {});

  ProcessId pid() const noexcept { return pid_; }
  const std::map<AtomId, ProcessEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& tags() const noexcept { return tags_; }
  bool has_tag(std::string_view tag) const;

  /// 𝒜_p: the involved atoms.
  System involved() const;
  bool involves(AtomId a) const { return entries_.count(a) != 0; }

  /// W_A(p); zero for atoms that are not involved.
  double work(AtomId a) const;

  const StateValue& initial(AtomId a) const;
  const StateValue& final(AtomId a) const;
  JointState initial_state() const;
  JointState final_state() const;

  bool has_reverse_witness() const noexcept { return static_cast<bool>(reverse_); }
  const std::shared_ptr<const Witness>& witness() const noexcept { return reverse_; }

  /// Same footprint and witness, fresh pid, extra tags.
  Process retagged(std::vector<std::string> extra) const;

 private:
  Process(std::map<AtomId, ProcessEntry> entries, std::vector<std::string> tags,
          std::shared_ptr<const Witness> reverse);

  ProcessId pid_;
  std::map<AtomId, ProcessEntry> entries_;
  std::vector<std::string> tags_;
  std::shared_ptr<const Witness> reverse_;

  friend Process concatenate(const Process&, const Process&, double);
  friend Process eliminate_catalyst(const System&, const System&, const Process&, double);
};

/// Runs p, then q (q ∘ p). Atoms shared by both must have p's final state equal
/// q's initial state; otherwise StateMismatch. Works add per atom. The result
/// is witnessed-reversible when both operands are.
Process concatenate(const Process& p, const Process& q,
                    double state_tol = default_tolerances().state);

/// Left fold of concatenate over a nonempty sequence.
Process concatenate_all(const std::vector<Process>& steps,
                        double state_tol = default_tolerances().state);

/// W_S(p) = Σ_{A ∈ S} W_A(p).
double work_of(const System& s, const Process& p);

/// True iff the involved atoms are exactly the atoms of s.
bool is_work_process(const System& s, const Process& p);

/// Zero-work process with initial = final = sigma; reversible, its own reverse.
Process make_identity(const System& s, const JointState& sigma);

struct Classification {
  bool cyclic = false;
  bool catalytic = false;
};

/// Cyclic on c: every atom of c the process touches ends where it started.
/// Catalytic: cyclic and W_C(p) = 0 within `work_tol`.
Classification classify(const System& c, const Process& p,
                        double state_tol = default_tolerances().state,
                        double work_tol = default_tolerances().law);

/// True iff p is cyclic with zero work on every involved atom.
bool is_identity(const Process& p, double state_tol = default_tolerances().state,
                 double work_tol = default_tolerances().law);

/// Drops the catalyst entries of a work process on s ∨ c that is catalytic
/// on c. Throws NotWorkProcess, NotCatalytic, or Overlap (s, c not disjoint).
Process eliminate_catalyst(const System& s, const System& c, const Process& p,
                           double work_tol = default_tolerances().law);

/// Throws NoReverseWitness for witness-free processes.
Process reverse_of(const Process& p);
bool is_reversible(const Process& p);

/// p1 ∨ p2 for processes on disjoint atom sets. Throws Overlap otherwise.
Process join(const Process& p1, const Process& p2);

}  // namespace thermo
