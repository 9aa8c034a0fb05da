#include "thermo/process.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

namespace {

ProcessId next_pid() {
  static std::atomic<ProcessId> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::map<AtomId, ProcessEntry> index_entries(std::vector<ProcessEntry> entries) {
  if (entries.empty()) fail(ErrorKind::InvalidArgument, "a process involves at least one atom");
  std::map<AtomId, ProcessEntry> out;
  for (auto& e : entries) {
    if (!(e.initial.atom == e.final.atom)) {
      fail(ErrorKind::InvalidArgument, "entry states belong to different atoms");
    }
    if (e.initial.value.index() != e.final.value.index()) {
      fail(ErrorKind::InvalidArgument, "initial and final states live in different state spaces");
    }
    const auto key = e.initial.atom;
    if (!out.emplace(key, std::move(e)).second) {
      fail(ErrorKind::InvalidArgument, "duplicate atom in process entries");
    }
  }
  return out;
}

std::vector<std::string> merge_tags(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  auto out = a;
  for (const auto& t : b) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

}  // namespace

Process::Process(std::vector<ProcessEntry> entries, std::vector<std::string> tags, Witness reverse)
    : Process(index_entries(std::move(entries)), std::move(tags),
              reverse ? std::make_shared<const Witness>(std::move(reverse)) : nullptr) {}

Process::Process(std::map<AtomId, ProcessEntry> entries, std::vector<std::string> tags,
                 std::shared_ptr<const Witness> reverse)
    : pid_(next_pid()), entries_(std::move(entries)), tags_(std::move(tags)),
      reverse_(std::move(reverse)) {}

bool Process::has_tag(std::string_view tag) const {
  return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

System Process::involved() const {
  std::vector<AtomId> atoms;
  atoms.reserve(entries_.size());
  for (const auto& [a, e] : entries_) atoms.push_back(a);
  return System(std::move(atoms));
}

double Process::work(AtomId a) const {
  auto it = entries_.find(a);
  return it == entries_.end() ? 0.0 : it->second.work;
}

const StateValue& Process::initial(AtomId a) const {
  auto it = entries_.find(a);
  if (it == entries_.end()) fail(ErrorKind::InvalidArgument, "atom not involved in process");
  return it->second.initial.value;
}

const StateValue& Process::final(AtomId a) const {
  auto it = entries_.find(a);
  if (it == entries_.end()) fail(ErrorKind::InvalidArgument, "atom not involved in process");
  return it->second.final.value;
}

JointState Process::initial_state() const {
  std::map<AtomId, StateValue> parts;
  for (const auto& [a, e] : entries_) parts.emplace(a, e.initial.value);
  return JointState(std::move(parts));
}

JointState Process::final_state() const {
  std::map<AtomId, StateValue> parts;
  for (const auto& [a, e] : entries_) parts.emplace(a, e.final.value);
  return JointState(std::move(parts));
}

Process Process::retagged(std::vector<std::string> extra) const {
  return Process(entries_, merge_tags(tags_, extra), reverse_);
}

Process concatenate(const Process& p, const Process& q, double state_tol) {
  auto entries = p.entries_;
  for (const auto& [atom, eq] : q.entries_) {
    auto it = entries.find(atom);
    if (it == entries.end()) {
      entries.emplace(atom, eq);
      continue;
    }
    if (!same_state(it->second.final.value, eq.initial.value, state_tol)) {
      fail(ErrorKind::StateMismatch,
           "atom " + std::to_string(atom.id) + ": final state of first process differs from "
           "initial state of second");
    }
    it->second.final = eq.final;
    it->second.work += eq.work;
  }
  std::shared_ptr<const Process::Witness> witness;
  if (p.reverse_ && q.reverse_) {
    witness = std::make_shared<const Process::Witness>(
        [pw = p.reverse_, qw = q.reverse_, state_tol] { return concatenate((*qw)(), (*pw)(), state_tol); });
  }
  return Process(std::move(entries), merge_tags(p.tags_, q.tags_), std::move(witness));
}

Process concatenate_all(const std::vector<Process>& steps, double state_tol) {
  if (steps.empty()) fail(ErrorKind::InvalidArgument, "nothing to concatenate");
  Process acc = steps.front();
  for (std::size_t i = 1; i < steps.size(); ++i) acc = concatenate(acc, steps[i], state_tol);
  return acc;
}

double work_of(const System& s, const Process& p) {
  double total = 0.0;
  for (auto a : s.atoms()) total += p.work(a);
  return total;
}

bool is_work_process(const System& s, const Process& p) { return p.involved() == s; }

Process make_identity(const System& s, const JointState& sigma) {
  if (!sigma.covers(s)) fail(ErrorKind::InvalidArgument, "state does not cover the system");
  std::vector<ProcessEntry> entries;
  entries.reserve(s.size());
  for (auto a : s.atoms()) {
    const auto& v = sigma.at(a);
    entries.push_back({{a, v}, {a, v}, 0.0});
  }
  return Process(std::move(entries), {"identity"}, [s, sigma] { return make_identity(s, sigma); });
}

Classification classify(const System& c, const Process& p, double state_tol, double work_tol) {
  Classification out;
  out.cyclic = std::all_of(c.atoms().begin(), c.atoms().end(), [&](AtomId a) {
    auto it = p.entries().find(a);
    return it == p.entries().end() ||
           same_state(it->second.initial.value, it->second.final.value, state_tol);
  });
  out.catalytic = out.cyclic && std::fabs(work_of(c, p)) <= work_tol;
  return out;
}

bool is_identity(const Process& p, double state_tol, double work_tol) {
  return std::all_of(p.entries().begin(), p.entries().end(), [&](const auto& kv) {
    const auto& e = kv.second;
    return same_state(e.initial.value, e.final.value, state_tol) && std::fabs(e.work) <= work_tol;
  });
}

Process eliminate_catalyst(const System& s, const System& c, const Process& p, double work_tol) {
  if (!disjoint(s, c)) fail(ErrorKind::Overlap, "system and catalyst share atoms");
  if (!is_work_process(compose(s, c), p)) {
    fail(ErrorKind::NotWorkProcess, "process is not a work process on system ∨ catalyst");
  }
  if (!classify(c, p, default_tolerances().state, work_tol).catalytic) {
    fail(ErrorKind::NotCatalytic, "process is not catalytic on the catalyst");
  }
  std::map<AtomId, ProcessEntry> kept;
  for (auto a : s.atoms()) kept.emplace(a, p.entries_.at(a));
  std::shared_ptr<const Process::Witness> witness;
  if (p.reverse_) {
    witness = std::make_shared<const Process::Witness>(
        [s, c, pw = p.reverse_, work_tol] { return eliminate_catalyst(s, c, (*pw)(), work_tol); });
  }
  return Process(std::move(kept), merge_tags(p.tags_, {"catalyst-eliminated"}), std::move(witness));
}

Process reverse_of(const Process& p) {
  if (!p.has_reverse_witness()) fail(ErrorKind::NoReverseWitness, "process carries no reverse witness");
  const auto built = (*p.witness())();
  // Footprint mirrored exactly; the reverse of the reverse is p itself.
  std::vector<ProcessEntry> entries;
  for (const auto& [a, e] : p.entries()) entries.push_back({e.final, e.initial, -e.work});
  return Process(std::move(entries), built.tags(), [p] { return p; });
}

bool is_reversible(const Process& p) { return p.has_reverse_witness(); }

Process join(const Process& p1, const Process& p2) {
  for (const auto& [a, e] : p2.entries()) {
    if (p1.involves(a)) fail(ErrorKind::Overlap, "joined processes share atom " + std::to_string(a.id));
  }
  return concatenate(p1, p2);
}

}  // namespace thermo
