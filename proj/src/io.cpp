#include "thermo/io.hpp"

#include <cstdio>
#include <ostream>

namespace thermo::io {

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

Json to_json(const StateValue& v) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GasState>) {
          return {{"p", s.p}, {"V", s.V}};
        } else if constexpr (std::is_same_v<T, ReservoirState>) {
          return {{"E", s.E}};
        } else {
          return {{"coords", s.coords}};
        }
      },
      v);
}

Json to_json(const System& s) {
  Json out = Json::array();
  for (auto a : s.atoms()) out.push_back({{"id", a.id}, {"kind", std::string(to_string(a.kind))}});
  return out;
}

Json to_json(const Process& p) {
  Json entries = Json::array();
  for (const auto& [atom, e] : p.entries()) {
    entries.push_back({{"atom", {{"id", atom.id}, {"kind", std::string(to_string(atom.kind))}}},
                       {"initial", to_json(e.initial.value)},
                       {"final", to_json(e.final.value)},
                       {"work", e.work}});
  }
  return {{"pid", p.pid()}, {"entries", entries}, {"reversible", is_reversible(p)}, {"tags", p.tags()}};
}

Json to_json(const CarnotRun& run) {
  Json segments = Json::array();
  for (const auto& s : run.segments) {
    segments.push_back({{"label", s.label}, {"work", s.work}, {"heat", s.heat}});
  }
  return {{"theta1", run.r1.theta}, {"theta2", run.r2.theta}, {"q1", run.q1},          {"q2", run.q2},
          {"w", run.w},             {"reversible", run.reversible}, {"segments", segments}};
}

Json to_json(const FirstLawReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"sigma1", to_json(v.s1)},
                          {"sigma2", to_json(v.s2)},
                          {"paths", v.paths},
                          {"works", v.works},
                          {"reason", v.reason}});
  }
  return {{"pairs_checked", r.pairs_checked}, {"inconclusive", r.inconclusive}, {"violations", violations}};
}

Json to_json(const MaxEntropyResult& r) {
  return {{"part1", {{"U", r.part1.U}, {"V", r.part1.V}}},
          {"part2", {{"U", r.part2.U}, {"V", r.part2.V}}},
          {"s_max", r.s_max},
          {"iterations", r.iterations}};
}

Json to_json(const ConcavityReport& r) {
  return {{"samples", r.samples}, {"violations", r.violations}, {"min_slack", r.min_slack}};
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << number(row[i]);
    os << '\n';
  }
}

void write_polyline_csv(std::ostream& os, const std::vector<PolylineRow>& rows) {
  std::vector<std::vector<double>> data;
  data.reserve(rows.size());
  for (const auto& r : rows) data.push_back({r.lambda, r.p, r.V, r.work, r.heat});
  write_csv(os, {"lambda", "p", "V", "W", "Q"}, data);
}

}  // namespace thermo::io
