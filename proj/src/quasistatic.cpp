#include "thermo/quasistatic.hpp"

#include <algorithm>
#include <cmath>

#include "thermo/errors.hpp"

namespace thermo {

// -- Chart -------------------------------------------------------------------

namespace {

std::size_t natural_dim(AtomId a, std::size_t requested) {
  switch (a.kind) {
    case AtomKind::IdealGas: return 2;
    case AtomKind::Reservoir: return 1;
    case AtomKind::Abstract: return requested;
  }
  return requested;
}

}  // namespace

Chart::Chart(const std::vector<std::pair<AtomId, std::size_t>>& atoms) {
  auto sorted = atoms;
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (const auto& [a, d] : sorted) {
    if (!blocks_.empty() && blocks_.back().atom == a) {
      fail(ErrorKind::InvalidArgument, "duplicate atom in chart");
    }
    const auto dim = natural_dim(a, d);
    if (dim == 0) fail(ErrorKind::InvalidArgument, "chart block of dimension zero");
    blocks_.push_back({a, dim_, dim});
    dim_ += dim;
  }
  if (dim_ > kMaxCoords) fail(ErrorKind::SizeLimit, "chart exceeds the coordinate budget");
}

Chart Chart::of(std::initializer_list<AtomId> atoms) {
  std::vector<std::pair<AtomId, std::size_t>> v;
  for (auto a : atoms) v.emplace_back(a, 1);
  return Chart(v);
}

std::optional<std::size_t> Chart::offset(AtomId a) const {
  for (const auto& b : blocks_) {
    if (b.atom == a) return b.offset;
  }
  return std::nullopt;
}

std::vector<AtomId> Chart::atoms() const {
  std::vector<AtomId> out;
  for (const auto& b : blocks_) out.push_back(b.atom);
  return out;
}

JointState Chart::decode(const Point& x) const {
  std::map<AtomId, StateValue> parts;
  for (const auto& b : blocks_) {
    switch (b.atom.kind) {
      case AtomKind::IdealGas: parts.emplace(b.atom, GasState{x[b.offset], x[b.offset + 1]}); break;
      case AtomKind::Reservoir: parts.emplace(b.atom, ReservoirState{x[b.offset]}); break;
      case AtomKind::Abstract: {
        AbstractState s;
        s.coords.assign(x.begin() + static_cast<long>(b.offset),
                        x.begin() + static_cast<long>(b.offset + b.dim));
        parts.emplace(b.atom, std::move(s));
        break;
      }
    }
  }
  return JointState(std::move(parts));
}

Point Chart::encode(const JointState& s) const {
  Point x{};
  for (const auto& b : blocks_) {
    const auto c = coordinates(s.at(b.atom));
    if (c.size() != b.dim) fail(ErrorKind::InvalidArgument, "state dimension does not match chart");
    std::copy(c.begin(), c.end(), x.begin() + static_cast<long>(b.offset));
  }
  return x;
}

Chart Chart::merged(const Chart& other) const {
  std::vector<std::pair<AtomId, std::size_t>> v;
  for (const auto& b : blocks_) v.emplace_back(b.atom, b.dim);
  for (const auto& b : other.blocks_) {
    if (!contains(b.atom)) v.emplace_back(b.atom, b.dim);
  }
  return Chart(v);
}

// -- Curve -------------------------------------------------------------------

namespace {

std::vector<double> equal_knots(std::size_t n) {
  std::vector<double> k(n + 1);
  for (std::size_t i = 0; i <= n; ++i) k[i] = static_cast<double>(i) / static_cast<double>(n);
  k.back() = 1.0;
  return k;
}

void overlay(Point& global, const Chart& global_chart, const Chart& local, const Point& x) {
  for (const auto& b : local.blocks()) {
    const auto off = *global_chart.offset(b.atom);
    for (std::size_t i = 0; i < b.dim; ++i) global[off + i] = x[b.offset + i];
  }
}

}  // namespace

Curve::Curve(std::vector<CurveSegment> segments) : Curve(segments, equal_knots(segments.size())) {}

Curve::Curve(std::vector<CurveSegment> segments, std::vector<double> knots)
    : segments_(std::move(segments)), knots_(std::move(knots)) {
  if (segments_.empty()) fail(ErrorKind::InvalidArgument, "a curve needs at least one segment");
  if (knots_.size() != segments_.size() + 1 || knots_.front() != 0.0 || knots_.back() != 1.0 ||
      !std::is_sorted(knots_.begin(), knots_.end())) {
    fail(ErrorKind::InvalidArgument, "knots must increase from 0 to 1, one more than segments");
  }
  chart_ = segments_.front().chart;
  for (const auto& s : segments_) chart_ = chart_.merged(s.chart);

  // Initial global state: each atom at the start of the first segment moving it.
  Point current{};
  for (const auto& b : chart_.blocks()) {
    for (const auto& s : segments_) {
      if (auto off = s.chart.offset(b.atom)) {
        const auto x0 = s.eval(0.0);
        for (std::size_t i = 0; i < b.dim; ++i) current[b.offset + i] = x0[*off + i];
        break;
      }
    }
  }
  background_.reserve(segments_.size());
  for (const auto& s : segments_) {
    background_.push_back(current);
    overlay(current, chart_, s.chart, s.eval(1.0));
  }
}

std::pair<std::size_t, double> Curve::locate(double lambda) const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::OutOfDomain, "curve parameter outside [0,1]");
  if (lambda == 1.0) return {segments_.size() - 1, 1.0};
  auto it = std::upper_bound(knots_.begin(), knots_.end(), lambda);
  const auto i = static_cast<std::size_t>(std::distance(knots_.begin(), it)) - 1;
  const double width = knots_[i + 1] - knots_[i];
  return {i, std::clamp((lambda - knots_[i]) / width, 0.0, 1.0)};
}

Point Curve::eval(double lambda) const {
  const auto [i, mu] = locate(lambda);
  Point x = background_[i];
  overlay(x, chart_, segments_[i].chart, segments_[i].eval(mu));
  return x;
}

Point Curve::tangent(double lambda) const {
  const auto [i, mu] = locate(lambda);
  Point t{};
  overlay(t, chart_, segments_[i].chart, segments_[i].tangent(mu));
  const double width = knots_[i + 1] - knots_[i];
  for (auto& v : t) v /= width;
  return t;
}

JointState Curve::state_at(double lambda) const { return chart_.decode(eval(lambda)); }

Curve Curve::reversed() const {
  std::vector<CurveSegment> segs;
  std::vector<double> knots;
  segs.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    segs.push_back({it->chart, [e = it->eval](double mu) { return e(1.0 - mu); },
                    [t = it->tangent](double mu) {
                      auto d = t(1.0 - mu);
                      for (auto& v : d) v = -v;
                      return d;
                    }});
  }
  for (auto it = knots_.rbegin(); it != knots_.rend(); ++it) knots.push_back(1.0 - *it);
  knots.front() = 0.0;
  knots.back() = 1.0;
  return Curve(std::move(segs), std::move(knots));
}

// -- integration -------------------------------------------------------------

namespace {

double integrate_segment(const OneForm& form, const CurveSegment& seg, double mu0, double mu1,
                         double tol) {
  if (!form || mu0 == mu1) return 0.0;
  auto integrand = [&](double mu) { return form(seg.eval(mu), seg.tangent(mu)); };
  return integrate_adaptive(integrand, mu0, mu1, QuadratureOptions{tol});
}

void check_range(double a, double b) {
  if (!(0.0 <= a && a <= b && b <= 1.0)) {
    fail(ErrorKind::OutOfDomain, "slice bounds must satisfy 0 <= a <= b <= 1");
  }
}

// Pieces of [a,b] per segment in local coordinates.
template <class F>
double over_segments(const Curve& curve, double a, double b, F&& fn) {
  double total = 0.0;
  const auto knots = curve.knots();
  for (std::size_t i = 0; i < curve.segment_count(); ++i) {
    const double lo = std::max(a, knots[i]);
    const double hi = std::min(b, knots[i + 1]);
    if (hi <= lo) continue;
    const double w = knots[i + 1] - knots[i];
    const double mu0 = std::clamp((lo - knots[i]) / w, 0.0, 1.0);
    const double mu1 = hi == knots[i + 1] ? 1.0 : std::clamp((hi - knots[i]) / w, 0.0, 1.0);
    total += fn(i, mu0, mu1);
  }
  return total;
}

}  // namespace

double integrate_form(const PiecewiseForm& form, const Curve& curve, double a, double b, double tol) {
  check_range(a, b);
  if (form.size() != curve.segment_count()) {
    fail(ErrorKind::InvalidArgument, "form has a different number of pieces than the curve");
  }
  const auto n = static_cast<double>(std::max<std::size_t>(1, curve.segment_count()));
  return over_segments(curve, a, b, [&](std::size_t i, double mu0, double mu1) {
    return integrate_segment(form[i], curve.segment(i), mu0, mu1, tol / n);
  });
}

// -- QuasistaticFamily ---------------------------------------------------------

QuasistaticFamily::QuasistaticFamily(Curve curve, std::map<AtomId, PiecewiseForm> work_forms,
                                     std::map<AtomId, PiecewiseForm> heat_forms,
                                     std::vector<std::string> segment_tags, bool reversible,
                                     double tol)
    : curve_(std::move(curve)), work_forms_(std::move(work_forms)),
      heat_forms_(std::move(heat_forms)), segment_tags_(std::move(segment_tags)),
      reversible_(reversible), tol_(tol) {
  const auto n = curve_.segment_count();
  for (const auto* forms : {&work_forms_, &heat_forms_}) {
    for (const auto& [a, f] : *forms) {
      if (f.size() != n) fail(ErrorKind::InvalidArgument, "form pieces do not match curve segments");
      if (!curve_.chart().contains(a)) fail(ErrorKind::InvalidArgument, "form for an atom outside the chart");
    }
  }
  segment_tags_.resize(n);
}

System QuasistaticFamily::atoms() const { return System(curve_.chart().atoms()); }

double QuasistaticFamily::work(AtomId atom, double a, double b) const {
  check_range(a, b);
  auto it = work_forms_.find(atom);
  if (it == work_forms_.end()) return 0.0;
  return integrate_form(it->second, curve_, a, b, tol_);
}

double QuasistaticFamily::heat(AtomId atom, double a, double b) const {
  check_range(a, b);
  auto it = heat_forms_.find(atom);
  if (it == heat_forms_.end()) return 0.0;
  return integrate_form(it->second, curve_, a, b, tol_);
}

QuasistaticFamily QuasistaticFamily::reversed() const {
  if (!reversible_) fail(ErrorKind::NoReverseWitness, "family is irreversible");
  auto flip = [](const std::map<AtomId, PiecewiseForm>& forms) {
    std::map<AtomId, PiecewiseForm> out;
    for (const auto& [a, f] : forms) out.emplace(a, PiecewiseForm(f.rbegin(), f.rend()));
    return out;
  };
  std::vector<std::string> tags(segment_tags_.rbegin(), segment_tags_.rend());
  return QuasistaticFamily(curve_.reversed(), flip(work_forms_), flip(heat_forms_), std::move(tags),
                           true, tol_);
}

Process QuasistaticFamily::slice(double a, double b) const {
  check_range(a, b);
  const auto x0 = curve_.state_at(a);
  const auto x1 = curve_.state_at(b);
  std::vector<ProcessEntry> entries;
  for (const auto& blk : curve_.chart().blocks()) {
    entries.push_back({{blk.atom, x0.at(blk.atom)}, {blk.atom, x1.at(blk.atom)}, work(blk.atom, a, b)});
  }
  std::vector<std::string> tags;
  for (const auto& t : segment_tags_) {
    if (!t.empty() && std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
  }
  tags.push_back(reversible_ ? "reversible" : "irreversible");
  Process::Witness witness;
  if (reversible_) {
    witness = [self = *this, a, b] { return self.reversed().slice(1.0 - b, 1.0 - a); };
  }
  return Process(std::move(entries), std::move(tags), std::move(witness));
}

namespace {

// Pads per-atom form lists so each covers every segment of the merged curve.
std::map<AtomId, PiecewiseForm> concat_forms(const std::map<AtomId, PiecewiseForm>& f, std::size_t nf,
                                             const std::map<AtomId, PiecewiseForm>& g, std::size_t ng) {
  std::map<AtomId, PiecewiseForm> out;
  for (const auto& [a, forms] : f) {
    auto& dst = out[a];
    dst = forms;
    dst.resize(nf + ng);
  }
  for (const auto& [a, forms] : g) {
    auto& dst = out[a];
    dst.resize(nf + ng);
    std::copy(forms.begin(), forms.end(), dst.begin() + static_cast<long>(nf));
  }
  return out;
}

}  // namespace

QuasistaticFamily concat_families(const QuasistaticFamily& f, const QuasistaticFamily& g,
                                  double state_tol) {
  const auto end_f = f.final();
  const auto start_g = g.initial();
  for (const auto& [atom, v] : end_f.parts()) {
    if (start_g.parts().count(atom) && !same_state(v, start_g.at(atom), state_tol)) {
      fail(ErrorKind::StateMismatch, "family endpoints do not meet");
    }
  }
  const auto& cf = f.curve();
  const auto& cg = g.curve();
  std::vector<CurveSegment> segs;
  std::vector<double> knots;
  for (std::size_t i = 0; i < cf.segment_count(); ++i) {
    segs.push_back(cf.segment(i));
    knots.push_back(0.5 * cf.knots()[i]);
  }
  for (std::size_t i = 0; i < cg.segment_count(); ++i) {
    segs.push_back(cg.segment(i));
    knots.push_back(0.5 + 0.5 * cg.knots()[i]);
  }
  knots.push_back(1.0);
  const auto nf = cf.segment_count();
  const auto ng = cg.segment_count();
  auto tags = f.segment_tags();
  tags.insert(tags.end(), g.segment_tags().begin(), g.segment_tags().end());
  return QuasistaticFamily(Curve(std::move(segs), std::move(knots)),
                           concat_forms(f.work_forms(), nf, g.work_forms(), ng),
                           concat_forms(f.heat_forms(), nf, g.heat_forms(), ng), std::move(tags),
                           f.reversible() && g.reversible(), std::min(f.tolerance(), g.tolerance()));
}

QuasistaticFamily concat_families(const std::vector<QuasistaticFamily>& parts, double state_tol) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "nothing to concatenate");
  // Concatenate segment lists directly so knots follow segment count rather
  // than nesting halves.
  std::vector<CurveSegment> segs;
  std::vector<std::string> tags;
  std::map<AtomId, PiecewiseForm> work;
  std::map<AtomId, PiecewiseForm> heat;
  bool reversible = true;
  double tol = parts.front().tolerance();
  std::size_t total = 0;
  for (const auto& p : parts) total += p.curve().segment_count();
  std::size_t at = 0;
  std::optional<JointState> prev_end;
  for (const auto& p : parts) {
    if (prev_end) {
      const auto start = p.initial();
      for (const auto& [atom, v] : prev_end->parts()) {
        if (start.parts().count(atom) && !same_state(v, start.at(atom), state_tol)) {
          fail(ErrorKind::StateMismatch, "family endpoints do not meet");
        }
      }
      auto merged = prev_end->parts();
      const auto end = p.final();
      for (const auto& [atom, v] : end.parts()) merged.insert_or_assign(atom, v);
      prev_end = JointState(std::move(merged));
    } else {
      prev_end = p.final();
    }
    const auto& c = p.curve();
    for (std::size_t i = 0; i < c.segment_count(); ++i) segs.push_back(c.segment(i));
    for (const auto* src : {&p.work_forms(), &p.heat_forms()}) {
      auto& dst = src == &p.work_forms() ? work : heat;
      for (const auto& [a, forms] : *src) {
        auto& d = dst[a];
        d.resize(total);
        std::copy(forms.begin(), forms.end(), d.begin() + static_cast<long>(at));
      }
    }
    tags.insert(tags.end(), p.segment_tags().begin(), p.segment_tags().end());
    reversible = reversible && p.reversible();
    tol = std::min(tol, p.tolerance());
    at += c.segment_count();
  }
  return QuasistaticFamily(Curve(std::move(segs)), std::move(work), std::move(heat), std::move(tags),
                           reversible, tol);
}

double entropy_integral(const QuasistaticFamily& f, const PiecewiseForm& heat_form,
                        const TemperatureProfile& profile, double a, double b, double tol) {
  check_range(a, b);
  const auto& curve = f.curve();
  if (heat_form.size() != curve.segment_count()) {
    fail(ErrorKind::InvalidArgument, "heat form pieces do not match curve segments");
  }
  std::vector<double> cuts{a, b};
  for (double k : curve.knots()) {
    if (k > a && k < b) cuts.push_back(k);
  }
  for (double k : profile.breaks) {
    if (k > a && k < b) cuts.push_back(k);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double share = tol / static_cast<double>(std::max<std::size_t>(1, cuts.size() - 1));

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const auto [seg, mu_mid] = curve.locate(0.5 * (lo + hi));
    (void)mu_mid;
    const auto& form = heat_form[seg];
    if (!form) continue;
    const auto& piece = curve.segment(seg);
    const double k0 = curve.knots()[seg];
    const double w = curve.knots()[seg + 1] - k0;
    auto integrand = [&](double lambda) {
      const double mu = std::clamp((lambda - k0) / w, 0.0, 1.0);
      const double T = profile.temperature(lambda);
      if (!(T > 0)) fail(ErrorKind::DomainError, "temperature profile must be positive");
      // Form evaluated with dγ/dλ = (dγ/dμ) / w.
      return form(piece.eval(mu), piece.tangent(mu)) / w / T;
    };
    // Temperatures are evaluated strictly inside the piece so that a
    // piecewise-constant profile takes its value for that piece.
    const double eps = 1e-15 * std::max(1.0, hi - lo);
    total += integrate_adaptive(integrand, lo + eps, hi - eps, QuadratureOptions{share});
  }
  return total;
}

std::vector<PolylineRow> sample_polyline(const QuasistaticFamily& f, AtomId gas_atom, int samples) {
  if (samples < 2) fail(ErrorKind::InvalidArgument, "need at least two samples");
  if (gas_atom.kind != AtomKind::IdealGas || !f.curve().chart().contains(gas_atom)) {
    fail(ErrorKind::InvalidArgument, "polyline sampling needs a gas atom of the family");
  }
  std::vector<PolylineRow> rows;
  rows.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double lambda = i == samples - 1 ? 1.0 : static_cast<double>(i) / (samples - 1);
    const auto s = std::get<GasState>(f.curve().state_at(lambda).at(gas_atom));
    rows.push_back({lambda, s.p, s.V, f.work(gas_atom, 0.0, lambda), f.heat(gas_atom, 0.0, lambda)});
  }
  return rows;
}

}  // namespace thermo
