#pragma once

// Two-parameter quasistatic families p(λ, λ′) realized by piecewise-C¹ curves
// in a product of atom state spaces, with per-atom work and heat one-forms.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thermo/process.hpp"
#include "thermo/quadrature.hpp"

namespace thermo {

inline constexpr std::size_t kMaxCoords = 8;
using Point = std::array<double, kMaxCoords>;

/// Coordinate layout of a joint state space: gas atoms take (p, V),
/// reservoirs (E), abstract atoms their declared dimension.
class Chart {
 public:
  struct Block {
    AtomId atom;
    std::size_t offset = 0;
    std::size_t dim = 0;
  };

  Chart() = default;
  /// Abstract atoms need their dimension; gas and reservoir atoms ignore it.
  explicit Chart(const std::vector<std::pair<AtomId, std::size_t>>& atoms);
  static Chart of(std::initializer_list<AtomId> atoms);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t dim() const noexcept { return dim_; }
  std::optional<std::size_t> offset(AtomId a) const;
  bool contains(AtomId a) const { return offset(a).has_value(); }
  std::vector<AtomId> atoms() const;

  JointState decode(const Point& x) const;
  Point encode(const JointState& s) const;
  Chart merged(const Chart& other) const;

 private:
  std::vector<Block> blocks_;
  std::size_t dim_ = 0;
};

/// One C¹ piece, parametrized locally by μ ∈ [0, 1] in its own chart.
struct CurveSegment {
  Chart chart;
  std::function<Point(double)> eval;
  std::function<Point(double)> tangent;  // d/dμ
};

/// Continuous, piecewise-C¹ curve γ: [0,1] → Σ. Knots are the breakpoints
/// between pieces; atoms a piece does not move hold their current state.
class Curve {
 public:
  /// `knots` has segments.size() + 1 increasing entries from 0 to 1.
  Curve(std::vector<CurveSegment> segments, std::vector<double> knots);
  /// Equal-width knots.
  explicit Curve(std::vector<CurveSegment> segments);

  const Chart& chart() const noexcept { return chart_; }
  std::span<const double> knots() const noexcept { return knots_; }
  std::size_t segment_count() const noexcept { return segments_.size(); }
  const CurveSegment& segment(std::size_t i) const { return segments_.at(i); }

  /// Segment index and local parameter for λ. λ = knot belongs to the later
  /// segment except at λ = 1.
  std::pair<std::size_t, double> locate(double lambda) const;

  Point eval(double lambda) const;
  /// dγ/dλ in global coordinates (one-sided at knots).
  Point tangent(double lambda) const;
  JointState state_at(double lambda) const;

  /// The curve traversed backwards: γ̃(λ) = γ(1-λ).
  Curve reversed() const;

 private:
  Chart chart_;
  std::vector<CurveSegment> segments_;
  std::vector<double> knots_;
  std::vector<Point> background_;  // global state held while segment i runs
};

/// δ(x, dx): linear in dx, evaluated in the owning segment's local chart.
using OneForm = std::function<double(const Point& x, const Point& dx)>;

/// One OneForm per curve segment; an empty function is the zero form.
using PiecewiseForm = std::vector<OneForm>;

/// ∫ over γ|[a,b] of the form, split at knots. Throws OutOfDomain unless
/// 0 <= a <= b <= 1 and ToleranceNotMet if quadrature fails.
double integrate_form(const PiecewiseForm& form, const Curve& curve, double a, double b,
                      double tol = default_tolerances().quadrature);

class QuasistaticFamily {
 public:
  QuasistaticFamily(Curve curve, std::map<AtomId, PiecewiseForm> work_forms,
                    std::map<AtomId, PiecewiseForm> heat_forms, std::vector<std::string> segment_tags,
                    bool reversible, double tol = default_tolerances().quadrature);

  const Curve& curve() const noexcept { return curve_; }
  const std::map<AtomId, PiecewiseForm>& work_forms() const noexcept { return work_forms_; }
  const std::map<AtomId, PiecewiseForm>& heat_forms() const noexcept { return heat_forms_; }
  const std::vector<std::string>& segment_tags() const noexcept { return segment_tags_; }
  bool reversible() const noexcept { return reversible_; }
  double tolerance() const noexcept { return tol_; }
  System atoms() const;

  JointState initial() const { return curve_.state_at(0.0); }
  JointState final() const { return curve_.state_at(1.0); }

  /// W_A(p(a, b)) by path integration of the atom's work form.
  double work(AtomId atom, double a, double b) const;
  /// Model heat into the atom along γ|[a,b]; zero when the model supplies no form.
  double heat(AtomId atom, double a, double b) const;

  /// The reverse family; throws NoReverseWitness for irreversible families.
  QuasistaticFamily reversed() const;

  /// p(a, b). Reversible families attach the mirrored slice as witness.
  Process slice(double a, double b) const;
  Process whole() const { return slice(0.0, 1.0); }

 private:
  Curve curve_;
  std::map<AtomId, PiecewiseForm> work_forms_;
  std::map<AtomId, PiecewiseForm> heat_forms_;
  std::vector<std::string> segment_tags_;
  bool reversible_;
  double tol_;
};

/// (g∘f)(λ, λ′) reparametrized on [0,1] with f on [0,½] and g on [½,1].
/// Throws StateMismatch unless f ends where g starts on shared atoms.
QuasistaticFamily concat_families(const QuasistaticFamily& f, const QuasistaticFamily& g,
                                  double state_tol = default_tolerances().state);

QuasistaticFamily concat_families(const std::vector<QuasistaticFamily>& parts,
                                  double state_tol = default_tolerances().state);

/// Piecewise temperature profile along λ: `temperature` is evaluated inside
/// (breaks[i], breaks[i+1]) and the integral is split at every break.
struct TemperatureProfile {
  std::function<double(double)> temperature;
  std::vector<double> breaks;
};

/// ∫_γ δQ/T over [a, b].
double entropy_integral(const QuasistaticFamily& f, const PiecewiseForm& heat_form,
                        const TemperatureProfile& profile, double a = 0.0, double b = 1.0,
                        double tol = default_tolerances().quadrature);

/// Polyline sample of a gas-atom family: λ, p, V, cumulative W, cumulative Q.
struct PolylineRow {
  double lambda, p, V, work, heat;
};
std::vector<PolylineRow> sample_polyline(const QuasistaticFamily& f, AtomId gas_atom, int samples);

}  // namespace thermo
