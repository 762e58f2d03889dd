#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oag/formula.hpp"
#include "oag/structure.hpp"

namespace oag {

struct QeOptions;

/// Interval endpoint: -inf < finite values < +inf.
class Endpoint {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  static Endpoint neg_inf() { return Endpoint(Kind::NegInf, Scalar()); }
  static Endpoint pos_inf() { return Endpoint(Kind::PosInf, Scalar()); }
  static Endpoint finite(Scalar value) { return Endpoint(Kind::Finite, std::move(value)); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Only meaningful when finite.
  const Scalar& value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Endpoint& a, const Endpoint& b);

 private:
  Endpoint(Kind k, Scalar v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Scalar value_;
};

struct Point {
  Scalar value;
  friend bool operator==(const Point&, const Point&) = default;
};

struct OpenInterval {
  Endpoint lo;
  Endpoint hi;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

using Component = std::variant<Point, OpenInterval>;

/// A subset of Q given as a finite union of points and open intervals with
/// endpoints in Q or Q(sqrt d).
///
/// The component list is canonical: sorted, pairwise disjoint, maximally
/// merged, with no irrational points (they are not in the domain) and no two
/// intervals meeting at an irrational endpoint. A closed interval [a, b] is
/// the run {a} u (a, b) u {b}. Equal sets have identical component lists.
class DefinableSet1D {
 public:
  DefinableSet1D() = default;

  static DefinableSet1D empty() { return {}; }
  static DefinableSet1D full();
  static DefinableSet1D point(const Scalar& x);
  static DefinableSet1D open(const Endpoint& lo, const Endpoint& hi);
  /// Union of arbitrary (possibly overlapping) components.
  static DefinableSet1D from_components(const std::vector<Component>& parts);

  /// Builds the set whose membership is given cell by cell: `gap_in[i]` for
  /// the open cell left of `breakpoints[i]` (the last entry for the cell
  /// right of every breakpoint) and `point_in[i]` for the breakpoint itself.
  /// Breakpoints must be sorted and distinct.
  static DefinableSet1D from_cells(const std::vector<Scalar>& breakpoints, const std::vector<bool>& point_in,
                                   const std::vector<bool>& gap_in);

  const std::vector<Component>& components() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_full() const;
  /// Membership of a domain element; irrational values are never members.
  bool contains(const Scalar& x) const;
  /// True when every component is a point.
  bool is_finite_points() const;
  std::vector<Scalar> breakpoints() const;

  /// `{}` for the empty set, otherwise components joined by ` u `,
  /// e.g. `(0, 1) u {2}` or `(-inf, inf)`.
  std::string to_string() const;

  friend bool operator==(const DefinableSet1D&, const DefinableSet1D&) = default;

 private:
  explicit DefinableSet1D(std::vector<Component> parts) : parts_(std::move(parts)) {}
  std::vector<Component> parts_;
};

DefinableSet1D complement(const DefinableSet1D& d);
DefinableSet1D union_of(const DefinableSet1D& a, const DefinableSet1D& b);
DefinableSet1D intersect(const DefinableSet1D& a, const DefinableSet1D& b);
/// Order-topology closure: finite rational endpoints of intervals are added.
DefinableSet1D closure(const DefinableSet1D& d);
DefinableSet1D interior(const DefinableSet1D& d);

struct PseudoFiniteReport {
  bool discrete = false;
  bool closed = false;
  bool bounded = false;
  bool verdict = false;
};

/// Discrete, closed and bounded.
PseudoFiniteReport is_pseudo_finite(const DefinableSet1D& d);

struct CutReport {
  enum class Kind { NotACut, ProperCutWithLub, Gap, WholeGroup };
  Kind kind = Kind::NotACut;
  /// The least upper bound for ProperCutWithLub, the missing endpoint for Gap.
  std::optional<Scalar> boundary;
};

const char* to_string(CutReport::Kind k);

/// Classifies d as a Dedekind cut of the structure's domain.
CutReport cut_analysis(const DefinableSet1D& d, const StructureSpec& s);

/// The set defined by a quantifier-free, predicate-free formula in x alone.
DefinableSet1D set_of(const Formula& qf, const Var& x);

/// o-minimal normal form of {x : f(x)}; f must have exactly one free variable.
DefinableSet1D normalize(const Formula& f, const StructureSpec& s);
/// Same, naming the variable explicitly (f may not mention it).
DefinableSet1D normalize(const Formula& f, const Var& x, const StructureSpec& s);
DefinableSet1D normalize(const Formula& f, const Var& x, const StructureSpec& s, const QeOptions& opts);

/// Deterministic domain element of d: the first component decides; a point
/// is returned as is, a bounded interval gives its midpoint (or a nearby
/// rational), a half-line gives endpoint -/+ 1, the full line gives 0.
std::optional<Rational> pick_element(const DefinableSet1D& d);

}  // namespace oag
